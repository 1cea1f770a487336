"""Complete simplicial fans and their combinatorial invariants."""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb, gcd
from typing import Sequence

from .errors import (
    DisconnectedFan,
    IncompleteFan,
    IndexOutOfRange,
    InvalidFan,
    NonPrimitiveRay,
    NonSimplicialCone,
)
from .linalg import solve_rational


def _det(rows: Sequence[Sequence[int]]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


@dataclass(frozen=True)
class Fan:
    """A validated complete simplicial fan. Build it with :func:`validate_fan`."""

    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def cones(self) -> set[tuple[int, ...]]:
        """All cones (faces of maximal cones), including the zero cone."""
        out = set()
        for cone in self.max_cones:
            for k in range(len(cone) + 1):
                out.update(combinations(cone, k))
        return out

    @cached_property
    def positive_relation(self) -> tuple[int, ...]:
        """A strictly positive integer vector ``w`` with ``sum_i w_i v_i = 0``.

        For every ray ``v``, ``-v`` lies in some maximal cone; writing it in the
        cone's rays gives a nonnegative relation that is positive at ``v``.
        Summing these over all rays gives the vector.
        """
        w = [Fraction(0)] * self.nrays
        for i, v in enumerate(self.rays):
            target = [-x for x in v]
            for cone in self.max_cones:
                basis = [[self.rays[j][k] for j in cone] for k in range(self.dim)]
                coords = solve_rational(basis, target)
                if coords is not None and all(c >= 0 for c in coords):
                    w[i] += 1
                    for j, c in zip(cone, coords):
                        w[j] += c
                    break
            else:  # pragma: no cover - excluded by validation
                raise IncompleteFan(f"-v_{i} lies in no maximal cone")
        den = 1
        for x in w:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in w]
        g = 0
        for x in ints:
            g = gcd(g, x)
        return tuple(x // g for x in ints)

    def to_json(self) -> dict:
        return {"dim": self.dim, "rays": [list(r) for r in self.rays],
                "max_cones": [list(c) for c in self.max_cones]}


def validate_fan(raw_rays, raw_cones, d: int) -> Fan:
    """Check a raw fan description and return a :class:`Fan`.

    Completeness uses facet pairing: every codimension-one face of a maximal
    cone must lie in exactly two maximal cones, and the adjacency graph of the
    maximal cones must be connected.  Projectivity is not checked.
    """
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InvalidFan(f"dimension must be a positive integer, got {d!r}")
    rays = []
    for i, v in enumerate(raw_rays):
        if len(v) != d or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
            raise InvalidFan(f"ray {i} must be {d} integers, got {v!r}")
        g = 0
        for x in v:
            g = gcd(g, x)
        if g == 0:
            raise NonPrimitiveRay(f"ray {i} is zero")
        if g != 1:
            raise NonPrimitiveRay(f"ray {i} = {list(v)} has gcd {g}")
        rays.append(tuple(v))
    if len(set(rays)) != len(rays):
        raise InvalidFan("duplicate rays")
    r = len(rays)
    if r < d + 1:
        raise IncompleteFan(f"{r} rays cannot span a complete fan in dimension {d}")

    cones = []
    for c in raw_cones:
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in c):
            raise InvalidFan(f"cone {c!r} has non-integer indices")
        for i in c:
            if not 0 <= i < r:
                raise IndexOutOfRange(f"cone {list(c)} references ray {i} (have {r})")
        cone = tuple(sorted(c))
        if len(set(cone)) != len(cone) or len(cone) != d:
            raise NonSimplicialCone(f"cone {list(c)} must have {d} distinct rays")
        if _det([rays[i] for i in cone]) == 0:
            raise NonSimplicialCone(f"rays of cone {list(c)} are linearly dependent")
        cones.append(cone)
    if not cones:
        raise IncompleteFan("no maximal cones")
    if len(set(cones)) != len(cones):
        raise IncompleteFan("a maximal cone is listed twice")
    used = {i for c in cones for i in c}
    if used != set(range(r)):
        raise IncompleteFan(f"rays {sorted(set(range(r)) - used)} lie in no maximal cone")

    facets = defaultdict(list)
    for k, cone in enumerate(cones):
        for f in combinations(cone, d - 1):
            facets[f].append(k)
    for f, owners in sorted(facets.items()):
        if len(owners) != 2:
            raise IncompleteFan(f"facet {list(f)} lies in {len(owners)} maximal cone(s)")

    adj = defaultdict(set)
    for owners in facets.values():
        a, b = owners
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        k = stack.pop()
        for nb in adj[k] - seen:
            seen.add(nb)
            stack.append(nb)
    if len(seen) != len(cones):
        raise DisconnectedFan(f"{len(cones) - len(seen)} maximal cones unreachable from cone 0")

    return Fan(d, tuple(rays), tuple(sorted(cones)))


def load_fan(path) -> Fan:
    with open(path) as fh:
        data = json.load(fh, parse_float=_reject_float)
    return fan_from_json(data)


def _reject_float(s):
    raise InvalidFan(f"floating point value {s} in fan file")


def fan_from_json(data: dict) -> Fan:
    try:
        return validate_fan(data["rays"], data["max_cones"], data["dim"])
    except KeyError as exc:
        raise InvalidFan(f"fan document lacks key {exc}") from None


def poincare_polynomial(fan: Fan) -> list[int]:
    """Coefficients of ``P(t) = sum_sigma (t-1)^(d - dim sigma)``.

    Coefficient ``k`` is the Betti number ``b_2k``; odd Betti numbers vanish.
    """
    d = fan.dim
    by_dim = defaultdict(int)
    for cone in fan.cones():
        by_dim[len(cone)] += 1
    coeffs = [0] * (d + 1)
    for k, count in by_dim.items():
        e = d - k
        for j in range(e + 1):
            coeffs[j] += count * comb(e, j) * (-1) ** (e - j)
    return coeffs


# small catalogue used by tests, scripts and the CLI docs

def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    cones = list(combinations(range(n + 1), n))
    return validate_fan(rays, cones, n)


def weighted_projective_plane(a: int, b: int) -> Fan:
    """Fan of P(a, b, 1): rays e1, e2, (-a, -b)."""
    return validate_fan([(1, 0), (0, 1), (-a, -b)], [(0, 1), (1, 2), (0, 2)], 2)


def product_of_lines() -> Fan:
    rays = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    return validate_fan(rays, [(0, 2), (0, 3), (1, 2), (1, 3)], 2)


def hirzebruch(a: int) -> Fan:
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    return validate_fan(rays, [(0, 1), (1, 2), (2, 3), (0, 3)], 2)
