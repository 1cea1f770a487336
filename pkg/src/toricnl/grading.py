"""Class groups, degrees of monomials, effectiveness, nef/ample certificates.

The class group is the cokernel of ``M -> Div_T``, ``m -> (<m, v_rho>)_rho``,
computed from the Smith normal form of the ray matrix.  The free coordinates
are put in Hermite normal form so that e.g. P^2 gets degrees (1, 1, 1) rather
than (-1, -1, -1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterator, Sequence

from .errors import (
    EnumerationBudgetExceeded,
    LengthMismatch,
    NoLiftFound,
    NotEffectiveInput,
    ZeroEta,
)
from .fan import Fan
from .linalg import hermite_rows, inverse_unimodular, matvec, smith_normal_form, solve_rational
from .memo import Memo


@dataclass(frozen=True)
class DivisorClass:
    """Element of ``Z^free (+) Z/o_1 (+) ... (+) Z/o_t``; torsion kept in ``[0, o)``."""

    free: tuple[int, ...]
    torsion: tuple[int, ...] = ()
    orders: tuple[int, ...] = field(default=(), compare=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))
        if len(self.torsion) != len(self.orders):
            raise LengthMismatch(f"torsion {self.torsion} vs orders {self.orders}")
        object.__setattr__(
            self, "torsion", tuple(int(x) % o for x, o in zip(self.torsion, self.orders))
        )

    def _check(self, other: "DivisorClass") -> None:
        if len(self.free) != len(other.free) or self.orders != other.orders:
            raise LengthMismatch(f"classes {self} and {other} live in different groups")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
            self.orders,
        )

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.free), tuple(-a for a in self.torsion), self.orders)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(tuple(k * a for a in self.free), tuple(k * a for a in self.torsion), self.orders)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def sort_key(self) -> tuple:
        return (self.free, self.torsion)

    def extend(self, extra: int) -> "DivisorClass":
        """The class ``(self, extra)`` in ``Cl (+) Z``."""
        return DivisorClass(self.free + (extra,), self.torsion, self.orders)

    def to_json(self) -> dict:
        return {"free": list(self.free), "torsion": list(self.torsion)}

    def __str__(self) -> str:
        free = str(self.free[0]) if len(self.free) == 1 else "(" + ",".join(map(str, self.free)) + ")"
        if self.orders:
            return free + "+[" + ",".join(f"{t}/{o}" for t, o in zip(self.torsion, self.orders)) + "]"
        return free


class ClassGroup:
    """``Cl(P_Sigma)`` together with the degree map ``Z^r -> Cl``."""

    def __init__(self, fan: Fan):
        self.fan = fan
        r, d = fan.nrays, fan.dim
        ray_matrix = [list(v) for v in fan.rays]
        dmat, u, _ = smith_normal_form(ray_matrix)
        factors = [dmat[i][i] for i in range(d)]
        unit_rows = [i for i in range(d) if factors[i] == 1]
        tors_rows = [i for i in range(d) if factors[i] > 1]
        free_rows = list(range(d, r))

        herm, _ = hermite_rows([u[i] for i in free_rows])
        u = [list(row) for row in u]
        for i, row in zip(free_rows, herm):
            u[i] = row

        self.free_rank = r - d
        self.torsion_orders: tuple[int, ...] = tuple(factors[i] for i in tors_rows)
        self.degree_matrix = [u[i] for i in free_rows]
        self.torsion_matrix = [[x % factors[i] for x in u[i]] for i in tors_rows]
        self._unit_rows = unit_rows
        self._tors_rows = tors_rows
        self._free_rows = free_rows
        self._uinv = inverse_unimodular(u)
        # integer basis of {a : deg(a) = 0}
        cols = [[row[i] for row in self._uinv] for i in unit_rows]
        cols += [[factors[i] * row[i] for row in self._uinv] for i in tors_rows]
        self.kernel_basis = cols
        self._fm = _fourier_motzkin(cols, r)
        self._points = Memo()

    @property
    def nvars(self) -> int:
        return self.fan.nrays

    def zero(self) -> DivisorClass:
        return DivisorClass((0,) * self.free_rank, (0,) * len(self.torsion_orders), self.torsion_orders)

    def make(self, free: Sequence[int], torsion: Sequence[int] = ()) -> DivisorClass:
        if len(free) != self.free_rank:
            raise LengthMismatch(f"free part needs {self.free_rank} entries, got {len(free)}")
        torsion = tuple(torsion) or (0,) * len(self.torsion_orders)
        if len(torsion) != len(self.torsion_orders):
            raise LengthMismatch(f"torsion part needs {len(self.torsion_orders)} entries")
        return DivisorClass(tuple(free), torsion, self.torsion_orders)

    def degree_of(self, exponents: Sequence[int]) -> DivisorClass:
        if len(exponents) != self.nvars:
            raise LengthMismatch(f"exponent vector of length {len(exponents)}, expected {self.nvars}")
        return DivisorClass(
            tuple(matvec(self.degree_matrix, exponents)),
            tuple(matvec(self.torsion_matrix, exponents)),
            self.torsion_orders,
        )

    @cached_property
    def var_degrees(self) -> tuple[DivisorClass, ...]:
        n = self.nvars
        return tuple(self.degree_of([int(i == j) for j in range(n)]) for i in range(n))

    def anticanonical(self) -> DivisorClass:
        return self.degree_of([1] * self.nvars)

    def lift(self, alpha: DivisorClass) -> tuple[int, ...]:
        """Some integer vector ``a`` with ``degree_of(a) == alpha`` (not necessarily >= 0)."""
        z = [0] * self.nvars
        for i, t in zip(self._tors_rows, alpha.torsion):
            z[i] = t
        for i, f in zip(self._free_rows, alpha.free):
            z[i] = f
        return tuple(matvec(self._uinv, z))

    def weight(self, alpha: DivisorClass) -> int:
        """``w . lift(alpha)`` for the positive relation ``w``; positive on nonzero effective classes."""
        return sum(x * y for x, y in zip(self.fan.positive_relation, self.lift(alpha)))

    def to_json(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "torsion_orders": list(self.torsion_orders),
            "degree_matrix": self.degree_matrix,
            "torsion_matrix": self.torsion_matrix,
            "variable_degrees": [c.to_json() for c in self.var_degrees],
            "anticanonical": self.anticanonical().to_json(),
        }

    # lattice points -------------------------------------------------------

    def iter_lattice_points(self, alpha: DivisorClass) -> Iterator[tuple[int, ...]]:
        """Nonnegative ``a`` with ``degree_of(a) == alpha``, via the parametrization
        ``a = lift(alpha) + K t`` and Fourier-Motzkin bounds on ``t``."""
        a0 = self.lift(alpha)
        levels, constants = self._fm
        for lam in constants:
            if sum(x * y for x, y in zip(lam, a0)) < 0:
                return
        k = self.kernel_basis
        d = len(k)
        rhs_cache = [[-sum(x * y for x, y in zip(lam, a0)) for _, lam in lev] for lev in levels]

        def rec(t: list[int]) -> Iterator[tuple[int, ...]]:
            i = len(t)
            if i == d:
                a = list(a0)
                for tj, col in zip(t, k):
                    if tj:
                        for ri in range(len(a)):
                            a[ri] += tj * col[ri]
                if min(a, default=0) >= 0:
                    yield tuple(a)
                return
            lo = hi = None
            for (c, _), rhs in zip(levels[i], rhs_cache[i]):
                ci = c[i]
                if ci == 0:
                    continue
                val = rhs - sum(cj * tj for cj, tj in zip(c, t))
                if ci > 0:
                    b = -((-val) // ci)
                    lo = b if lo is None else max(lo, b)
                else:
                    b = val // ci
                    hi = b if hi is None else min(hi, b)
            if lo is None or hi is None:
                raise EnumerationBudgetExceeded("unbounded lattice-point search region")
            for ti in range(lo, hi + 1):
                yield from rec(t + [ti])

        if d == 0:
            if min(a0, default=0) >= 0:
                yield a0
            return
        yield from rec([])

    def lattice_points(self, alpha: DivisorClass) -> tuple[tuple[int, ...], ...]:
        return self._points.get(alpha, lambda: tuple(sorted(self.iter_lattice_points(alpha), key=grevlex_key)))


def grevlex_key(exps: Sequence[int]) -> tuple:
    """Sort key putting grevlex-larger monomials first."""
    return (-sum(exps), tuple(reversed(exps)))


def _fourier_motzkin(kernel_cols: list[list[int]], r: int):
    """Projected systems for ``a0 + K t >= 0``.

    ``levels[i]`` holds inequalities ``c . t >= -lam . a0`` involving only
    ``t_0..t_i`` (with ``c[i]`` possibly zero), as pairs ``(c, lam)``.  Each
    derived inequality is a nonnegative combination ``lam`` of the original
    rows, so the projections are computed once per class group.
    """
    d = len(kernel_cols)
    if d == 0:
        return [], []
    rows = []
    for rho in range(r):
        c = tuple(col[rho] for col in kernel_cols)
        lam = tuple(int(j == rho) for j in range(r))
        rows.append((c, lam))
    levels: list[list] = [None] * d
    constants = []
    current = _dedupe(rows)
    for i in range(d - 1, -1, -1):
        levels[i] = [(c[: i + 1], lam) for c, lam in current]
        if i == 0:
            break
        pos = [x for x in current if x[0][i] > 0]
        neg = [x for x in current if x[0][i] < 0]
        nxt = [x for x in current if x[0][i] == 0]
        for cp, lp in pos:
            for cn, ln in neg:
                a, b = -cn[i], cp[i]
                c = tuple(a * x + b * y for x, y in zip(cp, cn))
                lam = tuple(a * x + b * y for x, y in zip(lp, ln))
                nxt.append((c, lam))
        current = []
        for c, lam in _dedupe([(c[:i], lam) for c, lam in nxt]):
            if any(c):
                current.append((c, lam))
            else:
                constants.append(lam)
    # level-0 constraints with zero coefficient are feasibility conditions too
    constants += [lam for c, lam in levels[0] if c[0] == 0]
    return levels, constants


def _dedupe(rows):
    out = {}
    for c, lam in rows:
        g = 0
        for x in c + lam:
            g = gcd(g, x)
        if g > 1:
            c = tuple(x // g for x in c)
            lam = tuple(x // g for x in lam)
        out.setdefault((c, lam), None)
    return list(out)


# operations -------------------------------------------------------------


def compute_class_group(fan: Fan) -> ClassGroup:
    return ClassGroup(fan)


def degree_of(exponents: Sequence[int], cl: ClassGroup) -> DivisorClass:
    return cl.degree_of(exponents)


def anticanonical(cl: ClassGroup) -> DivisorClass:
    return cl.anticanonical()


@dataclass(frozen=True)
class Effectiveness:
    effective: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.effective


def is_effective(alpha: DivisorClass, cl: ClassGroup) -> Effectiveness:
    """Effective iff some monomial has degree ``alpha``; the witness is the grevlex-largest one."""
    pts = cl.lattice_points(alpha)
    if pts:
        return Effectiveness(True, pts[0])
    return Effectiveness(False)


def effective_predecessors(n_class: DivisorClass, cl: ClassGroup) -> list[DivisorClass]:
    """All ``alpha`` with ``alpha`` and ``N - alpha`` effective, sorted."""
    pts = cl.lattice_points(n_class)
    if not pts:
        raise NotEffectiveInput(f"class {n_class} is not effective")
    seen = set()
    classes = set()
    for a in pts:
        for b in product(*(range(x + 1) for x in a)):
            if b not in seen:
                seen.add(b)
                classes.add(cl.degree_of(b))
    return sorted(classes, key=DivisorClass.sort_key)


@dataclass(frozen=True)
class SupportCertificate:
    """Support-function data of a torus-invariant lift ``a`` of a class.

    ``functionals[k]`` is the ``m_sigma`` of the k-th maximal cone, solving
    ``<m_sigma, v_rho> = -a_rho`` on the rays of that cone.
    """

    lift: tuple[int, ...]
    functionals: tuple[tuple[Fraction, ...], ...]
    cartier: bool
    nef: bool
    ample: bool

    def to_json(self) -> dict:
        return {
            "lift": list(self.lift),
            "functionals": [[str(x) for x in m] for m in self.functionals],
            "cartier": self.cartier,
            "nef": self.nef,
            "ample": self.ample,
        }


def support_certificate(alpha: DivisorClass, fan: Fan, cl: ClassGroup,
                        lift: Sequence[int] | None = None) -> SupportCertificate:
    if lift is None:
        eff = is_effective(alpha, cl)
        lift = eff.witness if eff else cl.lift(alpha)
    lift = tuple(lift)
    if cl.degree_of(lift) != alpha:
        raise NoLiftFound(f"vector {list(lift)} does not have degree {alpha}")
    funcs = []
    cartier = nef = ample = True
    for cone in fan.max_cones:
        m = solve_rational([fan.rays[i] for i in cone], [-lift[i] for i in cone])
        funcs.append(tuple(m))
        if any(x.denominator != 1 for x in m):
            cartier = False
        for j, v in enumerate(fan.rays):
            val = sum(x * y for x, y in zip(m, v)) + lift[j]
            if val < 0:
                nef = ample = False
            elif val == 0 and j not in cone:
                ample = False
    return SupportCertificate(lift, tuple(funcs), cartier, nef, ample)


def is_nef(alpha: DivisorClass, fan: Fan, cl: ClassGroup, lift=None) -> SupportCertificate:
    return support_certificate(alpha, fan, cl, lift)


def is_ample(alpha: DivisorClass, fan: Fan, cl: ClassGroup, lift=None) -> SupportCertificate:
    return support_certificate(alpha, fan, cl, lift)


def m_beta(beta: DivisorClass, eta: DivisorClass, cl: ClassGroup, order: str = "effective") -> int:
    """Largest ``i >= 0`` with ``beta - i*eta`` effective (or nef, with ``order="nef"``)."""
    if not any(eta.free):
        raise ZeroEta(f"eta = {eta} has zero free part")
    if order == "effective":
        def ok(c):
            return bool(is_effective(c, cl))
    elif order == "nef":
        def ok(c):
            return support_certificate(c, cl.fan, cl).nef
    else:
        raise ValueError(f"unknown order {order!r}")
    if not ok(beta):
        raise NotEffectiveInput(f"beta = {beta} does not satisfy the {order} order at i = 0")
    w_eta = cl.weight(eta)
    if w_eta <= 0:
        raise NotEffectiveInput(f"eta = {eta} is not effective")
    bound = cl.weight(beta) // w_eta
    i = 0
    while i < bound and ok(beta - (i + 1) * eta):
        i += 1
    return i
