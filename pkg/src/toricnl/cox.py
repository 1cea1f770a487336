"""Graded polynomial algebra over Cox rings.

A :class:`GradedRing` knows its variable degrees, its irrelevant monomials and
how to enumerate the monomial basis of each graded piece.  Two concrete rings
exist: :class:`CoxRing` (from a fan) and :class:`CayleyRing` (the Cox ring of
the projective bundle ``P(L_1 + ... + L_s)``, see :mod:`toricnl.hodge`).
Coefficients are exact rationals throughout.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .errors import LengthMismatch, NotHomogeneous, ParseError
from .fan import Fan
from .grading import ClassGroup, DivisorClass, grevlex_key
from .linalg import Echelon
from .memo import Memo

Monomial = tuple[int, ...]


class GradedRing:
    """Polynomial ring graded by a (possibly extended) class group."""

    def __init__(self, names: Sequence[str], var_degrees: Sequence[DivisorClass],
                 irrelevant: Sequence[Monomial]):
        self.names = tuple(names)
        self.var_degrees = tuple(var_degrees)
        self.irrelevant = tuple(irrelevant)
        self._bases = Memo()
        self._indices = Memo()

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero_class(self) -> DivisorClass:
        return self.var_degrees[0] * 0

    def degree_of(self, exps: Sequence[int]) -> DivisorClass:
        if len(exps) != self.nvars:
            raise LengthMismatch(f"exponent vector of length {len(exps)}, expected {self.nvars}")
        out = self.zero_class()
        for e, deg in zip(exps, self.var_degrees):
            if e:
                out = out + e * deg
        return out

    def anticanonical(self) -> DivisorClass:
        return self.degree_of([1] * self.nvars)

    def _enumerate(self, alpha: DivisorClass) -> Iterable[Monomial]:
        raise NotImplementedError

    def basis(self, alpha: DivisorClass) -> tuple[Monomial, ...]:
        """Grevlex-ordered monomial basis of the degree-``alpha`` piece."""
        return self._bases.get(alpha, lambda: tuple(sorted(set(self._enumerate(alpha)), key=grevlex_key)))

    def index(self, alpha: DivisorClass) -> dict[Monomial, int]:
        return self._indices.get(alpha, lambda: {m: i for i, m in enumerate(self.basis(alpha))})

    def dim(self, alpha: DivisorClass) -> int:
        return len(self.basis(alpha))

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        return Poly(self, {tuple(exps): Fraction(coeff)})

    def var(self, i: int) -> "Poly":
        return self.monomial([int(j == i) for j in range(self.nvars)])

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def irrelevant_polys(self) -> list["Poly"]:
        return [self.monomial(m) for m in self.irrelevant]


class CoxRing(GradedRing):
    """Cox ring ``Q[x_0..x_{r-1}]`` of a complete simplicial toric variety."""

    def __init__(self, fan: Fan, cl: ClassGroup | None = None):
        self.fan = fan
        self.cl = cl if cl is not None else ClassGroup(fan)
        super().__init__([f"x{i}" for i in range(fan.nrays)], self.cl.var_degrees,
                         irrelevant_generators(fan))

    def degree_of(self, exps):
        return self.cl.degree_of(exps)

    def zero_class(self):
        return self.cl.zero()

    def _enumerate(self, alpha):
        # Depth-first search on exponents bounded by the positive relation w:
        # sum_i w_i a_i is the same for every monomial of degree alpha.
        w = self.fan.positive_relation
        total = self.cl.weight(alpha)
        if total < 0:
            return
        n = self.nvars
        a = [0] * n

        def rec(i, rem):
            if i == n - 1:
                if rem % w[i] == 0:
                    a[i] = rem // w[i]
                    if self.cl.degree_of(a) == alpha:
                        yield tuple(a)
                return
            for e in range(rem // w[i] + 1):
                a[i] = e
                yield from rec(i + 1, rem - e * w[i])
            a[i] = 0

        yield from rec(0, total)


def irrelevant_generators(fan: Fan) -> list[Monomial]:
    """``x^sigma_hat = prod_{rho not in sigma} x_rho``, one per maximal cone, duplicates removed."""
    out = []
    for cone in fan.max_cones:
        m = tuple(int(i not in cone) for i in range(fan.nrays))
        if m not in out:
            out.append(m)
    return out


# polynomials ------------------------------------------------------------


class Poly:
    """Homogeneous polynomial with exact rational coefficients.

    Homogeneity is enforced on construction; the zero polynomial carries an
    explicit degree.
    """

    __slots__ = ("ring", "terms", "degree")

    def __init__(self, ring: GradedRing, terms: Mapping[Monomial, Fraction | int],
                 degree: DivisorClass | None = None):
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != ring.nvars:
                raise LengthMismatch(f"monomial {m} in a ring with {ring.nvars} variables")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        clean = {m: c for m, c in clean.items() if c}
        degs = {ring.degree_of(m) for m in clean}
        if len(degs) > 1:
            raise NotHomogeneous("terms of degrees " + ", ".join(sorted(map(str, degs))))
        if degs:
            (deg,) = degs
            if degree is not None and degree != deg:
                raise NotHomogeneous(f"declared degree {degree} but terms have degree {deg}")
            degree = deg
        elif degree is None:
            raise NotHomogeneous("the zero polynomial needs an explicit degree")
        self.ring = ring
        self.terms = clean
        self.degree = degree

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Poly) and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        if self.degree != other.degree and self.terms and other.terms:
            raise NotHomogeneous(f"cannot add degree {self.degree} and {other.degree}")
        return Poly(self.ring, terms, self.degree if self.terms else other.degree)

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {m: -c for m, c in self.terms.items()}, self.degree)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            return multiply(self, other)
        c = Fraction(other)
        return Poly(self.ring, {m: c * v for m, v in self.terms.items()}, self.degree)

    __rmul__ = __mul__

    def partial(self, i: int) -> "Poly":
        return partial_derivative(self, i)

    def euler(self, i: int) -> "Poly":
        return euler_derivative(self, i)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        pt = [Fraction(x) for x in point]
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
                    if not v:
                        break
            total += v
        return total

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]))

    def vector(self, index: Mapping[Monomial, int]) -> dict[int, Fraction]:
        return {index[m]: c for m, c in self.terms.items()}

    def __str__(self) -> str:
        return format_poly(self)

    __repr__ = __str__


def multiply(f: Poly, g: Poly) -> Poly:
    terms: dict[Monomial, Fraction] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            terms[m] = terms.get(m, 0) + c1 * c2
    return Poly(f.ring, terms, f.degree + g.degree)


def partial_derivative(f: Poly, i: int) -> Poly:
    terms = {}
    for m, c in f.terms.items():
        if m[i]:
            nm = list(m)
            nm[i] -= 1
            terms[tuple(nm)] = c * m[i]
    return Poly(f.ring, terms, f.degree - f.ring.var_degrees[i])


def euler_derivative(f: Poly, i: int) -> Poly:
    """``x_i * df/dx_i``; has the same degree as ``f``."""
    return Poly(f.ring, {m: c * m[i] for m, c in f.terms.items() if m[i]}, f.degree)


def shift(f: Poly, m: Monomial) -> dict[Monomial, Fraction]:
    """Terms of ``f * x^m`` (no homogeneity recheck)."""
    return {tuple(a + b for a, b in zip(k, m)): c for k, c in f.terms.items()}


# text format --------------------------------------------------------------

_FACTOR = re.compile(r"\*?(?:(\d+)(?:/(\d+))?|([a-z]\w*?)(\d+)(?:\^(\d+))?)")
_TERM_SPLIT = re.compile(r"(?=[+-])")


def parse_poly(text: str, ring: GradedRing, degree: DivisorClass | None = None) -> Poly:
    """Parse ``c * x0^a0 * ... * y1^b1 + ...``.

    Whitespace is ignored, ``*`` between factors is optional, coefficients are
    integers or ``p/q``.
    """
    s = "".join(text.split())
    if not s:
        raise ParseError("empty polynomial")
    names = {n: i for i, n in enumerate(ring.names)}
    terms: dict[Monomial, Fraction] = {}
    for chunk in _TERM_SPLIT.split(s):
        if not chunk:
            continue
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        if not chunk:
            raise ParseError(f"dangling sign in {text!r}")
        coeff = Fraction(sign)
        exps = [0] * ring.nvars
        pos = 0
        while pos < len(chunk):
            m = _FACTOR.match(chunk, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot parse {chunk[pos:]!r} in {text!r}")
            num, den, letter, idx, power = m.groups()
            if num is not None:
                if den is not None and int(den) == 0:
                    raise ParseError("zero denominator")
                coeff *= Fraction(int(num), int(den) if den else 1)
            else:
                name = letter + idx
                if name not in names:
                    raise ParseError(f"unknown variable {name!r}; ring has {', '.join(ring.names)}")
                exps[names[name]] += int(power) if power else 1
            pos = m.end()
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return Poly(ring, terms, degree)


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for m, c in f.sorted_terms():
        factors = [
            f"{f.ring.names[i]}^{e}" if e > 1 else f.ring.names[i]
            for i, e in enumerate(m) if e
        ]
        a = abs(c)
        if a != 1 or not factors:
            factors.insert(0, _fmt_coeff(a))
        body = "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def format_monomial(m: Monomial, ring: GradedRing) -> str:
    return format_poly(ring.monomial(m))


def random_poly(ring: GradedRing, alpha: DivisorClass, seed: int = 0, bound: int = 9) -> Poly:
    """Polynomial with every monomial of degree ``alpha`` and nonzero integer
    coefficients in ``[-bound, bound]``, drawn from ``random.Random(seed)``."""
    rng = random.Random(seed)
    terms = {}
    for m in ring.basis(alpha):
        c = 0
        while c == 0:
            c = rng.randint(-bound, bound)
        terms[m] = c
    return Poly(ring, terms, alpha)


# graded pieces and Oda certificates -------------------------------------------


def monomial_basis(alpha: DivisorClass, ring: GradedRing) -> tuple[Monomial, ...]:
    return ring.basis(alpha)


@dataclass(frozen=True)
class OdaCertificate:
    alpha1: DivisorClass
    alpha2: DivisorClass
    dim1: int
    dim2: int
    rank: int
    target_dim: int

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim

    @property
    def cokernel_dim(self) -> int:
        return self.target_dim - self.rank

    def to_json(self) -> dict:
        return {
            "alpha1": self.alpha1.to_json(),
            "alpha2": self.alpha2.to_json(),
            "dim_alpha1": self.dim1,
            "dim_alpha2": self.dim2,
            "rank": self.rank,
            "target_dim": self.target_dim,
            "cokernel_dim": self.cokernel_dim,
            "verdict": "Surjective" if self.surjective else "NotSurjective",
        }


def multiplication_surjective(alpha1: DivisorClass, alpha2: DivisorClass,
                              ring: GradedRing) -> OdaCertificate:
    """Rank of the span of all products ``m1*m2`` inside ``S^(alpha1+alpha2)``."""
    b1, b2 = ring.basis(alpha1), ring.basis(alpha2)
    target = alpha1 + alpha2
    idx = ring.index(target)
    ech = Echelon()
    for m1 in b1:
        for m2 in b2:
            ech.add({idx[tuple(a + b for a, b in zip(m1, m2))]: 1})
    return OdaCertificate(alpha1, alpha2, len(b1), len(b2), ech.rank, len(idx))


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """All nonnegative integer vectors of length ``parts`` summing to ``total``."""
    out = []
    for combo in combinations_with_replacement(range(parts), total):
        v = [0] * parts
        for i in combo:
            v[i] += 1
        out.append(tuple(v))
    return out
