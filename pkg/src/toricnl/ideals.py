"""Graded pieces of homogeneous ideals by exact linear algebra.

``I^alpha`` is the span of ``g * m`` for generators ``g`` and monomials ``m``
of degree ``alpha - deg g``.  On top of that: membership, certificates that
the zero locus in ``U(Sigma)`` is empty, socle functionals, the Macaulay
pairing and the full Cox-Gorenstein check.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Sequence

from .cox import GradedRing, Monomial, Poly, format_monomial, shift
from .errors import SocleDimensionNotOne, UnitGenerator
from .grading import DivisorClass, effective_predecessors
from .linalg import Echelon, integer_row, rank_mod_p
from .memo import Memo


class GradedIdeal:
    """Ideal generated by homogeneous polynomials; zero and repeated generators dropped."""

    def __init__(self, ring: GradedRing, generators: Iterable[Poly]):
        gens = []
        for g in generators:
            if g.ring is not ring:
                raise ValueError("generator lives in a different ring")
            if not g.is_zero() and g not in gens:
                gens.append(g)
        self.ring = ring
        self.generators: tuple[Poly, ...] = tuple(gens)
        self._pieces = Memo()
        self._full = Memo()
        # generators scaled to primitive integer coefficients; same span
        self._int_gens = [(g.degree, _int_terms(g)) for g in gens]

    def __add__(self, other: "GradedIdeal") -> "GradedIdeal":
        return GradedIdeal(self.ring, self.generators + other.generators)

    def spanning_rows(self, alpha: DivisorClass) -> Iterable[dict[int, int]]:
        idx = self.ring.index(alpha)
        if not idx:
            return
        for deg, terms in self._int_gens:
            for m in self.ring.basis(alpha - deg):
                yield {idx[tuple(a + b for a, b in zip(k, m))]: c for k, c in terms.items()}

    def piece(self, alpha: DivisorClass) -> Echelon:
        """Echelon basis of ``I^alpha`` in the coordinates of ``ring.basis(alpha)``."""
        return self._pieces.get(alpha, lambda: Echelon().extend(self.spanning_rows(alpha)))

    def fills(self, alpha: DivisorClass) -> bool:
        """``I^alpha == S^alpha``, proved by full rank modulo a prime.

        False only means the modular test did not prove it; callers fall back
        to exact elimination.
        """
        def compute():
            n = self.ring.dim(alpha)
            return n > 0 and rank_mod_p(self.spanning_rows(alpha), n, stop_at=n) == n
        return self._full.get(alpha, compute)

    def has_unit(self) -> bool:
        return any(g.degree.is_zero() for g in self.generators)

    def to_json(self) -> list[str]:
        return [str(g) for g in self.generators]


def _int_terms(g: Poly) -> dict[Monomial, int]:
    keys = list(g.terms)
    row = integer_row({i: g.terms[k] for i, k in enumerate(keys)})
    c = 0
    for v in row.values():
        c = gcd(c, v)
    return {keys[i]: v // c for i, v in row.items()}


def piece_dimension(ideal: GradedIdeal, alpha: DivisorClass) -> int:
    if ideal.fills(alpha):
        return ideal.ring.dim(alpha)
    return ideal.piece(alpha).rank


def quotient_dimension(ideal: GradedIdeal, alpha: DivisorClass) -> int:
    return ideal.ring.dim(alpha) - piece_dimension(ideal, alpha)


def contains(ideal: GradedIdeal, f: Poly) -> bool:
    if f.is_zero() or ideal.fills(f.degree):
        return True
    idx = ideal.ring.index(f.degree)
    return ideal.piece(f.degree).contains(f.vector(idx))


# zero loci ------------------------------------------------------------------


@dataclass
class EmptinessCertificate:
    """``verified`` means every irrelevant monomial has a power inside ``I``,
    so ``B`` lies in the radical and ``V(I)`` misses ``U(Sigma)``.  Not verified
    is inconclusive, never a proof of non-emptiness."""

    verified: bool
    m_max: int
    powers: list[tuple[Monomial, int | None]] = field(default_factory=list)
    max_piece: int | None = None
    budget_hit: bool = False

    @property
    def status(self) -> str:
        return "Verified" if self.verified else "Inconclusive"

    def to_json(self, ring: GradedRing) -> dict:
        return {
            "status": self.status,
            "m_max": self.m_max,
            "max_piece": self.max_piece,
            "budget_hit": self.budget_hit,
            "powers": [{"monomial": format_monomial(m, ring), "power": p} for m, p in self.powers],
        }


def _check_units(ideal: GradedIdeal) -> None:
    if ideal.has_unit():
        raise UnitGenerator("a generator has degree 0, so the ideal is not contained in B")


MAX_PIECE = 1000
EXACT_PIECE = 300


def emptiness_certificate(ideal: GradedIdeal, m_max: int = 20, jobs: int = 1,
                          max_piece: int | None = MAX_PIECE) -> EmptinessCertificate:
    """Search, for each irrelevant monomial ``x^sigma_hat``, the least ``m <= m_max``
    with ``(x^sigma_hat)^m`` in ``I``.  Stops at the first monomial without one.

    Powers whose graded piece has more than ``max_piece`` monomials are not
    tried (``None`` disables the budget); hitting the budget is inconclusive.
    Membership is proved by full rank modulo a prime, or by exact elimination
    when the piece has at most ``EXACT_PIECE`` monomials; a power that is not
    proved either way counts as absent, which keeps ``Verified`` sound.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    _check_units(ideal)
    ring = ideal.ring
    hit = []

    def least_power(mono):
        for m in range(1, m_max + 1):
            p = ring.monomial([m * e for e in mono])
            if max_piece is not None and ring.dim(p.degree) > max_piece:
                hit.append(mono)
                return None
            if ideal.fills(p.degree) or (ring.dim(p.degree) <= EXACT_PIECE and contains(ideal, p)):
                return m
        return None

    powers = []
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            found = list(ex.map(least_power, ring.irrelevant))
        powers = list(zip(ring.irrelevant, found))
        if None in found:
            cut = found.index(None) + 1
            powers = powers[:cut]
    else:
        for mono in ring.irrelevant:
            p = least_power(mono)
            powers.append((mono, p))
            if p is None:
                break
    ok = len(powers) == len(ring.irrelevant) and all(p is not None for _, p in powers)
    budget = any(m in hit for m, p in powers if p is None)
    return EmptinessCertificate(ok, m_max, powers, max_piece, budget)


@dataclass(frozen=True)
class PointWitness:
    valid: bool
    point: tuple[Fraction, ...]
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "status": "ValidWitness" if self.valid else "NotAWitness",
            "point": [str(x) for x in self.point],
            "reason": self.reason,
        }


def point_witness(ideal: GradedIdeal, point: Sequence) -> PointWitness:
    """Is ``point`` a zero of every generator lying outside ``Z(Sigma)``?"""
    pt = tuple(Fraction(x) for x in point)
    ring = ideal.ring
    if len(pt) != ring.nvars:
        return PointWitness(False, pt, f"point has {len(pt)} coordinates, ring has {ring.nvars}")
    for g in ideal.generators:
        if g.evaluate(pt):
            return PointWitness(False, pt, f"generator {g} is nonzero")
    if not any(p.evaluate(pt) for p in ring.irrelevant_polys()):
        return PointWitness(False, pt, "point lies in Z(Sigma)")
    return PointWitness(True, pt)


def candidate_points(nvars: int) -> Iterable[tuple[int, ...]]:
    """Small integer points tried when looking for witnesses: {0,1}^n, then {-1,0,1}^n for n <= 6."""
    for p in product((0, 1), repeat=nvars):
        if any(p):
            yield p
    if nvars <= 6:
        for p in product((0, 1, -1), repeat=nvars):
            if -1 in p:
                yield p


def search_witness(ideal: GradedIdeal) -> PointWitness | None:
    for p in candidate_points(ideal.ring.nvars):
        w = point_witness(ideal, p)
        if w.valid:
            return w
    return None


# socle and pairing -------------------------------------------------------------


def socle_functional(ideal: GradedIdeal, n_class: DivisorClass) -> list[Fraction]:
    """Coefficient vector (on ``basis(N)``) of the functional killing ``I^N``.

    Unique up to scale when ``dim R^N = 1``; normalized so that its first
    nonzero coordinate is 1.
    """
    ring = ideal.ring
    dim = ring.dim(n_class)
    ech = ideal.piece(n_class)
    q = dim - ech.rank
    if q != 1:
        raise SocleDimensionNotOne(q)
    (vec,) = ech.nullspace(dim)
    out = [vec.get(i, Fraction(0)) for i in range(dim)]
    lead = next(x for x in out if x)
    return [x / lead for x in out]


@dataclass
class PairingReport:
    alpha: DivisorClass
    rows: int
    cols: int
    rank: int
    quotient_dim: int
    dual_quotient_dim: int
    kernel_matches_ideal: bool

    @property
    def nondegenerate(self) -> bool:
        return self.rank == self.quotient_dim == self.dual_quotient_dim

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "matrix_dims": [self.rows, self.cols],
            "rank": self.rank,
            "quotient_dim": self.quotient_dim,
            "dual_quotient_dim": self.dual_quotient_dim,
            "nondegenerate": self.nondegenerate,
            "kernel_matches_ideal": self.kernel_matches_ideal,
        }


def _pairing_matrix(ring: GradedRing, functional: Sequence[Fraction], n_class, alpha):
    idx_n = ring.index(n_class)
    left = ring.basis(alpha)
    right = ring.basis(n_class - alpha)
    rows = []
    for m1 in left:
        row = {}
        for j, m2 in enumerate(right):
            v = functional[idx_n[tuple(a + b for a, b in zip(m1, m2))]]
            if v:
                row[j] = v
        rows.append(row)
    return rows, len(left), len(right)


def pairing_report(ideal: GradedIdeal, n_class: DivisorClass, alpha: DivisorClass,
                   functional: Sequence[Fraction] | None = None) -> PairingReport:
    """Rank of ``M[i][j] = Lambda(m_i * m_j)`` on ``S^alpha x S^(N-alpha)``.

    ``I^alpha`` always lies in the left kernel of ``M``, so the rank of ``M``
    equals the rank of the induced pairing on ``R^alpha x R^(N-alpha)``.  The
    report also checks that the left kernel is exactly ``I^alpha``.
    """
    ring = ideal.ring
    if functional is None:
        functional = socle_functional(ideal, n_class)
    rows, nl, nr = _pairing_matrix(ring, functional, n_class, alpha)
    ech = Echelon().extend(rows)
    rank = ech.rank
    ideal_piece = ideal.piece(alpha)
    q_left = nl - ideal_piece.rank
    q_right = nr - ideal.piece(n_class - alpha).rank
    # containment I^alpha in left kernel, then equal dimension
    contained = True
    for vec in ideal_piece.rows.values():
        acc: dict[int, Fraction] = {}
        for i, c in vec.items():
            for j, v in rows[i].items():
                acc[j] = acc.get(j, 0) + c * v
        if any(acc.values()):
            contained = False
            break
    matches = contained and ideal_piece.rank == nl - rank
    return PairingReport(alpha, nl, nr, rank, q_left, q_right, matches)


@dataclass
class GorensteinReport:
    n_class: DivisorClass
    emptiness: EmptinessCertificate
    witness: PointWitness | None
    socle_dim: int
    functional: list[Fraction] | None
    pairings: list[PairingReport]
    failures: list[str]

    @property
    def verdict(self) -> str:
        if self.failures:
            return "ConditionsFailed"
        if not self.emptiness.verified:
            return "EmptinessInconclusive"
        return "CoxGorenstein"

    def to_json(self, ring: GradedRing) -> dict:
        return {
            "socle_degree": self.n_class.to_json(),
            "verdict": self.verdict,
            "failures": self.failures,
            "emptiness": self.emptiness.to_json(ring),
            "witness": self.witness.to_json() if self.witness else None,
            "socle_dim": self.socle_dim,
            "socle_functional": (
                {format_monomial(m, ring): str(c)
                 for m, c in zip(ring.basis(self.n_class), self.functional) if c}
                if self.functional is not None else None
            ),
            "pairings": [p.to_json() for p in self.pairings],
        }


def verify_cox_gorenstein(ideal: GradedIdeal, n_class: DivisorClass, m_max: int = 20,
                          jobs: int = 1, max_piece: int | None = MAX_PIECE) -> GorensteinReport:
    """Check both defining conditions of a Cox-Gorenstein ideal of socle degree ``N``.

    The apolarity condition is checked for every ``alpha`` with ``alpha`` and
    ``N - alpha`` effective.
    """
    _check_units(ideal)
    ring = ideal.ring
    failures = []
    witness = search_witness(ideal)
    if witness is not None:
        emptiness = EmptinessCertificate(False, m_max, [])
        failures.append("emptiness")
    else:
        emptiness = emptiness_certificate(ideal, m_max, jobs, max_piece)
    socle_dim = quotient_dimension(ideal, n_class)
    functional = None
    pairings: list[PairingReport] = []
    if socle_dim != 1:
        failures.append("socle_dimension")
    else:
        functional = socle_functional(ideal, n_class)
        alphas = effective_predecessors(n_class, ring.cl)
        if jobs > 1:
            with ThreadPoolExecutor(jobs) as ex:
                pairings = list(ex.map(lambda a: pairing_report(ideal, n_class, a, functional), alphas))
        else:
            pairings = [pairing_report(ideal, n_class, a, functional) for a in alphas]
        if not all(p.nondegenerate for p in pairings):
            failures.append("pairing")
        if not all(p.kernel_matches_ideal for p in pairings):
            failures.append("apolarity")
    return GorensteinReport(n_class, emptiness, witness, socle_dim, functional, pairings, failures)
