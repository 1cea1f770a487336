"""Jacobian rings, quasi-smoothness certificates, the Cayley trick and
primitive Hodge numbers of quasi-smooth hypersurfaces and intersections.

Primitive Hodge numbers are dimensions of graded pieces of Jacobian rings:

* hypersurface ``X_f``, ``f`` of degree ``beta`` in ``P^d``:
  ``h^{a, d-1-a}_prim = dim R(f)_{(d-a) beta - beta0}``;
* intersection ``X = X_1 n ... n X_s``: pass to ``F = sum_j y_j f_j`` on the
  Cayley variety and take ``dim R(F)`` in degree ``(d+s-p) deg F - beta0^E``,
  which gives ``h^{p-s, d-p}_prim(X)``.

With ``deg y_j = (-beta_j, 1)`` we get ``deg F = (0, 1)`` and
``beta0^E = (beta0 - sum beta_j, s)``, so the Cayley target degree is
``(sum beta_j - beta0, d - p)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .cox import CoxRing, GradedRing, Monomial, Poly, compositions
from .errors import ExcludedIndex, IndexOutOfRange, TooManyPolynomials
from .grading import DivisorClass, support_certificate
from .ideals import (
    MAX_PIECE,
    EmptinessCertificate,
    GradedIdeal,
    PointWitness,
    emptiness_certificate,
    point_witness,
    quotient_dimension,
    search_witness,
)


def jacobian_ideal(f: Poly) -> GradedIdeal:
    """``J(f) = (df/dv for every variable v)``, zero partials dropped."""
    return GradedIdeal(f.ring, [f.partial(i) for i in range(f.ring.nvars)])


def toric_jacobian_ideal(f: Poly) -> GradedIdeal:
    """``J_0(f) = (x_rho df/dx_rho)``; every generator has degree ``deg f``."""
    return GradedIdeal(f.ring, [f.euler(i) for i in range(f.ring.nvars)])


def determinant(m: Sequence[Sequence[Poly]]) -> Poly:
    n = len(m)
    total = None
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = m[0][perm[0]]
        for i in range(1, n):
            term = term * m[i][perm[i]]
        term = term if sign > 0 else -term
        total = term if total is None else total + term
    return total


def singular_locus_ideal(polys: Sequence[Poly]) -> GradedIdeal:
    """``(f_1..f_s) + (s x s minors of [df_i/dx_j])``."""
    ring = polys[0].ring
    s = len(polys)
    jac = [[f.partial(j) for j in range(ring.nvars)] for f in polys]
    minors = []
    for cols in combinations(range(ring.nvars), s):
        minors.append(determinant([[row[c] for c in cols] for row in jac]))
    return GradedIdeal(ring, list(polys) + minors)


@dataclass
class Certificate:
    """Outcome of a smoothness-type check.

    ``Verified`` is a proof (emptiness certificate), ``Refuted`` carries a
    witness point, ``Inconclusive`` proves nothing.
    """

    status: str
    emptiness: EmptinessCertificate | None = None
    witness: PointWitness | None = None
    ring: GradedRing | None = field(default=None, repr=False)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "emptiness": self.emptiness.to_json(self.ring) if self.emptiness else None,
            "witness": self.witness.to_json() if self.witness else None,
            "notes": list(self.notes),
        }


def _certify(ideal: GradedIdeal, m_max: int, witness=None, jobs: int = 1,
             max_piece: int | None = MAX_PIECE) -> Certificate:
    if witness is not None:
        w = point_witness(ideal, witness)
        if w.valid:
            return Certificate("Refuted", witness=w, ring=ideal.ring)
    w = search_witness(ideal)
    if w is not None:
        return Certificate("Refuted", witness=w, ring=ideal.ring)
    cert = emptiness_certificate(ideal, m_max, jobs, max_piece)
    out = Certificate(cert.status, emptiness=cert, ring=ideal.ring)
    if cert.budget_hit:
        out.notes.append(f"stopped at graded pieces larger than {max_piece} monomials")
    return out


def quasi_smooth_certificate(polys: Sequence[Poly], m_max: int = 20, witness=None,
                             jobs: int = 1, max_piece: int | None = MAX_PIECE) -> Certificate:
    """Certify that ``V(f_1..f_s)`` is smooth of codimension ``s`` (or empty) in ``U(Sigma)``."""
    ring = polys[0].ring
    d = ring.fan.dim
    if len(polys) > d:
        raise TooManyPolynomials(f"{len(polys)} polynomials in dimension {d}")
    return _certify(singular_locus_ideal(polys), m_max, witness, jobs, max_piece)


def nondegeneracy_certificate(f: Poly, m_max: int = 20, witness=None, jobs: int = 1,
                              max_piece: int | None = MAX_PIECE) -> Certificate:
    """Empty common zero locus of ``f`` and its Euler derivatives in ``U(Sigma)``."""
    ring = f.ring
    ideal = GradedIdeal(ring, [f]) + toric_jacobian_ideal(f)
    cert = _certify(ideal, m_max, witness, jobs, max_piece)
    sc = support_certificate(f.degree, ring.fan, ring.cl)
    if not sc.ample:
        cert.notes.append(f"degree {f.degree} is not ample")
    if cert.status == "Verified":
        cert.notes.append("nondegenerate, hence quasi-smooth")
    return cert


# Cayley trick --------------------------------------------------------------------


class CayleyRing(GradedRing):
    """Cox ring ``Q[x_0..x_{n-1}, y1..ys]`` of ``P(L_1 + ... + L_s)``, graded by ``Cl (+) Z``."""

    def __init__(self, base: CoxRing, betas: Sequence[DivisorClass]):
        self.base = base
        self.betas = tuple(betas)
        s = len(betas)
        n = base.nvars
        degrees = [d.extend(0) for d in base.var_degrees]
        degrees += [(-b).extend(1) for b in betas]
        irrelevant = [xm + tuple(int(k == j) for k in range(s))
                      for xm in base.irrelevant for j in range(s)]
        super().__init__(list(base.names) + [f"y{j + 1}" for j in range(s)], degrees, irrelevant)
        self.n = n
        self.s = s

    def zero_class(self):
        return self.base.zero_class().extend(0)

    def base_part(self, alpha: DivisorClass) -> DivisorClass:
        return DivisorClass(alpha.free[:-1], alpha.torsion, alpha.orders)

    def degree_of(self, exps):
        xs, ys = exps[: self.n], exps[self.n:]
        c = self.base.degree_of(xs)
        for b, beta in zip(ys, self.betas):
            if b:
                c = c - b * beta
        return c.extend(sum(ys))

    def _enumerate(self, alpha):
        e = alpha.free[-1]
        if e < 0:
            return
        c = self.base_part(alpha)
        for ys in compositions(e, self.s):
            xc = c
            for b, beta in zip(ys, self.betas):
                if b:
                    xc = xc + b * beta
            for xm in self.base.basis(xc):
                yield xm + ys

    def embed(self, f: Poly) -> Poly:
        zeros = (0,) * self.s
        return Poly(self, {m + zeros: c for m, c in f.terms.items()}, f.degree.extend(0))


@dataclass
class CayleyData:
    ring: CayleyRing
    polys: tuple[Poly, ...]
    F: Poly
    anticanonical: DivisorClass

    def to_json(self) -> dict:
        return {
            "variables": list(self.ring.names),
            "variable_degrees": [d.to_json() for d in self.ring.var_degrees],
            "F": str(self.F),
            "F_degree": self.F.degree.to_json(),
            "anticanonical": self.anticanonical.to_json(),
            "irrelevant_generators": len(self.ring.irrelevant),
        }


def cayley(polys: Sequence[Poly]) -> CayleyData:
    """``F = y1 f1 + ... + ys fs`` in the Cox ring of the Cayley variety."""
    if not polys:
        raise ValueError("need at least one polynomial")
    base = polys[0].ring
    ring = CayleyRing(base, [f.degree for f in polys])
    F = None
    for j, f in enumerate(polys):
        term = ring.embed(f) * ring.var(base.nvars + j)
        F = term if F is None else F + term
    beta0 = base.anticanonical()
    for f in polys:
        beta0 = beta0 - f.degree
    beta0 = beta0.extend(len(polys))
    return CayleyData(ring, tuple(ring.embed(f) for f in polys), F, beta0)


# Hodge numbers -------------------------------------------------------------------


@dataclass
class HodgeReport:
    ambient_dim: int
    codim: int
    index_pair: tuple[int, int]
    target_degree: DivisorClass
    dimension: int
    certificates: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "codim": self.codim,
            "index_pair": list(self.index_pair),
            "target_degree": self.target_degree.to_json(),
            "dimension": self.dimension,
            "certificates": self.certificates,
            "warnings": self.warnings,
        }


def _interpretation(status: str, warnings: list[str]) -> None:
    if status != "Verified":
        warnings.append(f"quasi-smoothness {status.lower()}: dimension computed, "
                        "geometric interpretation unverified")


def hypersurface_prim_hodge(f: Poly, a: int, m_max: int = 20, certify: bool = True,
                            jobs: int = 1, max_piece: int | None = MAX_PIECE) -> HodgeReport:
    """``h^{a, d-1-a}_prim(X_f) = dim R(f)`` in degree ``(d-a) deg f - beta0``."""
    ring = f.ring
    d = ring.fan.dim
    if not 0 <= a <= d - 1:
        raise IndexOutOfRange(f"index a = {a} outside [0, {d - 1}]")
    beta = f.degree
    target = (d - a) * beta - ring.anticanonical()
    dim = quotient_dimension(jacobian_ideal(f), target)
    report = HodgeReport(d, 1, (a, d - 1 - a), target, dim)
    sc = support_certificate(beta, ring.fan, ring.cl)
    report.certificates["degree"] = {"ample": sc.ample, "cartier": sc.cartier, "nef": sc.nef}
    if not sc.ample:
        report.warnings.append(f"degree {beta} is not ample")
    if certify:
        cert = quasi_smooth_certificate([f], m_max, jobs=jobs, max_piece=max_piece)
        report.certificates["quasi_smooth"] = cert.to_json()
        _interpretation(cert.status, report.warnings)
    else:
        report.warnings.append("quasi-smoothness not checked")
    if a in (0, d - 1):
        report.warnings.append("edge index: Jacobian-ring dimension reported without geometric identification")
    return report


def excluded_indices(d: int, s: int) -> list[int]:
    return [x // 2 for x in (d + s - 1, d + s - 3) if x % 2 == 0]


def intersection_prim_hodge(polys: Sequence[Poly], p: int, m_max: int = 20, certify: bool = True,
                            jobs: int = 1, max_piece: int | None = MAX_PIECE) -> HodgeReport:
    """``h^{p-s, d-p}_prim(X)`` via the Cayley hypersurface."""
    ring = polys[0].ring
    d = ring.fan.dim
    s = len(polys)
    if s > d:
        raise TooManyPolynomials(f"{s} polynomials in dimension {d}")
    if p in excluded_indices(d, s):
        raise ExcludedIndex(f"p = {p} is excluded for d = {d}, s = {s}")
    if not s <= p <= d:
        raise IndexOutOfRange(f"p = {p} outside [{s}, {d}]")
    data = cayley(polys)
    target = (d + s - p) * data.F.degree - data.anticanonical
    beta_sum = ring.zero_class()
    for f in polys:
        beta_sum = beta_sum + f.degree
    assert target == (beta_sum - ring.anticanonical()).extend(d - p)
    jf = jacobian_ideal(data.F)
    dim = quotient_dimension(jf, target)
    report = HodgeReport(d, s, (p - s, d - p), target, dim)
    report.certificates["cayley"] = data.to_json()
    for j, f in enumerate(polys):
        sc = support_certificate(f.degree, ring.fan, ring.cl)
        if not sc.ample:
            report.warnings.append(f"degree of f{j + 1} = {f.degree} is not ample")
    if certify:
        base = quasi_smooth_certificate(polys, m_max, jobs=jobs, max_piece=max_piece)
        report.certificates["quasi_smooth"] = base.to_json()
        top = _certify(jf, m_max, jobs=jobs, max_piece=max_piece)
        report.certificates["cayley_quasi_smooth"] = top.to_json()
        _interpretation(base.status, report.warnings)
    else:
        report.warnings.append("quasi-smoothness not checked")
    return report
