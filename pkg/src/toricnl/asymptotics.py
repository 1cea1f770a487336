"""Exact arithmetic behind the asymptotic Noether-Lefschetz statement.

Thresholds and bounds are plain rationals; the hypothesis report gathers
every checkable hypothesis for a concrete ``(Sigma, beta, eta, k)``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Sequence

from .cox import CoxRing, OdaCertificate, multiplication_surjective
from .errors import DegenerateDenominator
from .grading import ClassGroup, DivisorClass, is_effective, m_beta, support_certificate
from .fan import Fan


def delta_upper(r: int, k: int) -> Fraction:
    """``1 / (4 (r - (k+1)))``; warns when ``r < 2(k+1)``."""
    if r <= k + 1:
        raise DegenerateDenominator(f"r = {r} must exceed k + 1 = {k + 1}")
    if r < 2 * (k + 1):
        warnings.warn(f"r = {r} < 2(k+1) = {2 * (k + 1)}", stacklevel=2)
    return Fraction(1, 4 * (r - (k + 1)))


def codim_bound(d: int, m: int, k: int) -> Fraction:
    """``d * m^k / k!``."""
    return Fraction(d * m ** k, factorial(k))


def step1_coefficient(a: Sequence[int], b: int, k: int) -> Fraction:
    """Coefficient of ``t^k`` in ``prod_i (1 + a_i t) / (1 + b t)``."""
    num = [Fraction(1)]
    for ai in a:
        nxt = num + [Fraction(0)]
        for j, c in enumerate(num):
            nxt[j + 1] += c * ai
        num = nxt
    # 1/(1+bt) = sum_j (-b)^j t^j
    return sum((num[j] * (-b) ** (k - j) for j in range(min(k, len(num) - 1) + 1)), Fraction(0))


@dataclass
class Step3Report:
    k: int
    deg_v: int
    m_beta: int
    delta: Fraction
    r: int
    lhs: int
    rhs: Fraction
    chain_holds: bool
    lhs_class: DivisorClass
    rhs_class: DivisorClass | None
    absurdity: bool
    constraint_bound: Fraction | None
    constraint_holds: bool | None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "deg_v": self.deg_v,
            "m_beta": self.m_beta,
            "delta": str(self.delta),
            "r": self.r,
            "lhs_multiplier": self.lhs,
            "rhs_multiplier": str(self.rhs),
            "chain_holds": self.chain_holds,
            "lhs_class": self.lhs_class.to_json(),
            "rhs_class": self.rhs_class.to_json() if self.rhs_class is not None else None,
            "delta_exceeds_half_inverse_r": self.absurdity,
            "deg_v_bound": str(self.constraint_bound) if self.constraint_bound is not None else None,
            "deg_v_bound_holds": self.constraint_holds,
        }


def step3_socle_bounds(k: int, deg_v: int, m_beta: int, delta: Fraction, r: int,
                       eta: DivisorClass, beta0: DivisorClass,
                       d_param: int | None = None) -> Step3Report:
    """Compare ``2(k+1) deg V`` with ``2 r m_beta delta`` and flag ``delta > 1/(2r)``.

    The socle classes are ``c * eta - beta0`` for the two multipliers ``c``;
    the right-hand class is only formed when its multiplier is an integer.
    With ``d_param`` the constraint ``deg V <= min(2 delta m_beta, d)`` is checked.
    """
    delta = Fraction(delta)
    lhs = 2 * (k + 1) * deg_v
    rhs = 2 * r * m_beta * delta
    rhs_class = rhs.numerator * eta - beta0 if rhs.denominator == 1 else None
    bound = holds = None
    if d_param is not None:
        bound = min(2 * delta * m_beta, Fraction(d_param))
        holds = deg_v <= bound
    return Step3Report(
        k, deg_v, m_beta, delta, r, lhs, rhs, lhs <= rhs,
        lhs * eta - beta0, rhs_class, delta > Fraction(1, 2 * r), bound, holds,
    )


@dataclass
class NLHypothesisReport:
    k: int
    beta: DivisorClass
    eta: DivisorClass
    beta0: DivisorClass
    n: int | None
    m_beta: int | None
    N: DivisorClass
    beta_ample: bool
    beta_cartier: bool
    eta_ample: bool
    eta_primitive: bool
    r: int
    delta_upper: Fraction | None
    oda: list[OdaCertificate] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return (self.beta_ample and self.beta_cartier and self.eta_ample and self.eta_primitive
                and self.n is not None and all(c.surjective for c in self.oda))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "beta": self.beta.to_json(),
            "eta": self.eta.to_json(),
            "beta0": self.beta0.to_json(),
            "n": self.n,
            "m_beta": self.m_beta,
            "N": self.N.to_json(),
            "beta_ample": self.beta_ample,
            "beta_cartier": self.beta_cartier,
            "eta_ample": self.eta_ample,
            "eta_primitive": self.eta_primitive,
            "r": self.r,
            "delta_upper": str(self.delta_upper) if self.delta_upper is not None else None,
            "oda": [c.to_json() for c in self.oda],
            "flags": list(self.flags),
            "hypotheses_hold": self.hypotheses_hold,
        }


def solve_multiple(c: DivisorClass, eta: DivisorClass) -> int | None:
    """The integer ``n`` with ``c == n * eta``, or ``None``."""
    n = None
    for x, e in zip(c.free, eta.free):
        if e == 0:
            if x != 0:
                return None
            continue
        if x % e:
            return None
        if n is None:
            n = x // e
        elif n != x // e:
            return None
    if n is None:
        return None
    return n if n * eta == c else None


def nl_hypothesis_report(fan: Fan, cl: ClassGroup, beta: DivisorClass, eta: DivisorClass, k: int,
                         oda_pairs: Sequence[tuple[DivisorClass, DivisorClass]] = (),
                         ring: CoxRing | None = None, order: str = "effective") -> NLHypothesisReport:
    flags = []
    if fan.dim != 2 * k + 1:
        flags.append(f"ambient dimension {fan.dim} differs from 2k+1 = {2 * k + 1}")
    beta0 = cl.anticanonical()
    sb = support_certificate(beta, fan, cl)
    se = support_certificate(eta, fan, cl)
    g = 0
    for x in eta.free:
        g = gcd(g, x)
    primitive = g == 1
    if not primitive:
        flags.append(f"eta free part has gcd {g}")

    n = solve_multiple(k * beta - beta0, eta)
    if n is not None and n < 0:
        flags.append(f"k*beta - beta0 = {n}*eta with n < 0")
        n = None
    elif n is None:
        flags.append("k*beta - beta0 is not an integer multiple of eta")
    elif n == 0:
        flags.append("n = 0 accepted (k*beta = beta0)")

    mb = None
    if is_effective(beta, cl) and is_effective(eta, cl) and any(eta.free):
        mb = m_beta(beta, eta, cl, order)
    else:
        flags.append("m_beta undefined: beta or eta not effective")

    r = fan.nrays
    du = None
    if r < 2 * (k + 1):
        flags.append(f"r = {r} < 2(k+1) = {2 * (k + 1)}")
    if r > k + 1:
        du = Fraction(1, 4 * (r - (k + 1)))

    ring = ring or CoxRing(fan, cl)
    pairs = sorted({(a, b) for a, b in oda_pairs}, key=lambda p: (p[0].sort_key(), p[1].sort_key()))
    oda = [multiplication_surjective(a, b, ring) for a, b in pairs]
    return NLHypothesisReport(
        k, beta, eta, beta0, n, mb, (k + 1) * beta - beta0,
        sb.ample, sb.cartier, se.ample, primitive, r, du, oda, flags,
    )
