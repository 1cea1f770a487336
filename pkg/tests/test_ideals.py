import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from corpus import ideals
from oracles import full_multiplication_rank, sympy_rank
from toricnl.cox import CoxRing, Poly, parse_poly, random_poly
from toricnl.errors import SocleDimensionNotOne, UnitGenerator
from toricnl.fan import projective_space
from toricnl.grading import effective_predecessors
from toricnl.hodge import jacobian_ideal
from toricnl.linalg import rank_mod_p
from toricnl.ideals import (
    GradedIdeal,
    contains,
    emptiness_certificate,
    pairing_report,
    piece_dimension,
    point_witness,
    quotient_dimension,
    socle_functional,
    verify_cox_gorenstein,
)

P2 = CoxRing(projective_space(2))
P3 = CoxRing(projective_space(3))


def ideal(ring, *gens):
    return GradedIdeal(ring, [parse_poly(g, ring) for g in gens])


SQUARES = ideal(P2, "x0^2", "x1^2", "x2^2")
FERMAT4_J = ideal(P3, "4*x0^3", "4*x1^3", "4*x2^3", "4*x3^3")
FERMAT4_J0 = ideal(P3, "4*x0^4", "4*x1^4", "4*x2^4", "4*x3^4")


def test_piece_dimension_examples():
    assert piece_dimension(FERMAT4_J, P3.cl.make([4])) == 16
    assert piece_dimension(FERMAT4_J, P3.cl.make([-2])) == 0
    assert piece_dimension(SQUARES, P2.cl.make([3])) == 9


def test_quotient_dimension_examples():
    assert quotient_dimension(FERMAT4_J, P3.cl.make([4])) == 19
    assert quotient_dimension(SQUARES, P2.cl.make([3])) == 1
    assert quotient_dimension(SQUARES, P2.zero_class()) == 1


def test_contains_examples():
    g = parse_poly("x0^3 + x1^3 + x2^3", P2)
    assert contains(jacobian_ideal(g), g.euler(0))
    assert not contains(SQUARES, parse_poly("x0*x1*x2", P2))
    assert contains(SQUARES, Poly(P2, {}, P2.cl.make([3])))


def test_emptiness_examples():
    cert = emptiness_certificate(SQUARES, 2)
    assert cert.verified and [p for _, p in cert.powers] == [2, 2, 2]
    cert = emptiness_certificate(ideal(P3, "x0^3", "x1^3", "x2^3"), 10)
    assert not cert.verified and cert.status == "Inconclusive"
    with pytest.raises(UnitGenerator):
        emptiness_certificate(GradedIdeal(P2, [P2.monomial((0, 0, 0))]), 5)


def test_emptiness_budget_is_inconclusive():
    f = random_poly(P3, P3.cl.make([4]), seed=2)
    cert = emptiness_certificate(jacobian_ideal(f), 20, max_piece=10)
    assert not cert.verified and cert.budget_hit


def test_point_witness_examples():
    i = ideal(P3, "4*x0^3", "4*x1^3", "4*x2^3")
    assert point_witness(i, (0, 0, 0, 1)).valid
    w = point_witness(i, (0, 0, 0, 0))
    assert not w.valid and "Z(Sigma)" in w.reason
    w = point_witness(i, (1, 0, 0, 0))
    assert not w.valid and "nonzero" in w.reason


def test_socle_functional_examples():
    lam = socle_functional(SQUARES, P2.cl.make([3]))
    basis = P2.basis(P2.cl.make([3]))
    assert [basis[i] for i, c in enumerate(lam) if c] == [(1, 1, 1)]
    lam = socle_functional(FERMAT4_J0, P3.cl.make([12]))
    basis = P3.basis(P3.cl.make([12]))
    assert lam[basis.index((3, 3, 3, 3))] != 0
    assert next(c for c in lam if c) == 1
    with pytest.raises(SocleDimensionNotOne) as err:
        socle_functional(SQUARES, P2.cl.make([2]))
    assert err.value.actual == 3


def test_pairing_examples():
    n = P2.cl.make([3])
    rep = pairing_report(SQUARES, n, P2.cl.make([1]))
    assert rep.nondegenerate and rep.rank == 3
    assert pairing_report(SQUARES, n, P2.zero_class()).rank == 1
    assert pairing_report(SQUARES, n, n).rank == 1


def test_gorenstein_examples():
    rep = verify_cox_gorenstein(SQUARES, P2.cl.make([3]))
    assert rep.verdict == "CoxGorenstein" and rep.socle_dim == 1
    assert [p.alpha.free[0] for p in rep.pairings] == [0, 1, 2, 3]
    assert verify_cox_gorenstein(FERMAT4_J0, P3.cl.make([12])).verdict == "CoxGorenstein"
    # the plain Jacobian ideal has its socle four degrees lower
    assert verify_cox_gorenstein(FERMAT4_J, P3.cl.make([8])).verdict == "CoxGorenstein"
    assert verify_cox_gorenstein(FERMAT4_J, P3.cl.make([12])).verdict == "ConditionsFailed"
    rep = verify_cox_gorenstein(ideal(P2, "x0^2", "x1^2"), P2.cl.make([2]))
    assert rep.verdict == "ConditionsFailed" and "emptiness" in rep.failures
    assert rep.witness.valid and rep.witness.point == (0, 0, 1)


def test_gorenstein_wrong_socle_degree_fails():
    rep = verify_cox_gorenstein(SQUARES, P2.cl.make([2]))
    assert rep.verdict == "ConditionsFailed" and "socle_dimension" in rep.failures


def test_gorenstein_with_threads_matches():
    a = verify_cox_gorenstein(FERMAT4_J0, P3.cl.make([12]), jobs=1).to_json(P3)
    b = verify_cox_gorenstein(FERMAT4_J0, P3.cl.make([12]), jobs=4).to_json(P3)
    assert a == b


def test_generic_jacobian_is_gorenstein_with_symmetry():
    f = random_poly(P2, P2.cl.make([3]), seed=9)
    j = jacobian_ideal(f)
    n = P2.cl.make([3])  # (n+1)(d-2)
    rep = verify_cox_gorenstein(j, n)
    assert rep.verdict == "CoxGorenstein"
    for a in effective_predecessors(n, P2.cl):
        assert quotient_dimension(j, a) == quotient_dimension(j, n - a)


CORPUS = ideals()


def test_corpus_is_large_enough():
    assert len(CORPUS) >= 50


@pytest.mark.parametrize("label, ideal", CORPUS, ids=[c[0] for c in CORPUS])
def test_piece_dimension_matches_full_matrix(label, ideal):
    ring = ideal.ring
    degs = sorted({g.degree for g in ideal.generators}, key=lambda c: c.sort_key())
    for base in degs:
        for extra in ring.var_degrees[:2]:
            alpha = base + extra
            if ring.dim(alpha) > 200:
                continue
            expected = full_multiplication_rank(ideal, alpha)
            assert ideal.piece(alpha).rank == expected
            assert piece_dimension(ideal, alpha) == expected


@pytest.mark.parametrize("label, ideal", CORPUS, ids=[c[0] for c in CORPUS])
def test_modular_fill_is_sound(label, ideal):
    for g in ideal.generators:
        alpha = g.degree + g.degree
        if ideal.fills(alpha):
            assert ideal.piece(alpha).rank == ideal.ring.dim(alpha)


@settings(max_examples=40)
@given(st.sampled_from(range(len(CORPUS))), st.data())
def test_ideal_closure(k, data):
    ideal = CORPUS[k][1]
    ring = ideal.ring
    g = data.draw(st.sampled_from(ideal.generators))
    extra = data.draw(st.sampled_from(ring.var_degrees))
    basis = ring.basis(extra)
    m = data.draw(st.sampled_from(basis))
    assert contains(ideal, g * ring.monomial(m))


def test_membership_uses_exact_path_when_not_full():
    # x0*x1*x2 is outside (x0^2, x1^2, x2^2) although the piece is almost full
    assert not SQUARES.fills(P2.cl.make([3]))
    assert not contains(SQUARES, parse_poly("x0*x1*x2", P2))
    assert contains(SQUARES, parse_poly("x0^2*x1 - 7/3*x2^3", P2))


def test_socle_functional_is_order_independent():
    a = ideal(P2, "x0^2", "x1^2", "x2^2")
    b = ideal(P2, "x2^2", "3*x0^2", "x1^2")
    assert socle_functional(a, P2.cl.make([3])) == socle_functional(b, P2.cl.make([3]))
    assert all(isinstance(c, Fraction) for c in socle_functional(a, P2.cl.make([3])))


@settings(max_examples=40)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 10**6))
def test_modular_rank_agrees_with_exact(nrows, ncols, seed):
    rng = random.Random(seed)
    rows = [{j: rng.randint(-5, 5) for j in range(ncols) if rng.random() < 0.5} for _ in range(nrows)]
    low = rank_mod_p(rows, ncols)
    exact = sympy_rank(rows, ncols)
    assert low <= exact
    if min(nrows, ncols) <= 6:
        # Hadamard: every minor is below (5 sqrt 6)^6 < 2^31 - 1, so none vanishes mod p
        assert low == exact
