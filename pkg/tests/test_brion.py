"""Corner-sum identity engine: weights, series, randomized verification."""

from fractions import Fraction

import pytest

from qbrion import brion, fixtures, lattice
from qbrion.errors import PreconditionError
from qbrion.qalg import QPolynomial, q_pochhammer

from conftest import segment


# ----------------------------------------------------------- weight polynomial


def test_rs_polynomial_segment_2():
    rs = brion.rs_polynomial(segment(2))
    assert rs.coefficient((0,)) == QPolynomial([1])
    assert rs.coefficient((1,)) == QPolynomial([1, 1])
    assert rs.coefficient((2,)) == QPolynomial([1])
    assert set(rs.support()) == {(0,), (1,), (2,)}


def test_rs_polynomial_hexagon_center(hexagon):
    # all six slacks equal 1 at the center
    rs = brion.rs_polynomial(hexagon)
    center = rs.coefficient((1, 1))
    assert center.evaluate(1) == 720 // 1  # 6!/1 = 720 over unit slacks
    assert center.coefficient(0) == 1


def test_rs_polynomial_square_symmetry(square):
    rs = brion.rs_polynomial(square)
    corners = [(0, 0), (0, 1), (1, 0), (1, 1)]
    vals = {rs.coefficient(c) for c in corners}
    assert len(vals) == 1


def test_g_weight_is_inverse_pochhammer_product():
    order = 8
    got = brion.g_weight((0, 2), order)
    want = q_pochhammer(2).to_series(order).inverse()
    assert got == want


# --------------------------------------------------------- series evaluation


def test_lhs_series_counts_points_at_q0(hexagon):
    x0 = brion.sample_generic_point(hexagon, seed=3)
    series = brion.lhs_value_at(hexagon, x0, order=6)
    total = sum(
        brion.monomial_value(x0, u) for u in lattice.lattice_points(hexagon)
    )
    assert series.coefficient(0) == total


def test_rhs_q0_is_classical_brion(polytopes):
    # q^0 coefficient of the corner sum equals the plain lattice-point
    # generating function at the sample point, fixture by fixture
    for name in fixtures.NAMES:
        P = polytopes[name]
        for seed in (0, 1):
            x0 = brion.sample_generic_point(P, seed=seed)
            rhs = brion.rhs_series_at(P, x0, order=4)
            total = sum(
                brion.monomial_value(x0, u) for u in lattice.lattice_points(P)
            )
            assert rhs.coefficient(0) == total, name


def test_evaluation_homomorphism(hexagon):
    # evaluating the weight polynomial then truncating equals truncating
    # coefficients then evaluating
    order = 5
    x0 = brion.sample_generic_point(hexagon, seed=11)
    rs = brion.rs_polynomial(hexagon)
    direct = rs.evaluate_series(x0, order)
    manual = None
    for u in rs.support():
        term = rs.coefficient(u).to_series(order).scale(brion.monomial_value(x0, u))
        manual = term if manual is None else manual + term
    assert direct == manual


# ------------------------------------------------------------- verification


@pytest.mark.parametrize("m", [0, 1, 2, 5])
def test_verify_identity_segments(m):
    report = brion.verify_identity(segment(m), order=20, trials=3, seed=5)
    assert report.equal
    assert report.first_mismatch is None
    assert len(report.points) == 3


@pytest.mark.parametrize("name", ["hexagon", "simplex_p2", "square_p1xp1"])
def test_verify_identity_2d(polytopes, name):
    report = brion.verify_identity(polytopes[name], order=12, trials=3, seed=2)
    assert report.equal, report.first_mismatch


def test_verify_identity_trapezoid(trapezoid):
    report = brion.verify_identity(trapezoid, order=10, trials=2, seed=0)
    assert report.equal


@pytest.mark.parametrize("name", ["segment_2", "hexagon", "square_p1xp1"])
def test_verify_identity_finite_form(polytopes, name):
    report = brion.verify_identity(
        polytopes[name], order=12, trials=2, seed=4, finite_form=True
    )
    assert report.equal
    assert report.finite_form


def test_finite_form_requires_radial_symmetry(trapezoid):
    with pytest.raises(PreconditionError):
        brion.verify_identity(trapezoid, order=8, trials=1, finite_form=True)


def test_point_polytope_sums_to_one():
    P = segment(0)
    x0 = brion.sample_generic_point(P, seed=9)
    order = 12
    rhs = brion.rhs_series_at(P, x0, order)
    lhs = brion.lhs_value_at(P, x0, order)
    assert rhs == lhs
    assert lhs.coefficient(0) == 1


def test_truncation_stability(hexagon):
    x0 = brion.sample_generic_point(hexagon, seed=7)
    low = brion.rhs_series_at(hexagon, x0, order=6)
    high = brion.rhs_series_at(hexagon, x0, order=12)
    assert high.truncate(6) == low


def test_degree_sum_sufficiency(hexagon):
    # every corner term whose valuation exceeds the window contributes
    # nothing below it: each such term must vanish mod q^K
    K = 5
    x0 = brion.sample_generic_point(hexagon, seed=13)
    for vd in lattice.enumerate_vertices(hexagon):
        for b in lattice.enumerate_corner_degrees(hexagon, vd, K + 10):
            val = lattice.corner_degree_valuation(hexagon, vd, b)
            if K < val:
                term = brion.vertex_term(hexagon, vd, b, x0, order=K)
                assert term.is_zero


def test_report_is_json_serializable(square):
    import json

    report = brion.verify_identity(square, order=8, trials=2, seed=1)
    payload = json.dumps(report.to_dict())
    assert "polytope_hash" in payload


def test_sample_generic_point_deterministic(hexagon):
    a = brion.sample_generic_point(hexagon, seed=21)
    b = brion.sample_generic_point(hexagon, seed=21)
    c = brion.sample_generic_point(hexagon, seed=22)
    assert a == b
    assert a != c
    assert all(isinstance(x, Fraction) and x != 0 for x in a)


def test_degree_vectors_used_counts_union(hexagon):
    report = brion.verify_identity(hexagon, order=6, trials=1, seed=0)
    union = set()
    for vd in lattice.enumerate_vertices(hexagon):
        union.update(lattice.enumerate_corner_degrees(hexagon, vd, 6))
    assert report.degree_vectors_used == len(union)


# ----------------------------------------------------- finite-form coherence


@pytest.mark.parametrize("name", ["segment_1", "segment_5", "simplex_p2", "square_p1xp1", "hexagon"])
def test_weight_polynomial_coherence(polytopes, name):
    # (q;q)_{offset sum} times the weighted point series equals the
    # weight polynomial, coefficient by coefficient
    P = polytopes[name]
    order = 12
    x0 = brion.sample_generic_point(P, seed=6)
    lhs = brion.lhs_value_at(P, x0, order)
    scaled = lhs * q_pochhammer(P.offset_sum()).to_series(order)
    rs = brion.rs_polynomial(P).evaluate_series(x0, order)
    assert scaled == rs
