from fractions import Fraction

import pytest

from monolink.errors import BoundTooHigh, HypothesisViolated, NotCongruent
from monolink.lattice import CohomologyClass, square
from monolink.manifold import c_of_X
from monolink.polyring import linear_form, quadratic_form
from monolink.witten import (
    assemble_donaldson_series,
    donaldson_moment,
    sign_change_check,
    sw_series,
    sw_vanishing_check,
    verify_witten,
)


def _basis(i, rank):
    return CohomologyClass.basis_vector(i, rank)


def test_sw_series_k3_is_one(k3):
    X = k3.manifold
    series = sw_series(X, k3.w, 3)
    assert series.render() == "1"


def test_sw_series_empty_support(k3):
    X = k3.manifold
    stripped = type(X)(X.name, X.chi, X.sigma, X.form, ())
    assert sw_series(stripped, k3.w, 3).is_zero()


def test_sw_series_parity(e3):
    # -w^2 - (3/4)(chi+sigma) is odd for this fixture, so the series is odd.
    X = e3.manifold
    w2 = square(X.form, e3.w)
    assert (-w2 - 3 * (X.chi + X.sigma) // 4) % 2 == 1
    series = sw_series(X, e3.w, 4)
    for d in (0, 2, 4):
        assert series.homogeneous_part(d).is_zero()
    assert not series.homogeneous_part(1).is_zero()


def test_sw_vanishing_check_k3(k3):
    X = k3.manifold
    assert sw_vanishing_check(X, k3.w, 1)  # <0, h> = 0
    assert not sw_vanishing_check(X, k3.w, 0)  # boundary degree c-2


def test_sw_vanishing_check_e3(e3):
    X = e3.manifold
    c = c_of_X(X)
    for d in range(5):
        expected = (d < c - 2) or ((d - c) % 2 != 0)
        assert sw_vanishing_check(X, e3.w, d) == expected


def test_donaldson_moment_k3_examples(k3):
    X = k3.manifold
    q = quadratic_form(X.form, 2)
    assert donaldson_moment(X, k3.w, k3.lam, 2, 0) == q
    point = donaldson_moment(X, k3.w, k3.lam, 2, 1)
    assert point.render() == "2"


def test_donaldson_moment_parity_zero(k3):
    X = k3.manifold
    # 2*delta = 8 fails the mod-8 rule, so the invariant is zero by fiat.
    assert donaldson_moment(X, k3.w, k3.lam, 4, 1).is_zero()
    assert donaldson_moment(X, k3.w, k3.lam, 4, 0).is_zero()


def test_donaldson_moment_hypothesis_errors(k3):
    X = k3.manifold
    with pytest.raises(HypothesisViolated):
        donaldson_moment(X, k3.w, k3.lam, 6, 1)  # parity holds, wrong level
    bad_w = k3.w + _basis(0, 22)
    with pytest.raises(HypothesisViolated):
        donaldson_moment(X, bad_w, k3.lam, 2, 0)  # w - lam not characteristic
    with pytest.raises(HypothesisViolated):
        donaldson_moment(X, k3.w, k3.lam, 2, 3)  # m out of range


def test_donaldson_moment_mixed_levels():
    # Two basic classes on 3H: the zero class bounds a level-one stratum,
    # the even class (2,2,...) a level-zero one (its r value equals delta).
    # Expected values worked out by hand from the two-sum formula:
    #   D(h^2) = Q - <c2-lam, h>^2   and   D(x) = 3.
    from monolink.lattice import IntersectionForm
    from monolink.manifold import FourManifoldData, SpincData, dim_sw, r_and_i

    from conftest import hyperbolic_gram

    form = IntersectionForm(hyperbolic_gram(3))
    s1 = SpincData(CohomologyClass((0,) * 6), sw=1)
    s2 = SpincData(CohomologyClass((2, 2, 0, 0, 0, 0)), sw=2, moment=7)
    X = FourManifoldData("mixed", chi=24, sigma=-16, form=form, basic_classes=(s1, s2))
    lam = CohomologyClass((1, 2, 1, -4, 0, 0))
    assert square(X.form, lam) == -4
    info = r_and_i(X, lam, X.basic_classes)
    assert info.per_class == (-2, 2)
    assert info.r_min == -2 and info.i_value == 6
    assert dim_sw(X, s2) == 2
    w = lam
    got = donaldson_moment(X, w, lam, 2, 0)
    q = quadratic_form(X.form, 2)
    lf = linear_form(s2.c1 - lam, X.form, 2)
    assert got == q - lf * lf
    point = donaldson_moment(X, w, lam, 2, 1)
    assert point.render() == "3"


def test_moment_sum_order_independent(e3):
    X = e3.manifold
    reordered = type(X)(
        X.name, X.chi, X.sigma, X.form, tuple(reversed(X.basic_classes))
    )
    a = donaldson_moment(X, e3.w, e3.lam, 3, 0)
    b = donaldson_moment(reordered, e3.w, e3.lam, 3, 0)
    assert a == b


def test_assemble_k3_matches_gaussian(k3):
    X = k3.manifold
    series = assemble_donaldson_series(X, k3.w, k3.lam, 3)
    q = quadratic_form(X.form, 3)
    gauss = (Fraction(1, 2) * q).exp_series()
    assert series == gauss
    with pytest.raises(BoundTooHigh):
        assemble_donaldson_series(X, k3.w, k3.lam, 4)


def test_assemble_low_degrees_vanish(e3):
    X = e3.manifold
    c = c_of_X(X)
    series = assemble_donaldson_series(X, e3.w, e3.lam, c + 1)
    for d in range(c - 2):
        assert series.homogeneous_part(d).is_zero()


def test_verify_witten_k3(k3):
    report = verify_witten(k3.manifold, k3.w, k3.lam, attributes=k3.attributes)
    assert report.passed
    assert report.c == 2
    assert report.congruence_low and report.congruence_main
    assert report.dinvar_point_ok and report.dinvar_ok


def test_verify_witten_e3(e3):
    report = verify_witten(e3.manifold, e3.w, e3.lam, attributes=e3.attributes)
    assert report.passed
    assert report.c == 3


def test_verify_hypothesis_failures(k3):
    X = k3.manifold
    with pytest.raises(HypothesisViolated, match="effective"):
        verify_witten(X, k3.w, k3.lam, attributes={"effective": False})
    bad_w = k3.w + _basis(0, 22)
    with pytest.raises(HypothesisViolated, match="characteristic"):
        verify_witten(X, bad_w, k3.lam)
    bad_lam = CohomologyClass((1, -1) + (0,) * 20)  # square -2, wrong value
    with pytest.raises(HypothesisViolated, match="lam"):
        verify_witten(X, k3.w, bad_lam)


def test_verify_requires_odd_b_plus(e3):
    from monolink.lattice import IntersectionForm
    from monolink.manifold import FourManifoldData

    from conftest import hyperbolic_gram

    flat = FourManifoldData("flat", 4, 0, IntersectionForm(hyperbolic_gram(1)), ())
    with pytest.raises(HypothesisViolated):
        verify_witten(flat, CohomologyClass((0, 0)), CohomologyClass((0, 0)))


def test_report_check_lines_deterministic(k3):
    r1 = verify_witten(k3.manifold, k3.w, k3.lam)
    r2 = verify_witten(k3.manifold, k3.w, k3.lam)
    assert r1.check_lines() == r2.check_lines()
    ids = [cid for cid, _, _ in r1.check_lines()]
    assert ids[0] == "congruence.low_degree"
    assert "coefficient.point_class" in ids


def test_sign_change_trivial_and_even(k3):
    X = k3.manifold
    assert sign_change_check(X, k3.w, k3.w, k3.lam)
    shifted = k3.w + 2 * _basis(1, 22)
    assert sign_change_check(X, k3.w, shifted, k3.lam)


def test_sign_change_odd_square(e3):
    # shifting by twice a square-one class flips the series sign
    X = e3.manifold
    x = _basis(8, 34)
    assert square(X.form, x) == 1
    w_prime = e3.w + 2 * x
    assert sign_change_check(X, e3.w, w_prime, e3.lam)
    lhs = assemble_donaldson_series(X, w_prime, e3.lam, 3)
    rhs = assemble_donaldson_series(X, e3.w, e3.lam, 3)
    assert lhs == -1 * rhs
    assert not lhs.is_zero()


def test_sign_change_requires_congruence(k3):
    with pytest.raises(NotCongruent):
        sign_change_check(k3.manifold, k3.w, k3.w + _basis(0, 22), k3.lam)
