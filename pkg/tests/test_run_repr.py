import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittone.char_one import DeformContext, MaxPlusElem, deform_add
from wittone.run_repr import (
    ExpFraction,
    ExpSum,
    ParseError,
    TropicalReal,
    alpha_auto,
    as_maxplus,
    exp_eval,
    hyper_add,
    hyper_membership_check,
    hyper_mul,
    limit_check,
    parse_exp_fraction,
    residue,
    residue_tilde,
)

e = ExpSum.e
E = math.exp

coef = st.floats(-5, 5).filter(lambda a: abs(a) > 1e-3)
# exponents on a 1/64 grid, far above the merge tolerance
expo = st.integers(0, 192).map(lambda k: k / 64)
sums = st.lists(st.tuples(expo, coef), min_size=1, max_size=4).map(lambda t: ExpSum(tuple(t)))


def test_eval_examples():
    for T in (0.1, 1.0, 7.0):
        assert exp_eval(ExpSum.const(2.5), T) == 2.5
        assert exp_eval(e(1.3), T) == pytest.approx(E(-1.3 / T), rel=1e-15)
        assert exp_eval(e(1) + e(1), T) == pytest.approx(2 * E(-1 / T), rel=1e-15)
    with pytest.raises(ValueError):
        exp_eval(e(1), 0)


def test_canonical_form():
    f = ExpSum(((2, 1.0), (0, 3.0), (2, -1.0), (1, 0.0)))
    assert f.terms == ((0, 3.0),)


def test_ring_examples():
    f = e(0.5, 2) + e(2, -1)
    assert f + ExpSum.zero() == f
    assert f * ExpSum.const(1) == f
    assert e(0.4) * e(1.1) == e(1.5)
    exact = lambda xi: ExpSum.e(Fraction(xi))  # noqa: E731
    assert (exact(0) + exact(1)) * (exact(0) - exact(1)) == exact(0) - exact(2)


@given(sums, sums, st.floats(0.2, 5))
def test_eval_is_homomorphism(f, g, T):
    fv, gv = exp_eval(f, T), exp_eval(g, T)
    scale = sum(abs(a) * E(-xi / T) for xi, a in f.terms) + sum(abs(a) * E(-xi / T) for xi, a in g.terms)
    assert abs(exp_eval(f + g, T) - (fv + gv)) <= 1e-12 * scale
    pscale = sum(abs(a) * E(-xi / T) for xi, a in f.terms) * sum(abs(a) * E(-xi / T) for xi, a in g.terms)
    assert abs(exp_eval(f * g, T) - fv * gv) <= 1e-12 * pscale


@given(sums, sums, st.floats(0.2, 4), st.floats(0.2, 4))
def test_alpha_group_laws(f, g, lam, mu):
    assert alpha_auto(f, 1.0) == f
    assert alpha_auto(alpha_auto(f, lam), mu).close_to(alpha_auto(f, lam * mu), 1e-12)
    assert alpha_auto(f * g, lam).close_to(alpha_auto(f, lam) * alpha_auto(g, lam), 1e-9)
    assert alpha_auto(f + g, lam).close_to(alpha_auto(f, lam) + alpha_auto(g, lam), 1e-9)
    assert exp_eval(alpha_auto(f, lam), 1.0) == pytest.approx(exp_eval(f, 1.0 / lam), rel=1e-9, abs=1e-12)


def test_alpha_fixed_points():
    assert alpha_auto(ExpSum.const(3.0), 2.7) == ExpSum.const(3.0)
    assert alpha_auto(e(1.0), 2.0) != e(1.0)


def test_residue_examples():
    f = ExpFraction(e(1, 2) + e(3))
    assert residue(f).logval == pytest.approx(-1)
    assert residue(ExpFraction.of(4.0)).logval == 0
    with pytest.raises(ValueError):
        residue(ExpFraction(e(1, -2)))


def test_residue_tilde_examples():
    f = ExpFraction(e(2, -3), e(1))
    assert residue_tilde(f).r == pytest.approx(-E(-1))
    g = ExpFraction(e(0.5, 2) + e(1), e(0.2, 3))
    assert residue_tilde(g).r == pytest.approx(residue(g).value)
    assert residue_tilde(ExpFraction(ExpSum.zero())).r == 0


pos_sums = st.lists(st.tuples(expo, st.floats(0.1, 5)), min_size=1, max_size=3).map(lambda t: ExpSum(tuple(t)))


@given(pos_sums, pos_sums, pos_sums, pos_sums)
def test_residue_multiplicative(a, b, c, d):
    f, g = ExpFraction(a, b), ExpFraction(c, d)
    assert residue(f * g).logval == pytest.approx(residue(f).logval + residue(g).logval, abs=1e-12)


def test_hyper_examples():
    assert hyper_add(TropicalReal(5), TropicalReal(2)).single == TropicalReal(5)
    assert hyper_add(TropicalReal(3), TropicalReal(3)).single == TropicalReal(3)
    h = hyper_add(TropicalReal(3), TropicalReal(-3))
    assert h.radius == 3 and h.contains(TropicalReal(-1.5)) and not h.contains(TropicalReal(3.5))
    assert hyper_mul(TropicalReal(-2), TropicalReal(3)).r == -6


def test_membership_examples():
    assert residue_tilde(ExpFraction(e(1) + e(2))).r == pytest.approx(E(-1))
    assert hyper_membership_check(ExpFraction(e(1)), ExpFraction(e(2)))
    f, g = ExpFraction(e(1)), ExpFraction(e(1, -1))
    assert residue_tilde(f + g).r == 0
    assert hyper_membership_check(f, g)


@given(sums, sums, sums, sums)
def test_membership_random(a, b, c, d):
    assert hyper_membership_check(ExpFraction(a, b), ExpFraction(c, d))


@given(sums, sums)
def test_membership_engineered_cancellation(a, b):
    # f and -f + (smaller terms) cancel the leading part
    f = ExpFraction(a, b)
    g = ExpFraction(-a + e(a.min_term[0] + 0.5, 1.0), b)
    assert hyper_membership_check(f, g)


def test_limit_check_examples():
    rep = limit_check(ExpFraction(e(1, 2) + e(3)))
    assert rep["limit"] == pytest.approx(E(-1))
    assert rep["rows"][-1]["abs_error"] < 1e-3
    const = limit_check(ExpFraction.of(3.0), range(4))
    for row in const["rows"]:
        assert row["value"] == pytest.approx(3.0 ** row["T"])
    n = 5
    ones = ExpSum(tuple((0, 1.0) for _ in range(n)))
    assert exp_eval(ones, 0.3) == n
    assert limit_check(ExpFraction(ones), [20])["rows"][0]["abs_error"] < 1e-5


@pytest.mark.filterwarnings("ignore::wittone.run_repr.ToleranceMergeWarning")
@given(st.floats(0, 3), st.floats(0, 3), st.floats(0.05, 5))
def test_bridge_to_deformed_addition(xi, eta, T):
    f = e(xi) + e(eta)
    ctx = DeformContext(T)
    lhs = as_maxplus(f, T)
    rhs = deform_add(MaxPlusElem(-xi), MaxPlusElem(-eta), ctx)
    assert lhs.logval == pytest.approx(rhs.logval, abs=1e-12)


def test_parse_and_text_roundtrip():
    f = parse_exp_fraction("2*exp(-1/T) + 1*exp(-3/T) / (1)")
    assert f == ExpFraction(e(1, 2) + e(3))
    g = parse_exp_fraction("-0.5 + 3*exp(-2.5/T) - 1e-1*exp(-4/T) / (2 - 1*exp(-1/T))")
    assert parse_exp_fraction(g.to_text()) == g
    assert ExpFraction.from_json(g.to_json()) == g
    exact = parse_exp_fraction("1*exp(-1/T) - 1*exp(-1/T) + 2", exact=True)
    assert exact.num == ExpSum.const(Fraction(2))


@pytest.mark.parametrize("bad", ["", "2*exp(", "1 +", "1 / 2", "1 / (0)", "1 / (1"])
def test_parse_errors(bad):
    with pytest.raises((ParseError, ZeroDivisionError)):
        parse_exp_fraction(bad)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        ExpFraction(e(1), ExpSum.zero())
