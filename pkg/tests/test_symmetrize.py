import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittone.char_one import DeformContext, MaxPlusElem, deform_add
from wittone.symmetrize import (
    SymPair,
    canonical,
    equivalent,
    pair_norm,
    quotient_norm,
    r_embed,
    seminorm,
    sym_add,
    sym_mul,
    sym_neg,
)

CTX = DeformContext(0.7)
ZERO = MaxPlusElem.zero()

comp = st.one_of(st.just(ZERO), st.floats(-3, 3).map(MaxPlusElem))
pairs = st.builds(lambda a, b: SymPair(a, b, CTX), comp, comp)


def close(u, v):
    return math.isclose(u, v, rel_tol=1e-10, abs_tol=1e-10)


def test_examples():
    p = SymPair(MaxPlusElem(0.4), MaxPlusElem(-0.2), CTX)
    assert canonical(sym_add(p, sym_neg(p))) == pytest.approx(0, abs=1e-12)
    a, c = MaxPlusElem(0.3), MaxPlusElem(-1.1)
    prod = sym_mul(SymPair(a, ZERO, CTX), SymPair(c, ZERO, CTX))
    assert prod.neg.is_zero() and prod.pos.logval == pytest.approx(a.logval + c.logval)
    x = MaxPlusElem(1.9)
    assert canonical(SymPair(x, x, CTX)) == 0


def test_canonical_of_rho_log_s():
    for s in (0.5, 1.0, 3.0, 17.0):
        assert canonical(SymPair(CTX.rho_power(math.log(s)), ZERO, CTX)) == pytest.approx(s, rel=1e-12)


def test_r_embed_basics():
    assert canonical(r_embed(0, CTX)) == 0
    assert canonical(r_embed(1, CTX)) == pytest.approx(1)
    assert r_embed(math.e, CTX).pos.logval == pytest.approx(CTX.T)
    assert canonical(r_embed(-2.5, CTX)) == pytest.approx(-2.5)


@given(st.floats(-50, 50), st.floats(-50, 50))
def test_r_embed_is_a_ring_map(s1, s2):
    assert close(canonical(sym_mul(r_embed(s1, CTX), r_embed(s2, CTX))), s1 * s2)
    assert close(canonical(sym_add(r_embed(s1, CTX), r_embed(s2, CTX))), s1 + s2)
    assert equivalent(sym_mul(r_embed(s1, CTX), r_embed(s2, CTX)), r_embed(s1 * s2, CTX), rel_tol=1e-10, abs_tol=1e-10)


@given(pairs, pairs, pairs)
def test_ring_laws_on_canonical_values(p, q, r):
    assert close(canonical(p + q), canonical(p) + canonical(q))
    assert close(canonical(p * q), canonical(p) * canonical(q))
    assert close(canonical((p + q) + r), canonical(p + (q + r)))
    assert close(canonical((p * q) * r), canonical(p * (q * r)))
    assert close(canonical(p * (q + r)), canonical(p * q + p * r))
    assert close(canonical(p - p), 0)


def test_rejects_degenerate_context():
    with pytest.raises(ValueError):
        SymPair(ZERO, ZERO, DeformContext(0))
    with pytest.raises(ValueError):
        sym_add(SymPair(ZERO, ZERO, CTX), SymPair(ZERO, ZERO, DeformContext(1)))


def test_quotient_norm_of_r():
    for s in np.concatenate([-np.logspace(-3, 3, 25), np.logspace(-3, 3, 25)]):
        assert quotient_norm(r_embed(float(s), CTX)) == pytest.approx(abs(s), rel=1e-12)


@given(st.floats(-5, 5), st.integers(1, 20))
def test_seminorm_power_law(a, n):
    x = MaxPlusElem(a)
    xn = MaxPlusElem(n * a)
    # exact in log space: log ||x^n|| = n log ||x||
    assert math.log(seminorm(xn, CTX)) == pytest.approx(n * math.log(seminorm(x, CTX)), rel=1e-12, abs=1e-12)


def _grid_infimum(p, steps=4001):
    # brute-force oracle: minimise chi(c) + chi(d) over (c, d) with chi(c) - chi(d) = v
    v = canonical(p)
    u = np.linspace(max(v, 0.0), max(v, 0.0) + 10, steps)
    return float(np.min(u + (u - v)))


@given(pairs)
def test_quotient_norm_against_grid(p):
    assert quotient_norm(p) == pytest.approx(_grid_infimum(p), abs=1e-9)
    assert pair_norm(p) >= quotient_norm(p) - 1e-12
    if p.pos.is_zero() or p.neg.is_zero():
        assert pair_norm(p) == pytest.approx(quotient_norm(p))


@given(pairs, pairs)
def test_pair_norm_submultiplicative(p, q):
    assert pair_norm(p * q) <= pair_norm(p) * pair_norm(q) * (1 + 1e-12) + 1e-12


def test_unit_norm():
    assert quotient_norm(r_embed(1, CTX)) == pytest.approx(1)


@pytest.mark.parametrize("T", [0.1, 1.0, 3.0])
def test_one_plus_x_gains_rho_beta(T):
    ctx = DeformContext(T)
    for n in range(0, 6):
        beta = math.log(math.exp(-n) + 1)
        for t in np.linspace(-8, n, 40):
            x = ctx.rho_power(float(t))
            lhs = deform_add(MaxPlusElem.one(), x, ctx)
            assert lhs.logval >= ctx.T * beta + x.logval - 1e-12
