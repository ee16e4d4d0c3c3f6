import math
import random
from fractions import Fraction

import pytest
import sympy as sp

from wittone.asymptotics import (
    borel_sum_eval,
    borel_transform,
    expand_general,
    invert_expansion,
    invert_general,
    inverse_borel,
    laplace_quadrature_check,
    normalize_a0,
    series_exp,
    series_log,
    t_power_expand,
)
from wittone.fixtures import asymptotic_table


def _random_b(rng, n):
    return [Fraction(1)] + [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n - 1)]


def test_borel_examples():
    phi = borel_transform([1] * 8)
    assert phi == [Fraction(1, math.factorial(n)) for n in range(7)]
    assert borel_transform([3, 0, 0, 0]) == [0, 0, 0]
    b = [Fraction(2), Fraction(1, 3), Fraction(-5, 7), Fraction(4)]
    assert inverse_borel(b[0], borel_transform(b)) == b


def test_log_exp_inverse():
    rng = random.Random(0)
    g = _random_b(rng, 7)
    assert series_exp(series_log(g)) == g


def test_expand_examples():
    a = t_power_expand([1, Fraction(2), Fraction(3)], 4)
    assert a[:2] == [1, 0]
    assert a[2] == 2
    assert a[3] == -Fraction(4, 2) + 3
    assert t_power_expand([1, 0, 0, 0], 6) == [1, 0, 0, 0, 0, 0]


def test_table_matches_symbolically():
    gens, table = asymptotic_table()
    a = t_power_expand([sp.Integer(1)] + list(gens), 7)
    for n in range(1, 7):
        assert sp.expand(a[n] - table[n]) == 0


def test_invert_examples():
    assert invert_expansion([1, 0, Fraction(5, 2), 0])[1] == Fraction(5, 2)
    assert invert_expansion([1, 0, 0, 0, 0]) == [1, 0, 0, 0]
    rng = random.Random(1)
    for _ in range(100):
        b = _random_b(rng, 7)
        assert invert_expansion(t_power_expand(b, 8)) == b
    with pytest.raises(ValueError):
        invert_expansion([1, 1, 0])


def test_normalize_a0():
    assert normalize_a0(1) == (1.0, 0.0)
    assert normalize_a0(math.exp(-2))[1] == pytest.approx(2)
    with pytest.raises(ValueError):
        normalize_a0(0)


def test_general_target_roundtrip():
    a = [Fraction(3), Fraction(1, 2), Fraction(-2), Fraction(7, 5), Fraction(1, 9), Fraction(0)]
    a0, c, b, _ = invert_general(a)
    assert expand_general(a0, c, b, len(a)) == a


@pytest.mark.parametrize("n,T,exact", [(0, 1.0, 1.0), (3, 0.5, 3 / 8), (10, 1.0, math.factorial(10))])
def test_laplace(n, T, exact):
    assert math.factorial(n) * T ** (n + 1) == pytest.approx(exact)
    assert laplace_quadrature_check(n, T) < 1e-8


def test_laplace_range():
    with pytest.raises(ValueError):
        laplace_quadrature_check(13, 1.0)


def test_borel_sum_examples():
    b = [1] * 16
    assert borel_sum_eval(b[0], borel_transform(b), 0.25) == pytest.approx(4 / 3, abs=1e-6)
    assert borel_sum_eval(2.5, [], 0.7) == 2.5
    assert borel_sum_eval(1, borel_transform([1, 1, 0, 0]), 0.3) == pytest.approx(1.3, abs=1e-8)
