"""Universal polynomials S_n and the mod-p coefficient series w_p(alpha).

``S_n(x_1..x_k)`` are the integer polynomials defined by

    prod_j (1 - t x_j) = prod_{n >= 1} (1 - S_n t^n).

They are extracted one degree at a time from a residual series.  The
coefficients of ``S_{p^n}`` reduced mod p, indexed by the exponents divided
by ``p^n``, give the series ``w_p(alpha)`` in F_p[[T]].
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from sympy import divisors, isprime

from .series_core import MultiPoly, TruncSeries

# Largest S_{p^n} degree built by default, per variable count.  Coefficient
# bit-size grows linearly in the degree, so these keep tables desk-sized.
MAX_PRIME_POWER_DEGREE = {1: 10**6, 2: 625, 3: 64}
DEFAULT_MAX_PRIME_POWER_DEGREE = 16


def _check_prime(p):
    if not isinstance(p, int) or not isprime(p):
        raise ValueError(f"{p!r} is not a prime")


@total_ordering
@dataclass(frozen=True)
class ReducedFractionP:
    """A rational ``num / p**exp`` in [0, 1] with p-power denominator, in lowest terms."""

    p: int
    num: int
    exp: int

    def __post_init__(self):
        if self.exp < 0 or not 0 <= self.num <= self.p**self.exp:
            raise ValueError(f"{self.num}/{self.p}^{self.exp} is not in [0, 1]")
        if self.exp > 0 and self.num % self.p == 0:
            raise ValueError(f"{self.num}/{self.p}^{self.exp} is not reduced")

    @classmethod
    def from_fraction(cls, p, value) -> "ReducedFractionP":
        value = Fraction(value)
        if not 0 <= value <= 1:
            raise ValueError(f"{value} is outside [0, 1]")
        den = value.denominator
        exp = 0
        while den % p == 0:
            den //= p
            exp += 1
        if den != 1:
            raise ValueError(f"{value} does not have a power-of-{p} denominator")
        return cls(p, value.numerator, exp)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.p**self.exp)

    def numerator_at(self, n):
        """The integer ``k`` with ``k / p**n == self``, or None when n is too small."""
        if n < self.exp:
            return None
        return self.num * self.p ** (n - self.exp)

    def complement(self):
        return ReducedFractionP.from_fraction(self.p, 1 - self.value)

    def __lt__(self, other):
        return self.value < other.value

    def __str__(self):
        return str(self.value)


# ---------------------------------------------------------------------------
# S_n by residual extraction

_lock = threading.Lock()
_residual_cache: dict = {}


def _linear_product_series(k_vars, n_max):
    # coefficients of prod_j (1 - t x_j) up to t^{n_max}: (-1)^d e_d
    coeffs = [MultiPoly.const(k_vars, 1)]
    for d in range(1, n_max + 1):
        if d > k_vars:
            coeffs.append(MultiPoly(k_vars))
            continue
        terms = {}
        for idx in itertools.combinations(range(k_vars), d):
            e = [0] * k_vars
            for i in idx:
                e[i] = 1
            terms[tuple(e)] = (-1) ** d
        coeffs.append(MultiPoly(k_vars, terms))
    return coeffs


def compute_witt_polys(k_vars: int, n_max: int) -> list[MultiPoly]:
    """Return ``[S_1, ..., S_{n_max}]`` in ``k_vars`` variables.

    Keeps the residual ``R = prod(1 - t x_j) / prod_{m<n}(1 - S_m t^m)``;
    ``S_n`` is minus its t^n coefficient, after which R is divided by
    ``1 - S_n t^n`` (a sparse geometric series).
    """
    if k_vars < 1 or n_max < 1:
        raise ValueError("k_vars and n_max must be >= 1")
    with _lock:
        for (k, n), polys in _residual_cache.items():
            if k == k_vars and n >= n_max:
                return polys[:n_max]
    residual = _linear_product_series(k_vars, n_max)
    polys = []
    for n in range(1, n_max + 1):
        s_n = -residual[n]
        polys.append(s_n)
        if s_n.is_zero():
            continue
        # R_new[m] = R[m] + S_n * R_new[m - n], ascending in m
        for m in range(n, n_max + 1):
            prev = residual[m - n]
            if not prev.is_zero():
                residual[m] = residual[m] + s_n * prev
    with _lock:
        _residual_cache.setdefault((k_vars, n_max), polys)
    return list(polys)


def witt_poly(k_vars: int, n: int) -> MultiPoly:
    return compute_witt_polys(k_vars, n)[n - 1]


def power_sum(k_vars, n):
    return MultiPoly(k_vars, {tuple(n if j == i else 0 for j in range(k_vars)): 1 for i in range(k_vars)})


def verify_newton_identity(n: int, k_vars: int = 2) -> bool:
    """Check ``sum_j x_j^n == sum_{d | n} d * S_d^(n/d)`` exactly over Z."""
    polys = compute_witt_polys(k_vars, n)
    total = MultiPoly(k_vars)
    for d in divisors(n):
        total = total + d * polys[d - 1] ** (n // d)
    return total == power_sum(k_vars, n)


_pp_cache: dict = {}


def prime_power_witt_poly(k_vars: int, p: int, n: int, max_degree: int | None = None) -> MultiPoly:
    """``S_{p^n}`` in ``k_vars`` variables.

    Only the prime-power members are needed for w_p, and those satisfy
    ``sum x_j^{p^n} = sum_{i<=n} p^i S_{p^i}^{p^{n-i}}``, which determines
    them without computing the intermediate S_m.
    """
    _check_prime(p)
    limit = max_degree or MAX_PRIME_POWER_DEGREE.get(k_vars, DEFAULT_MAX_PRIME_POWER_DEGREE)
    if p**n > limit:
        raise ValueError(
            f"S_{p}^{n} in {k_vars} variables exceeds the degree limit {limit}; pass max_degree to override"
        )
    key = (k_vars, p, n)
    with _lock:
        if key in _pp_cache:
            return _pp_cache[key]
    if n == 0:
        poly = power_sum(k_vars, 1)
    else:
        acc = power_sum(k_vars, p**n)
        for i in range(n):
            acc = acc - p**i * prime_power_witt_poly(k_vars, p, i, max_degree) ** (p ** (n - i))
        poly = acc.exact_div(p**n)
    with _lock:
        _pp_cache.setdefault(key, poly)
    return poly


# ---------------------------------------------------------------------------
# coefficient tables and w_p series


@dataclass(frozen=True)
class WittCoeffTable:
    """Integer coefficients ``a(n, m_1..m_k)`` of ``S_{p^n}`` for ``n <= depth``."""

    p: int
    k_vars: int
    depth: int
    entries: dict

    @classmethod
    def build(cls, p, k_vars, depth, max_degree=None):
        entries = {}
        for n in range(depth + 1):
            for exps, c in prime_power_witt_poly(k_vars, p, n, max_degree).items():
                entries[(n, exps)] = c
        return cls(p, k_vars, depth, entries)

    def a(self, n, exps) -> int:
        if not 0 <= n <= self.depth:
            raise KeyError(f"level {n} outside table depth {self.depth}")
        return self.entries.get((n, tuple(exps)), 0)

    def to_json(self):
        return {
            "p": self.p,
            "k_vars": self.k_vars,
            "depth": self.depth,
            "entries": [
                {"n": n, "exps": list(e), "a": str(c)}
                for (n, e), c in sorted(self.entries.items())
            ],
        }


def _coerce_alpha(p, alpha):
    if isinstance(alpha, ReducedFractionP):
        if alpha.p != p:
            raise ValueError(f"alpha has prime {alpha.p}, expected {p}")
        return alpha
    return ReducedFractionP.from_fraction(p, alpha)


def wp_multi_series(p: int, alphas, order: int, max_degree=None) -> TruncSeries:
    """``w_p(alpha_1..alpha_k)`` modulo ``T**order`` in F_p[[T]]."""
    _check_prime(p)
    alphas = [_coerce_alpha(p, a) for a in alphas]
    if sum(a.value for a in alphas) != 1:
        raise ValueError("alphas must sum to 1")
    k = len(alphas)
    coeffs = []
    for n in range(order):
        exps = [a.numerator_at(n) for a in alphas]
        if any(e is None for e in exps):
            coeffs.append(0)
            continue
        coeffs.append(prime_power_witt_poly(k, p, n, max_degree).coeff(exps))
    return TruncSeries(coeffs, order, "Fp", p)


def wp_series(p: int, alpha, order: int, max_degree=None) -> TruncSeries:
    """``w_p(alpha)`` modulo ``T**order``: the two-variable case of :func:`wp_multi_series`."""
    alpha = _coerce_alpha(p, alpha)
    return wp_multi_series(p, [alpha, alpha.complement()], order, max_degree)


def wp_support(p: int, k_vars: int, order: int, max_degree=None) -> list[tuple]:
    """All tuples ``(alpha_1..alpha_k)`` whose w_p is nonzero mod ``T**order``."""
    _check_prime(p)
    found = set()
    for n in range(order):
        for exps, c in prime_power_witt_poly(k_vars, p, n, max_degree).items():
            if c % p:
                found.add(tuple(ReducedFractionP.from_fraction(p, Fraction(e, p**n)) for e in exps))
    return sorted(found, key=lambda t: tuple(a.value for a in t))


def wp_support_check(p: int, order: int, max_degree=None) -> list[ReducedFractionP]:
    """The finitely many alpha with ``w_p(alpha) != 0`` modulo ``T**order``."""
    support = [t[0] for t in wp_support(p, 2, order, max_degree)]
    bound = sum(p**n + 1 for n in range(order))
    assert len(support) <= bound
    return support


def wp_table_csv(p: int, order: int, max_degree=None) -> str:
    """CSV of nonzero w_p coefficients: alpha_num, alpha_den_exp, n, coeff_mod_p."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["alpha_num", "alpha_den_exp", "n", "coeff_mod_p"])
    for alpha in wp_support_check(p, order, max_degree):
        series = wp_series(p, alpha, order, max_degree)
        for n, c in enumerate(series.coeffs):
            if c:
                writer.writerow([alpha.num, alpha.exp, n, c])
    return buf.getvalue()


def coeff_table_json(p, k_vars, depth, max_degree=None) -> str:
    return json.dumps(WittCoeffTable.build(p, k_vars, depth, max_degree).to_json(), indent=1)
