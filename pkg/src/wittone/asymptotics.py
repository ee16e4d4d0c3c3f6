"""Borel transforms and the expansion ``g(T)**T ~ sum a_n T**n``.

Coefficient algebra is exact (Fractions, or anything closed under +, * and
division by ints, e.g. sympy symbols); only the quadrature checks use floats.
"""

from __future__ import annotations

import math
from fractions import Fraction

from scipy import integrate


def _coerce(coeffs):
    return [c if not isinstance(c, (int, str)) else Fraction(c) for c in coeffs]


def borel_transform(b):
    """``phi_n = b_{n+1} / n!``."""
    b = _coerce(b)
    return [b[n + 1] / math.factorial(n) for n in range(len(b) - 1)]


def inverse_borel(b0, phi):
    """Recover ``(b_0, b_1, ...)`` from ``b_0`` and the Borel coefficients."""
    return [Fraction(b0)] + [c * math.factorial(n) for n, c in enumerate(_coerce(phi))]


def series_log(g):
    """Formal ``log g`` for ``g_0 = 1``, via ``n L_n = n g_n - sum_{k<n} k L_k g_{n-k}``."""
    g = _coerce(g)
    if g[0] != 1:
        raise ValueError("series_log needs constant term 1")
    L = [0 * g[0]]
    for n in range(1, len(g)):
        acc = n * g[n]
        for k in range(1, n):
            acc = acc - k * L[k] * g[n - k]
        L.append(acc / n)
    return L


def series_exp(h):
    """Formal ``exp h`` for ``h_0 = 0``, via ``n E_n = sum_{k=1}^n k h_k E_{n-k}``."""
    h = _coerce(h)
    if h and h[0] != 0:
        raise ValueError("series_exp needs constant term 0")
    E = [Fraction(1)]
    for n in range(1, len(h)):
        acc = 0
        for k in range(1, n + 1):
            acc = acc + k * h[k] * E[n - k]
        E.append(acc / n)
    return E


def t_power_expand(b, N: int):
    """Coefficients ``a_0..a_{N-1}`` of ``g(T)**T = exp(T log g(T))`` with ``g = sum b_n T**n``.

    Only ``b_0..b_{N-2}`` influence the result; missing b's are taken as 0.
    """
    b = _coerce(b)
    if b[0] != 1:
        raise ValueError("t_power_expand needs b_0 = 1")
    b = (b + [Fraction(0)] * N)[: max(N - 1, 1)]
    L = series_log(b)
    h = ([Fraction(0)] + L)[:N]
    h += [Fraction(0)] * (N - len(h))
    return series_exp(h)


def invert_expansion(a):
    """The ``b_0..b_{N-2}`` (``b_0 = 1``) with ``t_power_expand(b, N) == a``.

    ``a_{n+1} = b_n + (polynomial in b_1..b_{n-1})``, so the solve is triangular.
    """
    a = _coerce(a)
    N = len(a)
    if N < 2 or a[0] != 1 or a[1] != 0:
        raise ValueError("invert_expansion needs a_0 = 1 and a_1 = 0")
    b = [Fraction(1)] + [Fraction(0)] * (N - 2)
    for n in range(1, N - 1):
        trial = t_power_expand(b, n + 2)
        b[n] = a[n + 1] - trial[n + 1]
    assert t_power_expand(b, N) == a, "triangular solve did not reproduce the prefix"
    return b


def normalize_a0(a0, a1=0):
    """Prefactor ``a * exp(-xi0 / T)`` reducing a target with leading ``a0 > 0`` to ``a_0 = 1``.

    Multiplying g by it multiplies ``g**T`` by ``a**T * exp(-xi0)``, so
    ``xi0 = -log a0`` and ``a = exp(a1 / a0)`` also removes the linear term.
    """
    if a0 <= 0:
        raise ValueError("a0 must be positive")
    return math.exp(a1 / a0), -math.log(a0)


def invert_general(a):
    """Split a target ``(a_0 > 0, a_1, ...)`` into ``(a0, c = a1/a0, b)``.

    ``g**T`` for ``g = exp(c) * exp(-xi0/T) * sum b_n T**n`` expands to ``a``;
    ``exp(c T) = sum (cT)^k / k!`` keeps everything rational.
    """
    a = _coerce(a)
    a0 = a[0]
    if a0 <= 0:
        raise ValueError("a_0 must be positive")
    c = a[1] / a0
    N = len(a)
    exp_ct = [c**k / math.factorial(k) for k in range(N)]
    # a / (a0 * exp(cT)) = a * exp(-cT) / a0
    inv = [(-c) ** k / math.factorial(k) for k in range(N)]
    core = [sum(a[i] * inv[n - i] for i in range(n + 1)) / a0 for n in range(N)]
    b = invert_expansion(core)
    return a0, c, b, exp_ct


def expand_general(a0, c, b, N):
    """Inverse of :func:`invert_general`."""
    core = t_power_expand(b, N)
    exp_ct = [Fraction(c) ** k / math.factorial(k) for k in range(N)]
    return [a0 * sum(core[i] * exp_ct[n - i] for i in range(n + 1)) for n in range(N)]


def laplace_quadrature_check(n: int, T: float) -> float:
    """Relative error of ``int_0^inf exp(-xi/T) xi^n dxi`` against ``n! T^(n+1)``."""
    if not 0 <= n <= 12 or not 0.05 <= T <= 2:
        raise ValueError("supported range is n <= 12, 0.05 <= T <= 2")
    exact = math.factorial(n) * T ** (n + 1)
    # split at the peak xi = nT so the adaptive rule sees the bulk
    peak = max(n * T, T)
    head, _ = integrate.quad(lambda x: math.exp(-x / T) * x**n, 0, peak, epsabs=0, epsrel=1e-13, limit=200)
    tail, _ = integrate.quad(lambda x: math.exp(-x / T) * x**n, peak, math.inf, epsabs=0, epsrel=1e-13, limit=200)
    return abs(head + tail - exact) / exact


def borel_sum_eval(b0, phi, T: float, cutoff: float | None = None, tol: float = 1e-12) -> float:
    """``b0 + int_0^cutoff exp(-xi/T) phi(xi) dxi`` with ``phi`` the truncated Borel series.

    The default cutoff ``T (log(1/tol) + 20)`` bounds the tail for ``phi`` of
    moderate growth; pass ``cutoff`` explicitly otherwise.
    """
    coeffs = [float(c) for c in phi]
    if cutoff is None:
        cutoff = T * (math.log(1 / tol) + 20)

    def integrand(x):
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * x + c
        return math.exp(-x / T) * acc

    if not coeffs:
        return float(b0)
    val, _ = integrate.quad(integrand, 0, cutoff, epsabs=0, epsrel=1e-12, limit=400)
    return float(b0) + val
