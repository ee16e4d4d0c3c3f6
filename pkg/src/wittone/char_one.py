"""Characteristic-one semirings and the entropy-deformed addition.

Elements of R_max are stored by their natural logarithm (``-inf`` is the
zero).  With ``rho = e**T`` the deformed addition is the smoothed maximum
``T * log(e**(a/T) + e**(b/T))`` in log coordinates, and ``T = 0`` falls back
to the plain maximum.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np
from sympy import factorint

NEG_INF = -math.inf


@dataclass(frozen=True, order=False)
class MaxPlusElem:
    """An element of R_max, ``e**logval`` (``logval = -inf`` is the zero)."""

    logval: float

    def __post_init__(self):
        if math.isnan(self.logval) or self.logval == math.inf:
            raise ValueError(f"invalid logval {self.logval}")

    @classmethod
    def from_value(cls, x: float) -> "MaxPlusElem":
        if x < 0:
            raise ValueError("R_max has no negative elements")
        return cls(math.log(x) if x > 0 else NEG_INF)

    @classmethod
    def zero(cls):
        return cls(NEG_INF)

    @classmethod
    def one(cls):
        return cls(0.0)

    @property
    def value(self) -> float:
        return math.exp(self.logval)

    def is_zero(self):
        return self.logval == NEG_INF

    def __add__(self, other):
        return maxplus_add(self, other)

    def __mul__(self, other):
        return maxplus_mul(self, other)

    def __le__(self, other):
        return maxplus_leq(self, other)

    def __pow__(self, lam):
        return maxplus_theta(self, lam)


def maxplus_add(x: MaxPlusElem, y: MaxPlusElem) -> MaxPlusElem:
    return x if x.logval >= y.logval else y


def maxplus_mul(x: MaxPlusElem, y: MaxPlusElem) -> MaxPlusElem:
    if x.is_zero() or y.is_zero():
        return MaxPlusElem.zero()
    return MaxPlusElem(x.logval + y.logval)


def maxplus_leq(x: MaxPlusElem, y: MaxPlusElem) -> bool:
    """The canonical order: ``x <= y`` iff ``x + y == y``."""
    return x.logval <= y.logval


def maxplus_theta(x: MaxPlusElem, lam: float) -> MaxPlusElem:
    """Frobenius ``x -> x**lam`` for ``lam > 0``."""
    if lam <= 0:
        raise ValueError("theta needs lambda > 0")
    if x.is_zero():
        return x
    return MaxPlusElem(lam * x.logval)


@dataclass(frozen=True)
class DeformContext:
    """The deformation parameter ``T >= 0`` with ``rho = e**T``."""

    T: float

    def __post_init__(self):
        if not self.T >= 0 or math.isinf(self.T):
            raise ValueError(f"T must be a finite nonnegative real, got {self.T}")

    @property
    def rho(self) -> float:
        return math.exp(self.T)

    def rho_power(self, a: float) -> MaxPlusElem:
        """``rho**a`` as an element of R_max."""
        return MaxPlusElem(self.T * a)

    def theta(self, lam):
        """Context with rho replaced by ``theta_lam(rho)``."""
        return DeformContext(self.T * lam)


def entropy(alpha) -> float:
    """``-a log a - (1-a) log(1-a)``, with value 0 at the endpoints."""
    a = float(alpha)
    if not 0 <= a <= 1:
        raise ValueError(f"alpha={alpha} outside [0, 1]")
    if a in (0.0, 1.0):
        return 0.0
    return -a * math.log(a) - (1 - a) * math.log1p(-a)


def _weighted_term(T, alpha: Fraction, a, b):
    # log of w(alpha) x^alpha y^(1-alpha), with x^1 y^0 = x and x^0 y^1 = y
    if alpha == 1:
        return a
    if alpha == 0:
        return b
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    af = float(alpha)
    return T * entropy(alpha) + af * a + (1 - af) * b


def deform_partial_sum(x: MaxPlusElem, y: MaxPlusElem, n: int, ctx: DeformContext) -> MaxPlusElem:
    """``s(n) = sum_{alpha in (1/n)Z cap [0,1]} w(alpha) x^alpha y^(1-alpha)`` in R_max."""
    if n < 1:
        raise ValueError("n must be >= 1")
    best = max(_weighted_term(ctx.T, Fraction(k, n), x.logval, y.logval) for k in range(n + 1))
    return MaxPlusElem(best)


def sigma_n(a: float, b: float, n: int) -> float:
    """Exponent of ``rho`` in ``s(n)`` for ``x = rho**a, y = rho**b``; vectorized over the grid."""
    k = np.arange(n + 1)
    alpha = k / n
    with np.errstate(divide="ignore", invalid="ignore"):
        s = -alpha * np.log(alpha) - (1 - alpha) * np.log1p(-alpha)
    s[0] = s[-1] = 0.0
    return float(np.max(s + alpha * a + (1 - alpha) * b))


def _smooth_max(a, b, T):
    if a == NEG_INF:
        return b
    if b == NEG_INF:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + T * math.log1p(math.exp((lo - hi) / T))


def deform_add(x: MaxPlusElem, y: MaxPlusElem, ctx: DeformContext) -> MaxPlusElem:
    """``(x**(1/T) + y**(1/T))**T``, evaluated in log space; ``max`` when ``T == 0``."""
    if ctx.T == 0:
        return maxplus_add(x, y)
    return MaxPlusElem(_smooth_max(x.logval, y.logval, ctx.T))


def deform_sum(xs: Iterable[MaxPlusElem], ctx: DeformContext) -> MaxPlusElem:
    total = MaxPlusElem.zero()
    for x in xs:
        total = deform_add(total, x, ctx)
    return total


def rho_metric(x: MaxPlusElem, y: MaxPlusElem, ctx: DeformContext) -> float:
    """``inf{alpha : x <= y rho^alpha, y <= x rho^alpha}`` = ``|log x - log y| / T``."""
    if x.is_zero() or y.is_zero():
        raise ValueError("the rho-adic distance is undefined at 0")
    if ctx.T <= 0:
        raise ValueError("the rho-adic distance needs T > 0")
    return abs(x.logval - y.logval) / ctx.T


# ---------------------------------------------------------------------------
# functions on a finite point set


@dataclass(frozen=True, eq=False)
class FnSemiringElem:
    """A positive function on a finite point set, or the adjoined zero (``values is None``)."""

    values: np.ndarray | None
    size: int = field(default=0)

    def __post_init__(self):
        if self.values is not None:
            vals = np.asarray(self.values, dtype=float)
            if vals.ndim != 1 or np.any(~(vals > 0)) or np.any(~np.isfinite(vals)):
                raise ValueError("values must be finite and strictly positive")
            object.__setattr__(self, "values", vals)
            object.__setattr__(self, "size", len(vals))

    @classmethod
    def zero(cls, size):
        return cls(None, size)

    def is_zero(self):
        return self.values is None


def fn_semiring_deform_add(f: FnSemiringElem, g: FnSemiringElem, T) -> FnSemiringElem:
    """Pointwise ``(f**(1/T) + g**(1/T))**T``; points with ``T == 0`` take the max."""
    if f.size != g.size:
        raise ValueError(f"domain mismatch: {f.size} vs {g.size} points")
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    T = np.broadcast_to(np.asarray(T, dtype=float), (f.size,))
    if np.any(T < 0):
        raise ValueError("T(x) must be nonnegative")
    a, b = np.log(f.values), np.log(g.values)
    hi, lo = np.maximum(a, b), np.minimum(a, b)
    safe_T = np.where(T > 0, T, 1.0)
    smooth = hi + safe_T * np.log1p(np.exp((lo - hi) / safe_T))
    return FnSemiringElem(np.exp(np.where(T > 0, smooth, hi)))


def fn_semiring_partial_sum(f: FnSemiringElem, g: FnSemiringElem, T, n: int) -> FnSemiringElem:
    """Pointwise partial sum ``s(n)`` with per-point ``T``."""
    T = np.broadcast_to(np.asarray(T, dtype=float), (f.size,))
    out = [
        math.exp(deform_partial_sum(MaxPlusElem(math.log(u)), MaxPlusElem(math.log(v)), n, DeformContext(t)).logval)
        for u, v, t in zip(f.values, g.values, T)
    ]
    return FnSemiringElem(np.array(out))


# ---------------------------------------------------------------------------
# characters and the functional equations


@dataclass(frozen=True)
class ChiHom:
    """A homomorphism ``chi: Q_+^* -> R_+^*`` given by ``l(p) = log chi(1/p)``.

    Primes missing from ``prime_log_values`` get ``log_scale * log p`` when
    ``log_scale`` is set, and 0 otherwise.
    """

    prime_log_values: dict = field(default_factory=dict)
    log_scale: float | None = None

    @classmethod
    def entropy_solution(cls, lam=1.0, primes=None):
        """``l(p) = lam * log p`` for every prime; ``primes`` only fixes which ones are listed."""
        primes = primes if primes is not None else [2, 3, 5]
        return cls({p: lam * math.log(p) for p in primes}, log_scale=lam)

    def l(self, p) -> float:
        if p in self.prime_log_values:
            return self.prime_log_values[p]
        return self.log_scale * math.log(p) if self.log_scale is not None else 0.0

    def log_chi(self, q) -> float:
        """``log chi(q)`` for a positive rational ``q``."""
        q = Fraction(q)
        if q <= 0:
            raise ValueError("chi is defined on positive rationals")
        total = 0.0
        for p, e in factorint(q.numerator).items():
            total -= e * self.l(p)
        for p, e in factorint(q.denominator).items():
            total += e * self.l(p)
        return total

    def log_w(self, alpha) -> float:
        """``log w(alpha) = alpha log chi(alpha) + (1-alpha) log chi(1-alpha)``."""
        alpha = Fraction(alpha)
        if alpha in (0, 1):
            return 0.0
        if not 0 < alpha < 1:
            raise ValueError(f"alpha={alpha} outside (0, 1)")
        return float(alpha) * self.log_chi(alpha) + float(1 - alpha) * self.log_chi(1 - alpha)

    def __call__(self, alpha):
        return self.log_w(alpha)


def w_from_chi(chi: ChiHom, alpha) -> float:
    """``w(alpha) = chi(alpha)**alpha * chi(1-alpha)**(1-alpha)`` as a positive real."""
    return math.exp(chi.log_w(alpha))


LogW = Callable[[Fraction], float]


def _as_log_w(w) -> LogW:
    return w.log_w if isinstance(w, ChiHom) else w


def cocycle_residual(w, alpha, beta) -> float:
    log_w = _as_log_w(w)
    alpha, beta = Fraction(alpha), Fraction(beta)
    ab = alpha * beta
    lhs = log_w(alpha) + float(alpha) * log_w(beta)
    rhs = log_w(ab) + float(1 - ab) * log_w(alpha * (1 - beta) / (1 - ab))
    return abs(lhs - rhs)


def check_cocycle(w, samples) -> dict:
    """Max residuals of the associativity cocycle and of ``w(1-a) = w(a)``."""
    log_w = _as_log_w(w)
    samples = [(Fraction(a), Fraction(b)) for a, b in samples]
    cocycle = max((cocycle_residual(log_w, a, b) for a, b in samples), default=0.0)
    symmetry = max(
        (abs(log_w(a) - log_w(1 - a)) for pair in samples for a in pair),
        default=0.0,
    )
    return {"cocycle": cocycle, "symmetry": symmetry, "max": max(cocycle, symmetry), "samples": len(samples)}


def log_w_multi(w, alphas) -> float:
    """``log w(alpha_1..alpha_n)`` by the nested-ratio product; 0 for n = 1."""
    log_w = _as_log_w(w)
    alphas = [Fraction(a) for a in alphas]
    if sum(alphas) != 1:
        raise ValueError("alphas must sum to 1")
    total = 0.0
    rest = Fraction(1)
    for a in alphas[:-1]:
        total += float(rest) * log_w(a / rest)
        rest -= a
    return total


def check_symmetric_multi(w, alphas, partition=None) -> dict:
    """Residuals of permutation invariance and (optionally) the partition identity.

    ``partition`` is a list of index blocks covering ``range(len(alphas))``.
    """
    alphas = [Fraction(a) for a in alphas]
    values = [log_w_multi(w, [alphas[i] for i in perm]) for perm in itertools.permutations(range(len(alphas)))]
    out = {"permutation": max(values) - min(values)}
    if partition is not None:
        blocks = [list(b) for b in partition]
        if sorted(i for b in blocks for i in b) != list(range(len(alphas))):
            raise ValueError("partition must cover every index exactly once")
        betas = [sum(alphas[i] for i in b) for b in blocks]
        rhs = log_w_multi(w, betas)
        for b, beta in zip(blocks, betas):
            rhs += float(beta) * log_w_multi(w, [alphas[i] / beta for i in b])
        out["partition"] = abs(log_w_multi(w, alphas) - rhs)
    out["max"] = max(out.values())
    return out


def positivity_probe(chi: ChiHom, depth: int, threshold: float = -1e-9):
    """Search ``alpha = p1**n1 / p2**n2 < 1`` (``n_i <= depth``) for ``log w(alpha) < threshold``.

    Searches the listed primes, or 2, 3, 5 when fewer than two are listed.
    Returns the first witness as a Fraction, or None.
    """
    primes = sorted(chi.prime_log_values)
    if len(primes) < 2:
        primes = sorted(set(primes) | {2, 3, 5})
    for p1, p2 in itertools.permutations(primes, 2):
        for n2 in range(1, depth + 1):
            for n1 in range(0, depth + 1):
                alpha = Fraction(p1**n1, p2**n2)
                if alpha >= 1:
                    break
                if chi.log_w(alpha) < threshold:
                    return alpha
    return None
