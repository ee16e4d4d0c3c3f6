"""Truncated p-typical Witt vectors over F_q, Teichmüller lifts, and the
Teichmüller sum formula checked against Witt arithmetic and a Z/p^N oracle.

Witt addition and multiplication are computed from ghost components.  The
components are lifted to ``Z[g]/(f)`` where ``f`` is the field modulus with
coefficients lifted to ``[0, p)``; the ghost equations
``sum_{i<=n} p^i C_i^{p^(n-i)} = target_n`` are solved there with exact
integer division (a nonzero remainder is a hard error), and the result is
reduced mod p.  Since the Witt polynomials have integer coefficients this is
the same as evaluating them at the lifts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .finite_field import FqContext, FqElement, fractional_power
from .series_core import MultiPoly
from .witt_polys import wp_multi_series, wp_support

# ---------------------------------------------------------------------------
# the lift ring Z[g]/(f), elements are int tuples of length m


def _lift(x: FqElement):
    return tuple(x.coeffs)


def _ladd(a, b):
    return tuple(u + v for u, v in zip(a, b))


def _lsub(a, b):
    return tuple(u - v for u, v in zip(a, b))


def _lscale(a, c):
    return tuple(u * c for u in a)


def _lmul(a, b, modulus):
    m = len(a)
    prod = [0] * (2 * m - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                prod[i + j] += u * v
    for top in range(2 * m - 2, m - 1, -1):
        c = prod[top]
        if c:
            for i in range(m):
                prod[top - m + i] -= c * modulus[i]
        prod[top] = 0
    return tuple(prod[:m])


def _lpow(a, e, modulus):
    result = (1,) + (0,) * (len(a) - 1)
    while e:
        if e & 1:
            result = _lmul(result, a, modulus)
        e >>= 1
        if e:
            a = _lmul(a, a, modulus)
    return result


def _ldiv_exact(a, d):
    out = []
    for u in a:
        q, r = divmod(u, d)
        if r:
            raise ArithmeticError(f"ghost solve produced a non-integral component ({u}/{d})")
        out.append(q)
    return tuple(out)


def _ghost(lifts, p, modulus):
    ghosts = []
    for n in range(len(lifts)):
        acc = (0,) * len(lifts[0])
        for i in range(n + 1):
            acc = _ladd(acc, _lscale(_lpow(lifts[i], p ** (n - i), modulus), p**i))
        ghosts.append(acc)
    return ghosts


def _solve_ghost(targets, p, modulus):
    comps = []
    for n, g in enumerate(targets):
        acc = g
        for i in range(n):
            acc = _lsub(acc, _lscale(_lpow(comps[i], p ** (n - i), modulus), p**i))
        comps.append(_ldiv_exact(acc, p**n))
    return comps


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WittVector:
    """Length-N Witt vector ``(X_0, ..., X_{N-1})`` over F_q."""

    components: tuple

    def __post_init__(self):
        if not self.components:
            raise ValueError("Witt vectors need precision >= 1")
        ctx = self.components[0].ctx
        if any(c.ctx != ctx for c in self.components):
            raise ValueError("components from different fields")

    @classmethod
    def from_coeffs(cls, ctx: FqContext, comps):
        return cls(tuple(c if isinstance(c, FqElement) else ctx.element(c) for c in comps))

    @classmethod
    def zero(cls, ctx, N):
        return cls((ctx.zero(),) * N)

    @classmethod
    def one(cls, ctx, N):
        return teichmuller(ctx.one(), N)

    @property
    def ctx(self) -> FqContext:
        return self.components[0].ctx

    @property
    def precision(self):
        return len(self.components)

    def _check(self, other):
        if not isinstance(other, WittVector):
            raise TypeError("expected a WittVector")
        if other.ctx != self.ctx:
            raise ValueError("Witt vectors over different fields")
        if other.precision != self.precision:
            raise ValueError(f"precision mismatch: {self.precision} vs {other.precision}")

    def _lifts(self):
        return [_lift(c) for c in self.components]

    def _from_lifts(self, lifts):
        ctx = self.ctx
        return WittVector(tuple(ctx.element(list(c)) for c in lifts))

    def __add__(self, other):
        return witt_add(self, other)

    def __mul__(self, other):
        return witt_mul(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return witt_add(self, witt_neg(other))

    def ghost_lift(self):
        """Ghost components of the coordinate lifts, as elements of Z[g]/(f)."""
        return _ghost(self._lifts(), self.ctx.p, self.ctx.modulus)

    def to_json(self):
        return [c.to_json() for c in self.components]

    def __repr__(self):
        return "W(" + ", ".join(repr(c) for c in self.components) + ")"


def _binary_ghost_op(u, v, combine):
    u._check(v)
    ctx = u.ctx
    gu = _ghost(u._lifts(), ctx.p, ctx.modulus)
    gv = _ghost(v._lifts(), ctx.p, ctx.modulus)
    targets = [combine(a, b) for a, b in zip(gu, gv)]
    return u._from_lifts(_solve_ghost(targets, ctx.p, ctx.modulus))


def witt_add(u: WittVector, v: WittVector) -> WittVector:
    return _binary_ghost_op(u, v, _ladd)


def witt_mul(u: WittVector, v: WittVector) -> WittVector:
    modulus = u.ctx.modulus
    return _binary_ghost_op(u, v, lambda a, b: _lmul(a, b, modulus))


def witt_neg(u: WittVector) -> WittVector:
    ctx = u.ctx
    targets = [_lscale(g, -1) for g in _ghost(u._lifts(), ctx.p, ctx.modulus)]
    return u._from_lifts(_solve_ghost(targets, ctx.p, ctx.modulus))


def witt_sum(vectors) -> WittVector:
    vectors = list(vectors)
    total = vectors[0]
    for v in vectors[1:]:
        total = witt_add(total, v)
    return total


def teichmuller(x: FqElement, N: int) -> WittVector:
    """The multiplicative lift ``(x, 0, ..., 0)``."""
    return WittVector((x,) + (x.ctx.zero(),) * (N - 1))


def mul_by_p(u: WittVector, method: str = "fold") -> WittVector:
    """``p * u``, either as a p-fold Witt sum or by the shift ``(0, X_0^p, X_1^p, ...)``."""
    p = u.ctx.p
    if method == "fold":
        return witt_sum([u] * p)
    if method == "shift":
        return WittVector((u.ctx.zero(),) + tuple(c**p for c in u.components[:-1]))
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Teichmüller sums


def teich_sum_series(xs, N: int) -> list[FqElement]:
    """Coefficients ``s_0..s_{N-1}`` of ``sum_alpha w_p(alpha) prod x_j^alpha_j`` in F_q[[T]]."""
    xs = list(xs)
    if not xs:
        raise ValueError("need at least one element")
    ctx = xs[0].ctx
    s = [ctx.zero() for _ in range(N)]
    for alphas in wp_support(ctx.p, len(xs), N):
        series = wp_multi_series(ctx.p, alphas, N)
        mono = ctx.one()
        for x, a in zip(xs, alphas):
            mono = mono * fractional_power(x, a)
        if mono.is_zero():
            continue
        for n, c in enumerate(series.coeffs):
            if c:
                s[n] = s[n] + c * mono
    return s


def tilde_tau(series, N: int, p_mult: str = "fold") -> WittVector:
    """``sum_n tau(s_n) p^n`` assembled with Witt arithmetic."""
    terms = []
    for n, s_n in enumerate(series[:N]):
        term = teichmuller(s_n, N)
        for _ in range(n):
            term = mul_by_p(term, p_mult)
        terms.append(term)
    return witt_sum(terms)


def teich_sum_rhs(xs, N: int, p_mult: str = "fold") -> WittVector:
    return tilde_tau(teich_sum_series(xs, N), N, p_mult)


def verify_teich_sum(xs, N: int, p_mult: str = "fold") -> dict:
    """Compare ``sum tau(x_j)`` with the w_p expansion; returns a report dict."""
    xs = list(xs)
    lhs = witt_sum([teichmuller(x, N) for x in xs])
    rhs = teich_sum_rhs(xs, N, p_mult)
    return {
        "xs": [x.to_json() for x in xs],
        "lhs": lhs.to_json(),
        "rhs": rhs.to_json(),
        "equal": lhs == rhs,
    }


# ---------------------------------------------------------------------------
# Z/p^N oracle for q = p


@dataclass(frozen=True)
class PadicTrunc:
    """An integer modulo ``p**N``."""

    value: int
    p: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p**self.N)

    def _check(self, other):
        if (self.p, self.N) != (other.p, other.N):
            raise ValueError("PadicTrunc mismatch")

    def __add__(self, other):
        self._check(other)
        return PadicTrunc(self.value + other.value, self.p, self.N)

    def __mul__(self, other):
        self._check(other)
        return PadicTrunc(self.value * other.value, self.p, self.N)

    def __neg__(self):
        return PadicTrunc(-self.value, self.p, self.N)


def padic_teichmuller(d: int, p: int, N: int) -> PadicTrunc:
    """Teichmüller lift of the residue ``d`` in Z/p^N: iterate ``y -> y^p`` to its fixed point."""
    mod = p**N
    y = d % p
    while True:
        nxt = pow(y, p, mod)
        if nxt == y:
            return PadicTrunc(y, p, N)
        y = nxt


def _require_prime_field(ctx):
    if ctx.m != 1:
        raise ValueError("Z/p^N correspondence needs q = p")


def to_witt_coordinates(z: PadicTrunc, ctx: FqContext | None = None) -> WittVector:
    """Digits ``z = sum tau(x_n) p^n``, returned as Witt coordinates ``x_n^{p^n}``."""
    ctx = ctx or FqContext.get(z.p, 1)
    _require_prime_field(ctx)
    if ctx.p != z.p:
        raise ValueError("prime mismatch")
    p, N = z.p, z.N
    rest = z.value
    comps = []
    for n in range(N):
        digit = rest % p
        comps.append(ctx.element([digit]) ** (p**n))
        rest = (rest - padic_teichmuller(digit, p, N).value) // p
    return WittVector(tuple(comps))


def from_witt_coordinates(w: WittVector) -> PadicTrunc:
    ctx = w.ctx
    _require_prime_field(ctx)
    p, N = ctx.p, w.precision
    total = 0
    for n, X in enumerate(w.components):
        # x_n = X_n^{p^{-n}}, which is X_n itself on F_p
        total += padic_teichmuller(X.coeffs[0], p, N).value * p**n
    return PadicTrunc(total, p, N)


def embed(w: WittVector, target: FqContext) -> WittVector:
    """Image of a Witt vector over F_p under the inclusion F_p -> F_q."""
    _require_prime_field(w.ctx)
    if target.p != w.ctx.p:
        raise ValueError("prime mismatch")
    return WittVector(tuple(target.element([c.coeffs[0]]) for c in w.components))


# ---------------------------------------------------------------------------
# symbolic Witt polynomials (small p, N)


def witt_polynomials(p: int, N: int, op: str = "add") -> list[MultiPoly]:
    """Witt addition or multiplication polynomials in ``X_0..X_{N-1}, Y_0..Y_{N-1}``.

    Solved from the ghost equations over Z; any inexact division raises.
    """
    nv = 2 * N
    X = [MultiPoly.var(i, nv) for i in range(N)]
    Y = [MultiPoly.var(N + i, nv) for i in range(N)]

    def ghost(V, n):
        return sum((p**i * V[i] ** (p ** (n - i)) for i in range(n + 1)), MultiPoly(nv))

    polys = []
    for n in range(N):
        if op == "add":
            acc = ghost(X, n) + ghost(Y, n)
        elif op == "mul":
            acc = ghost(X, n) * ghost(Y, n)
        else:
            raise ValueError(f"unknown op {op!r}")
        for i in range(n):
            acc = acc - p**i * polys[i] ** (p ** (n - i))
        polys.append(acc.exact_div(p**n))
    return polys
