"""Finite fields F_{p^m} in a polynomial basis."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

# Irreducible moduli, coefficients low degree first, monic.
IRREDUCIBLE_MODULI = {
    (2, 1): (0, 1),
    (3, 1): (0, 1),
    (5, 1): (0, 1),
    (7, 1): (0, 1),
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
    (5, 2): (2, 0, 1),  # x^2 + 2
    (7, 2): (1, 0, 1),  # x^2 + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
}


def _poly_divmod_p(a, b, p):
    # a, b: coefficient lists low-first over F_p, b monic-able
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        if a[-1] % p == 0:
            a.pop()
            continue
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    return q, a


def is_irreducible(modulus, p) -> bool:
    """True iff the monic ``modulus`` has no monic factor of degree 1..m//2 over F_p."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p != 1:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            _, r = _poly_divmod_p(modulus, list(lower) + [1], p)
            if not any(c % p for c in r):
                return False
    return True


@dataclass(frozen=True)
class FqContext:
    """The field F_{p^m} = F_p[g] / (modulus)."""

    p: int
    m: int
    modulus: tuple

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if len(self.modulus) != self.m + 1:
            raise ValueError("modulus degree does not match m")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is not irreducible over F_{self.p}")

    @classmethod
    def get(cls, p: int, m: int = 1) -> "FqContext":
        try:
            return cls(p, m, IRREDUCIBLE_MODULI[(p, m)])
        except KeyError:
            raise ValueError(f"no shipped modulus for F_{p}^{m}; pass one explicitly") from None

    @property
    def q(self):
        return self.p**self.m

    def element(self, coeffs) -> "FqElement":
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        coeffs = [int(c) % self.p for c in coeffs]
        return FqElement(self, tuple(self._reduce(coeffs)))

    def zero(self):
        return FqElement(self, (0,) * self.m)

    def one(self):
        return self.element([1])

    def gen(self):
        """The class of ``g``; for m == 1 this is a root of the modulus, i.e. 0."""
        return self.element([0, 1])

    def elements(self):
        for coeffs in itertools.product(range(self.p), repeat=self.m):
            yield FqElement(self, tuple(coeffs))

    def random_element(self, rng):
        return FqElement(self, tuple(int(rng.integers(self.p)) for _ in range(self.m)))

    def _reduce(self, coeffs):
        coeffs = list(coeffs) + [0] * max(self.m - len(coeffs), 0)
        f = self.modulus
        for top in range(len(coeffs) - 1, self.m - 1, -1):
            c = coeffs[top] % self.p
            if c:
                for i in range(self.m):
                    coeffs[top - self.m + i] = (coeffs[top - self.m + i] - c * f[i]) % self.p
            coeffs[top] = 0
        return [c % self.p for c in coeffs[: self.m]]

    def __repr__(self):
        return f"FqContext(F_{self.p}^{self.m})" if self.m > 1 else f"FqContext(F_{self.p})"


@dataclass(frozen=True)
class FqElement:
    ctx: FqContext
    coeffs: tuple

    def _coerce(self, other):
        if isinstance(other, FqElement):
            if other.ctx != self.ctx:
                raise ValueError("elements from different fields")
            return other
        if isinstance(other, int):
            return self.ctx.element([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FqElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FqElement(self.ctx, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self.ctx.m
        prod = [0] * (2 * m - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return FqElement(self.ctx, tuple(self.ctx._reduce(prod)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.ctx.q - 2)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def is_zero(self):
        return not any(self.coeffs)

    def is_one(self):
        return self == self.ctx.one()

    def frobenius(self, n: int = 1):
        return self ** (self.ctx.p ** (n % self.ctx.m))

    def __repr__(self):
        if self.ctx.m == 1:
            return str(self.coeffs[0])
        terms = [
            (str(c) if i == 0 else ("g" if i == 1 else f"g^{i}") if c == 1 else f"{c}*g" + (f"^{i}" if i > 1 else ""))
            for i, c in enumerate(self.coeffs)
            if c
        ]
        return " + ".join(terms) if terms else "0"

    def to_json(self):
        return list(self.coeffs)


def frob_inverse(x: FqElement, n: int) -> FqElement:
    """The unique ``y`` with ``y**(p**n) == x``.

    Frobenius has order m on F_{p^m}, so the inverse of its n-th power is
    ``y -> y**(p**(m*n - n))``; the exponent is reduced modulo m.
    """
    m = x.ctx.m
    return x ** (x.ctx.p ** ((m * n - n) % m))


def fractional_power(x: FqElement, alpha) -> FqElement:
    """``x**alpha`` for ``alpha = k / p**n``; ``x**0`` is 1 (including for x = 0)."""
    from .witt_polys import ReducedFractionP

    if not isinstance(alpha, ReducedFractionP):
        alpha = ReducedFractionP.from_fraction(x.ctx.p, Fraction(alpha))
    if alpha.num == 0:
        return x.ctx.one()
    return frob_inverse(x, alpha.exp) ** alpha.num
