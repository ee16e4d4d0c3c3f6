"""Exact arithmetic kernel: sparse integer polynomials and truncated power series.

Polynomials are stored as a map from exponent tuples to nonzero Python ints.
Truncated series carry their coefficient ring ("Z", "Q" or "Fp") and their
truncation order; arithmetic never silently extends the order.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping


class MultiPoly:
    """Sparse multivariate polynomial with integer coefficients."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have length {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.nvars = nvars
        self._terms = clean

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i, nvars):
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already pruned and well-formed
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        return obj

    # inspection -------------------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exps) -> int:
        return self._terms.get(tuple(exps), 0)

    def is_zero(self):
        return not self._terms

    def degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, d=None):
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.to_str()!r})"

    def to_str(self, names=None):
        if not self._terms:
            return "0"
        names = names or (["x", "y", "z"] if self.nvars <= 3 else [f"x{i}" for i in range(self.nvars)])
        parts = []
        for exps in sorted(self._terms, reverse=True):
            c = self._terms[exps]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic -------------------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            return MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return MultiPoly(self.nvars)
            return MultiPoly._raw(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._check(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, d: int) -> "MultiPoly":
        """Divide every coefficient by ``d``; raises if any division is inexact."""
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError(f"coefficient {c} of {e} not divisible by {d}")
            out[e] = q
        return MultiPoly._raw(self.nvars, out)

    def mod(self, p: int) -> "MultiPoly":
        out = {e: c % p for e, c in self._terms.items() if c % p}
        return MultiPoly._raw(self.nvars, out)

    def evaluate(self, values):
        """Evaluate at ``values``; works for any commutative ring element type."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        total = 0
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(values, exps):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def permute(self, perm) -> "MultiPoly":
        """Rename variable ``i`` to ``perm[i]``."""
        out = {}
        for exps, c in self._terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exps):
                new[perm[i]] = e
            out[tuple(new)] = c
        return MultiPoly._raw(self.nvars, out)

    # serialization ----------------------------------------------------------

    def to_json(self):
        return {
            "nvars": self.nvars,
            "terms": [
                {"exps": list(e), "coeff": str(self._terms[e])}
                for e in sorted(self._terms)
            ],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for t in data["terms"]:
            e = tuple(t["exps"])
            terms[e] = terms.get(e, 0) + int(t["coeff"])
        return cls(data["nvars"], terms)


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact product of two polynomials in the same number of variables."""
    if p.nvars != q.nvars:
        raise ValueError(f"nvars mismatch: {p.nvars} vs {q.nvars}")
    if len(p) > len(q):
        p, q = q, p
    out: dict = {}
    qitems = list(q._terms.items())
    for e1, c1 in p._terms.items():
        for e2, c2 in qitems:
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return MultiPoly._raw(p.nvars, {e: c for e, c in out.items() if c})


# ---------------------------------------------------------------------------
# truncated univariate series

RINGS = ("Z", "Q", "Fp")


class TruncSeries:
    """Power series in T truncated at ``T**order`` over Z, Q or F_p.

    Coefficients over Z are ints, over Q Fractions, over F_p ints in ``[0, p)``.
    """

    __slots__ = ("ring", "p", "order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None, ring: str = "Z", p: int | None = None):
        if ring not in RINGS:
            raise ValueError(f"unknown ring {ring!r}")
        if ring == "Fp" and (p is None or p < 2):
            raise ValueError("ring Fp needs a prime p")
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs)
        if order < 0:
            raise ValueError("order must be nonnegative")
        coeffs = coeffs[:order] + [0] * (order - len(coeffs))
        self.ring = ring
        self.p = p if ring == "Fp" else None
        self.order = order
        self.coeffs = tuple(self._norm(c) for c in coeffs)

    def _norm(self, c):
        if self.ring == "Z":
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integer coefficient {c} over Z")
                return c.numerator
            return int(c)
        if self.ring == "Q":
            return Fraction(c)
        if isinstance(c, Fraction):
            return int(c.numerator * pow(c.denominator, -1, self.p)) % self.p
        return int(c) % self.p

    def _like(self, coeffs, order=None):
        return TruncSeries(coeffs, self.order if order is None else order, self.ring, self.p)

    @classmethod
    def one(cls, order, ring="Z", p=None):
        return cls([1], order, ring, p)

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            raise TypeError("expected a TruncSeries")
        if (self.ring, self.p) != (other.ring, other.p):
            raise ValueError(f"ring mismatch: {self.ring_name} vs {other.ring_name}")

    @property
    def ring_name(self):
        return f"F_{self.p}" if self.ring == "Fp" else self.ring

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.ring, self.p, self.order, self.coeffs) == (other.ring, other.p, other.order, other.coeffs)

    def __hash__(self):
        return hash((self.ring, self.p, self.order, self.coeffs))

    def __repr__(self):
        return f"TruncSeries({list(self.coeffs)}, order={self.order}, ring={self.ring_name})"

    def __getitem__(self, n):
        return self.coeffs[n]

    def is_zero(self):
        return not any(self.coeffs)

    def valuation(self):
        """Index of the first nonzero coefficient, or ``order`` for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.order

    def __add__(self, other):
        self._check(other)
        n = min(self.order, other.order)
        return self._like([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        return self._like([c * other for c in self.coeffs])

    __rmul__ = __mul__

    def truncate(self, order):
        return self._like(self.coeffs[:order], min(order, self.order))

    def to_json(self):
        out = {"ring": self.ring, "order": self.order, "coeffs": [str(c) for c in self.coeffs]}
        if self.ring == "Fp":
            out["p"] = self.p
        return out

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        ring = data["ring"]
        conv = Fraction if ring == "Q" else int
        return cls([conv(c) for c in data["coeffs"]], data["order"], ring, data.get("p"))


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Product modulo ``T**min(a.order, b.order)``."""
    a._check(b)
    n = min(a.order, b.order)
    out = [0] * n
    for i, ai in enumerate(a.coeffs[:n]):
        if not ai:
            continue
        for j in range(n - i):
            bj = b.coeffs[j]
            if bj:
                out[i + j] += ai * bj
    return a._like(out, n)


def series_inverse(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse modulo ``T**order``; the constant term must be a unit."""
    if a.order == 0:
        return a
    c0 = a.coeffs[0]
    if a.ring == "Z":
        if c0 not in (1, -1):
            raise ZeroDivisionError(f"constant term {c0} is not a unit in Z")
        inv0 = c0
    elif a.ring == "Q":
        if c0 == 0:
            raise ZeroDivisionError("constant term is zero")
        inv0 = 1 / c0
    else:
        if c0 % a.p == 0:
            raise ZeroDivisionError(f"constant term is zero in F_{a.p}")
        inv0 = pow(c0, -1, a.p)
    out = [inv0]
    for n in range(1, a.order):
        s = sum(a.coeffs[k] * out[n - k] for k in range(1, n + 1))
        out.append(-s * inv0)
    return a._like(out)
