"""Finite exponential sums ``sum a_j exp(-xi_j / T)``, their fractions, the
automorphisms ``alpha_lambda``, the residue maps to R_max and to the tropical
hyperfield, and the T -> 0 (dequantization) limit.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from .char_one import MaxPlusElem

MERGE_TOL = 1e-12


class ToleranceMergeWarning(UserWarning):
    """Two distinct exponents were merged because they lie within MERGE_TOL."""


def _sign(x):
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class ExpSum:
    """Canonical form: exponents strictly increasing, coefficients nonzero."""

    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _canonicalize(self.terms))

    @classmethod
    def e(cls, xi, a=1) -> "ExpSum":
        """``a * e_xi``; ``e_xi(T) = exp(-xi/T)`` is a Teichmüller element."""
        return cls(((xi, a),))

    @classmethod
    def const(cls, a) -> "ExpSum":
        return cls(((0, a),))

    @classmethod
    def zero(cls):
        return cls(())

    def is_zero(self):
        return not self.terms

    @property
    def min_term(self):
        if not self.terms:
            raise ValueError("the zero sum has no leading term")
        return self.terms[0]

    def __add__(self, other):
        return exp_add(self, _as_sum(other))

    __radd__ = __add__

    def __neg__(self):
        return ExpSum(tuple((xi, -a) for xi, a in self.terms))

    def __sub__(self, other):
        return exp_add(self, -_as_sum(other))

    def __mul__(self, other):
        return exp_mul(self, _as_sum(other))

    __rmul__ = __mul__

    def close_to(self, other, tol=1e-12) -> bool:
        if len(self.terms) != len(other.terms):
            return False
        return all(
            abs(x1 - x2) <= tol and math.isclose(a1, a2, rel_tol=tol, abs_tol=tol)
            for (x1, a1), (x2, a2) in zip(self.terms, other.terms)
        )

    def to_json(self):
        return {"terms": [{"xi": float(xi), "a": float(a)} for xi, a in self.terms]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple((t["xi"], t["a"]) for t in data["terms"]))

    def to_text(self):
        if not self.terms:
            return "0"
        out = []
        for i, (xi, a) in enumerate(self.terms):
            mag = abs(a)
            body = repr(float(mag)) if xi == 0 else f"{float(mag)!r}*exp(-{float(xi)!r}/T)"
            if i == 0:
                out.append(("-" if a < 0 else "") + body)
            else:
                out.append(("- " if a < 0 else "+ ") + body)
        return " ".join(out)

    def __str__(self):
        return self.to_text()


def _as_sum(x):
    if isinstance(x, ExpSum):
        return x
    if isinstance(x, Real):
        return ExpSum.const(x)
    raise TypeError(f"cannot treat {type(x).__name__} as an exponential sum")


def _canonicalize(terms):
    items = sorted(((xi, a) for xi, a in terms if a != 0), key=lambda t: t[0])
    merged = []
    for xi, a in items:
        if merged and abs(xi - merged[-1][0]) <= MERGE_TOL:
            if xi != merged[-1][0]:
                warnings.warn(f"exponents {merged[-1][0]!r} and {xi!r} merged", ToleranceMergeWarning, stacklevel=3)
            merged[-1][1] += a
        else:
            merged.append([xi, a])
    return tuple((xi, a) for xi, a in merged if a != 0)


def exp_add(f: ExpSum, g: ExpSum) -> ExpSum:
    return ExpSum(f.terms + g.terms)


def exp_mul(f: ExpSum, g: ExpSum) -> ExpSum:
    return ExpSum(tuple((x1 + x2, a1 * a2) for x1, a1 in f.terms for x2, a2 in g.terms))


def _log_abs_eval(f: ExpSum, T):
    # sign and log|f(T)|, factoring out the leading exponential
    xi0 = f.terms[0][0]
    s = math.fsum(float(a) * math.exp(-float(xi - xi0) / T) for xi, a in f.terms)
    if s == 0:
        return 0, -math.inf
    return _sign(s), -float(xi0) / T + math.log(abs(s))


def exp_eval(f: ExpSum, T: float) -> float:
    """``sum a_j exp(-xi_j / T)``."""
    if T <= 0:
        raise ValueError("evaluation needs T > 0")
    if f.is_zero():
        return 0.0
    xi0 = f.terms[0][0]
    s = math.fsum(float(a) * math.exp(-float(xi - xi0) / T) for xi, a in f.terms)
    return s * math.exp(-float(xi0) / T)


def alpha_auto(f, lam: float):
    """``chi(alpha_lam f)(T) = chi(f)(T/lam)``: scale every exponent by ``lam``."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if isinstance(f, ExpFraction):
        return ExpFraction(alpha_auto(f.num, lam), alpha_auto(f.den, lam))
    return ExpSum(tuple((lam * xi, a) for xi, a in f.terms))


def as_maxplus(f: ExpSum, T: float) -> MaxPlusElem:
    """The element of R_max at parameter T, i.e. ``chi_T(f)**T``; needs ``f(T) >= 0``."""
    if f.is_zero():
        return MaxPlusElem.zero()
    sign, log_abs = _log_abs_eval(f, T)
    if sign < 0:
        raise ValueError("negative value has no R_max reading")
    return MaxPlusElem(T * log_abs)


# ---------------------------------------------------------------------------
# fractions


@dataclass(frozen=True)
class ExpFraction:
    num: ExpSum
    den: ExpSum = ExpSum.const(1)

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("denominator reduces to zero")

    @classmethod
    def of(cls, x) -> "ExpFraction":
        return x if isinstance(x, ExpFraction) else cls(_as_sum(x))

    def __add__(self, other):
        other = ExpFraction.of(other)
        return ExpFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ExpFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-ExpFraction.of(other))

    def __mul__(self, other):
        other = ExpFraction.of(other)
        return ExpFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def is_zero(self):
        return self.num.is_zero()

    def evaluate(self, T):
        return exp_eval(self.num, T) / exp_eval(self.den, T)

    def signed_power(self, T):
        """``sign(chi) * |chi(f)(T)|**T``, computed without overflow."""
        if self.num.is_zero():
            return 0.0
        s1, l1 = _log_abs_eval(self.num, T)
        s2, l2 = _log_abs_eval(self.den, T)
        return s1 * s2 * math.exp(T * (l1 - l2))

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        if "terms" in data:
            return cls(ExpSum.from_json(data))
        return cls(ExpSum.from_json(data["num"]), ExpSum.from_json(data["den"]))

    def to_text(self):
        if self.den == ExpSum.const(1):
            return self.num.to_text()
        return f"{self.num.to_text()} / ({self.den.to_text()})"


def residue(f: ExpFraction) -> MaxPlusElem:
    """``lim_{T->0} chi(f)(T)**T = exp(-min xi + min eta)`` for positive coefficients."""
    f = ExpFraction.of(f)
    if any(a <= 0 for _, a in f.num.terms + f.den.terms):
        raise ValueError("residue needs strictly positive coefficients")
    if f.num.is_zero():
        raise ValueError("residue needs a nonempty numerator")
    return MaxPlusElem(-float(f.num.min_term[0]) + float(f.den.min_term[0]))


@dataclass(frozen=True)
class TropicalReal:
    r: float

    def __mul__(self, other):
        return hyper_mul(self, other)


@dataclass(frozen=True)
class HyperValue:
    """Either a single tropical real or the interval ``[-radius, radius]``."""

    single: TropicalReal | None = None
    radius: float | None = None

    def contains(self, x: TropicalReal, rel_tol=1e-9, abs_tol=0.0) -> bool:
        if self.single is not None:
            return math.isclose(x.r, self.single.r, rel_tol=rel_tol, abs_tol=abs_tol)
        return abs(x.r) <= self.radius * (1 + rel_tol) + abs_tol

    def to_json(self):
        if self.single is not None:
            return {"value": self.single.r}
        return {"interval": [-self.radius, self.radius]}


def residue_tilde(f: ExpFraction) -> TropicalReal:
    """``sign(a_j0 / b_k0) * exp(-xi_j0 + eta_k0)`` on the reduced fraction; 0 for f = 0.

    Reduction is the canonical merge of equal exponents with zero
    coefficients dropped, so the leading terms always have nonzero coefficients.
    """
    f = ExpFraction.of(f)
    if f.num.is_zero():
        return TropicalReal(0.0)
    xi0, a0 = f.num.min_term
    eta0, b0 = f.den.min_term
    return TropicalReal(_sign(a0) * _sign(b0) * math.exp(-float(xi0) + float(eta0)))


def hyper_add(a: TropicalReal, b: TropicalReal, rel_tol=0.0) -> HyperValue:
    """Viro's hyperaddition on the tropical reals."""
    x, y = a.r, b.r
    same_mag = math.isclose(abs(x), abs(y), rel_tol=rel_tol) if rel_tol else abs(x) == abs(y)
    if not same_mag:
        return HyperValue(single=a if abs(x) > abs(y) else b)
    if _sign(x) == _sign(y):
        return HyperValue(single=a)
    return HyperValue(radius=abs(x))


def hyper_mul(a: TropicalReal, b: TropicalReal) -> TropicalReal:
    return TropicalReal(a.r * b.r)


def hyper_membership_check(f, g, rel_tol=1e-9) -> bool:
    """Whether ``residue_tilde(f + g)`` lies in ``residue_tilde(f) hyperplus residue_tilde(g)``."""
    f, g = ExpFraction.of(f), ExpFraction.of(g)
    hv = hyper_add(residue_tilde(f), residue_tilde(g), rel_tol)
    return hv.contains(residue_tilde(f + g), rel_tol)


def limit_check(f, ks=range(0, 11)) -> dict:
    """Table of ``chi(f)(T)**T`` along ``T = 2**-k`` against ``residue_tilde(f)``.

    Errors are relative to the limit when it is nonzero.
    """
    f = ExpFraction.of(f)
    limit = residue_tilde(f).r
    rows = []
    for k in ks:
        T = 2.0**-k
        v = f.signed_power(T)
        abs_err = abs(v - limit)
        rows.append(
            {
                "k": k,
                "T": T,
                "value": v,
                "limit": limit,
                "abs_error": abs_err,
                "rel_error": abs_err / abs(limit) if limit else abs_err,
            }
        )
    return {"limit": limit, "rows": rows, "final_rel_error": rows[-1]["rel_error"] if rows else None}


# ---------------------------------------------------------------------------
# text grammar:  term := FLOAT "*exp(-" FLOAT "/T)" | FLOAT
#                sum := term (("+"|"-") term)*
#                fraction := sum ["/" "(" sum ")"]

_FLOAT = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(rf"\s*({_FLOAT})\s*(?:\*\s*exp\(\s*-\s*({_FLOAT})\s*/\s*T\s*\))?")
_OP = re.compile(r"\s*([+-])")


class ParseError(ValueError):
    pass


def _parse_sum(text, pos, exact):
    conv = Fraction if exact else float
    terms = []
    sign = 1
    while True:
        m = _TERM.match(text, pos)
        if not m:
            raise ParseError(f"expected a term at position {pos}: {text[pos:pos + 20]!r}")
        a = sign * conv(m.group(1))
        xi = conv(m.group(2)) if m.group(2) is not None else conv(0)
        terms.append((xi, a))
        pos = m.end()
        op = _OP.match(text, pos)
        if not op:
            return ExpSum(tuple(terms)), pos
        sign = 1 if op.group(1) == "+" else -1
        pos = op.end()


def parse_exp_fraction(text: str, exact: bool = False) -> ExpFraction:
    """Parse e.g. ``"2*exp(-1/T) + 1*exp(-3/T) / (1)"``; ``exact`` uses Fractions."""
    num, pos = _parse_sum(text, 0, exact)
    rest = text[pos:].strip()
    if not rest:
        return ExpFraction(num)
    m = re.match(r"/\s*\(", rest)
    if not m:
        raise ParseError(f"unexpected trailing input {rest!r}")
    inner = rest[m.end():]
    den, pos = _parse_sum(inner, 0, exact)
    tail = inner[pos:].strip()
    if tail != ")":
        raise ParseError(f"expected ')' but found {tail!r}")
    return ExpFraction(num, den)
