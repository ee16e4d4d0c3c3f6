"""Symmetrization of the deformed semiring (R_max, +_w) into a real algebra.

Pairs ``(pos, neg)`` add and multiply by the group-semiring rules.  Because
``x -> x**(1/T)`` identifies (R_max, +_w, *) with (R_+, +, *), a pair's
class is determined by the real number ``chi_T(pos) - chi_T(neg)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .char_one import DeformContext, MaxPlusElem, deform_add, maxplus_mul


def chi_T(x: MaxPlusElem, ctx: DeformContext) -> float:
    if ctx.T <= 0:
        raise ValueError("chi_T needs T > 0")
    return 0.0 if x.is_zero() else math.exp(x.logval / ctx.T)


@dataclass(frozen=True)
class SymPair:
    pos: MaxPlusElem
    neg: MaxPlusElem
    ctx: DeformContext

    def __post_init__(self):
        if self.ctx.T <= 0:
            raise ValueError("symmetrization degenerates at T = 0 (rho = 1)")

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ValueError("pairs in different deformation contexts")

    def __add__(self, other):
        return sym_add(self, other)

    def __mul__(self, other):
        return sym_mul(self, other)

    def __neg__(self):
        return sym_neg(self)

    def __sub__(self, other):
        return sym_add(self, sym_neg(other))


def sym_add(p: SymPair, q: SymPair) -> SymPair:
    p._check(q)
    return SymPair(deform_add(p.pos, q.pos, p.ctx), deform_add(p.neg, q.neg, p.ctx), p.ctx)


def sym_mul(p: SymPair, q: SymPair) -> SymPair:
    p._check(q)
    ctx = p.ctx
    pos = deform_add(maxplus_mul(p.pos, q.pos), maxplus_mul(p.neg, q.neg), ctx)
    neg = deform_add(maxplus_mul(p.pos, q.neg), maxplus_mul(p.neg, q.pos), ctx)
    return SymPair(pos, neg, ctx)


def sym_neg(p: SymPair) -> SymPair:
    return SymPair(p.neg, p.pos, p.ctx)


def canonical(p: SymPair) -> float:
    """The real number representing the class of ``p``."""
    return chi_T(p.pos, p.ctx) - chi_T(p.neg, p.ctx)


def equivalent(p: SymPair, q: SymPair, rel_tol=1e-12, abs_tol=1e-12) -> bool:
    return math.isclose(canonical(p), canonical(q), rel_tol=rel_tol, abs_tol=abs_tol)


def r_embed(s: float, ctx: DeformContext) -> SymPair:
    """``r(s) = (rho**log s, 0)`` for ``s >= 0`` and ``(0, rho**log|s|)`` for ``s < 0``."""
    zero = MaxPlusElem.zero()
    if s == 0:
        return SymPair(zero, zero, ctx)
    elem = ctx.rho_power(math.log(abs(s)))
    return SymPair(elem, zero, ctx) if s > 0 else SymPair(zero, elem, ctx)


def log_seminorm(x: MaxPlusElem, ctx: DeformContext) -> float:
    """``log ||x|| = logval / T``; ``-inf`` for the zero."""
    if ctx.T <= 0:
        raise ValueError("the seminorm needs T > 0")
    return x.logval / ctx.T


def seminorm(x: MaxPlusElem, ctx: DeformContext) -> float:
    """``inf{lam : x <= rho**log lam}``, which is ``chi_T(x)``."""
    return chi_T(x, ctx)


def pair_norm(p: SymPair) -> float:
    return seminorm(p.pos, p.ctx) + seminorm(p.neg, p.ctx)


def quotient_norm(p: SymPair) -> float:
    """Infimum of ``pair_norm`` over the class of ``p``, attained at ``|canonical(p)|``."""
    return abs(canonical(p))
