"""Reference tables shipped as data files."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import sympy as sp

from .series_core import MultiPoly


def _load(name):
    return json.loads(resources.files("wittone.data").joinpath(name).read_text())


def sympy_to_multipoly(expr, gens) -> MultiPoly:
    poly = sp.Poly(sp.expand(expr), *gens)
    terms = {}
    for exps, c in poly.terms():
        if not c.is_integer:
            raise ValueError(f"non-integer coefficient {c}")
        terms[exps] = int(c)
    return MultiPoly(len(gens), terms)


@lru_cache(maxsize=None)
def witt_table() -> dict:
    """``{n: S_n}`` for n = 1..10 in two variables, expanded from the factored forms."""
    data = _load("witt_table.json")
    gens = sp.symbols(data["variables"])
    return {int(n): sympy_to_multipoly(sp.sympify(s), gens) for n, s in data["S"].items()}


@lru_cache(maxsize=None)
def asymptotic_table():
    """``(symbols b1..b5, {n: a_n})`` as sympy expressions."""
    data = _load("asymptotic_table.json")
    gens = sp.symbols(data["variables"])
    local = {str(g): g for g in gens}
    return gens, {int(n): sp.sympify(s, locals=local) for n, s in data["a"].items()}
