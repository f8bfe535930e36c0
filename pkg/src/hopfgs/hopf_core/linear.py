"""Sparse vectors as ``dict`` from basis keys to nonzero scalars."""

from __future__ import annotations

from fractions import Fraction

ONE = Fraction(1)
ZERO = Fraction(0)


def add_into(acc: dict, vec: dict, coef=ONE) -> dict:
    """``acc += coef * vec`` in place, dropping zeros."""
    if coef == 0:
        return acc
    for k, v in vec.items():
        nv = acc.get(k, ZERO) + coef * v
        if nv == 0:
            acc.pop(k, None)
        else:
            acc[k] = nv
    return acc


def add_term(acc: dict, key, coef) -> None:
    nv = acc.get(key, ZERO) + coef
    if nv == 0:
        acc.pop(key, None)
    else:
        acc[key] = nv


def scale(vec: dict, coef) -> dict:
    if coef == 0:
        return {}
    return {k: v * coef for k, v in vec.items()}


def combine(*pairs) -> dict:
    """``sum(c * v for c, v in pairs)``."""
    out: dict = {}
    for c, v in pairs:
        add_into(out, v, c)
    return out


def tensor(u: dict, v: dict) -> dict:
    """Tensor product of sparse vectors, keys concatenated as tuples."""
    out: dict = {}
    for a, x in u.items():
        for b, y in v.items():
            add_term(out, (a, b), x * y)
    return out


def map_keys(vec: dict, fn) -> dict:
    """Apply a linear map given on basis keys (``fn(key) -> dict``)."""
    out: dict = {}
    for k, c in vec.items():
        add_into(out, fn(k), c)
    return out
