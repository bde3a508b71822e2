"""Lossless text forms for exact matrices, matrix polynomials and family documents."""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from ._backend import Q, to_str
from .matpoly import MatPoly


def parse_rational(value):
    """Exact rational from ``"p/q"``, an integer, or a decimal string.

    Binary floats are rejected because they rarely mean the rational the
    user typed.
    """
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Q(value)
    if isinstance(value, float):
        if value.is_integer():
            return Q(int(value))
        raise ValueError(f"use a string such as '3/2' for non-integer values, got {value!r}")
    if isinstance(value, str):
        return Q(Fraction(value.strip()))
    return Q(value)


def matrix_to_json(m: np.ndarray) -> list:
    return [[to_str(v) for v in row] for row in m]


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[parse_rational(v) for v in row] for row in rows], dtype=object)


def poly_to_json(p: MatPoly) -> list:
    """Coefficient matrices, lowest power first; the zero polynomial keeps one zero matrix."""
    return [matrix_to_json(c) for c in (p.coeffs or [p.coeff(0)])]


def poly_from_json(coeffs) -> MatPoly:
    mats = [matrix_from_json(c) for c in coeffs]
    if not mats:
        raise ValueError("a polynomial needs at least one coefficient matrix")
    return MatPoly(mats, mats[0].shape[0])


def poly_csv_rows(quantity: str, n: int, p: MatPoly):
    """One ``(quantity, n, i, j, power, value)`` row per coefficient (1-based ``i, j``)."""
    for power, c in enumerate(p.coeffs):
        for i in range(p.size):
            for j in range(p.size):
                yield (quantity, n, i + 1, j + 1, power, to_str(c[i, j]))


def matrix_csv_rows(quantity: str, n: int, m: np.ndarray):
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            yield (quantity, n, i + 1, j + 1, "", to_str(m[i, j]))


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, default=str)
