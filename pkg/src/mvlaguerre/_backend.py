"""Rational number backend.

Every exact quantity in the package is created through :func:`Q`. Two
interchangeable backends exist:

``gmpy2``
    ``gmpy2.mpq``; the default whenever gmpy2 is importable.
``fraction``
    ``fractions.Fraction`` from the standard library.

Select one with the environment variable ``MVLAGUERRE_BACKEND`` before the
package is imported. Values from the two backends must not be mixed.
"""

from __future__ import annotations

import os
from fractions import Fraction

_requested = os.environ.get("MVLAGUERRE_BACKEND", "").strip().lower()

if _requested not in ("", "gmpy2", "fraction"):
    raise ImportError(
        f"MVLAGUERRE_BACKEND must be 'gmpy2' or 'fraction', got {_requested!r}"
    )

_mpq = None
if _requested in ("", "gmpy2"):
    try:
        from gmpy2 import mpq as _mpq
    except ImportError:
        if _requested == "gmpy2":
            raise

if _mpq is not None:
    BACKEND = "gmpy2"
    RATIONAL_TYPES: tuple[type, ...] = (type(_mpq(0)),)

    def Q(value=0, den=None):
        """Build an exact rational from an int, a rational or a ``"p/q"`` string."""
        if den is not None:
            return _mpq(value, den)
        if isinstance(value, Fraction):
            return _mpq(value.numerator, value.denominator)
        if isinstance(value, float):
            return _mpq(Fraction(value))
        if isinstance(value, str):
            return _mpq(Fraction(value.strip()))
        return _mpq(value)

else:
    BACKEND = "fraction"
    RATIONAL_TYPES = (Fraction,)

    def Q(value=0, den=None):
        """Build an exact rational from an int, a rational or a ``"p/q"`` string."""
        if den is not None:
            return Fraction(value, den)
        if isinstance(value, str):
            return Fraction(value.strip())
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        return Fraction(value.numerator, value.denominator) if hasattr(
            value, "numerator"
        ) else Fraction(value)


ZERO = Q(0)
ONE = Q(1)


def to_str(value) -> str:
    """Lossless ``"p/q"`` (or ``"p"``) representation."""
    value = Q(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rational_sqrt(value):
    """Exact square root of a nonnegative rational, or ``None`` if irrational."""
    from math import isqrt

    value = Q(value)
    if value < 0:
        return None
    p, q = int(value.numerator), int(value.denominator)
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Q(rp, rq)
    return None
