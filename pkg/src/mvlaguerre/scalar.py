"""Scalar polynomials with exact rational coefficients.

Classical Laguerre and (physicists') Hermite polynomials, shifted factorials
and the scalar Laguerre identities the matrix constructions are built from.
"""

from __future__ import annotations

from functools import lru_cache

from ._backend import ONE, ZERO, Q


class RatPoly:
    """Polynomial in ``x`` with rational coefficients, lowest power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> RatPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> RatPoly:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __call__(self, x):
        acc = ZERO if not isinstance(x, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (float(c) if isinstance(x, float) else c)
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatPoly):
            c = Q(other)
            return RatPoly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == _as_poly(other).coeffs
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def derivative(self) -> RatPoly:
        return RatPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def scale_argument(self, s) -> RatPoly:
        """Return ``p(s*x)``."""
        s = Q(s)
        return RatPoly(c * s**k for k, c in enumerate(self.coeffs))


def _as_poly(value) -> RatPoly:
    return value if isinstance(value, RatPoly) else RatPoly.constant(value)


def pochhammer(x, k: int):
    """Rising factorial ``x (x+1) ... (x+k-1)``; 1 for ``k == 0``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    x = Q(x)
    out = ONE
    for i in range(k):
        out *= x + i
    return out


def factorial(k: int):
    return pochhammer(1, k)


def binomial(s, k: int):
    """Generalized binomial coefficient ``s choose k`` for rational ``s``."""
    out = ONE
    s = Q(s)
    for i in range(k):
        out = out * (s - i) / (i + 1)
    return out


@lru_cache(maxsize=4096)
def _laguerre_cached(n: int, a) -> RatPoly:
    x = RatPoly.x()
    prev, cur = RatPoly(), RatPoly.constant(1)
    for k in range(n):
        # (k+1) L_{k+1} = (2k+a+1-x) L_k - (k+a) L_{k-1}
        nxt = (cur * (2 * k + 1 + a) - x * cur - prev * (k + a)) * (ONE / (k + 1))
        prev, cur = cur, nxt
    return cur


def laguerre(n: int, a) -> RatPoly:
    """Laguerre polynomial ``L_n^{(a)}`` for rational ``a``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _laguerre_cached(n, Q(a))


def laguerre_derivative_check(n: int, a) -> bool:
    """True iff ``d/dx L_n^{(a)} == -L_{n-1}^{(a+1)}`` exactly."""
    if n < 1:
        raise ValueError("n must be at least 1")
    a = Q(a)
    return laguerre(n, a).derivative() == -laguerre(n - 1, a + 1)


def laguerre_inversion_sum(i: int, j: int, a) -> RatPoly:
    """Sum ``sum_{k=j}^{i} L_{i-k}^{(-a-i-1)}(-x) L_{k-j}^{(a+j)}(x)``.

    The result is the constant ``1`` when ``i == j`` and zero otherwise.
    """
    if i < j:
        raise ValueError("need i >= j")
    a = Q(a)
    total = RatPoly()
    for k in range(j, i + 1):
        left = laguerre(i - k, -a - i - 1).scale_argument(-1)
        total = total + left * laguerre(k - j, a + j)
    return total


def laguerre_parameter_shift(n: int, a, l):
    """Coefficients ``c_k = (a-l)_{n-k}/(n-k)!`` with ``L_n^{(a)} = sum c_k L_k^{(l)}``.

    Raises ``ArithmeticError`` if the recombination is not exact.
    """
    a, l = Q(a), Q(l)
    coeffs = [pochhammer(a - l, n - k) / factorial(n - k) for k in range(n + 1)]
    recombined = RatPoly()
    for k, c in enumerate(coeffs):
        recombined = recombined + laguerre(k, l) * c
    if recombined != laguerre(n, a):
        raise ArithmeticError("parameter-shift expansion does not reproduce L_n")
    return coeffs


@lru_cache(maxsize=256)
def hermite(n: int) -> RatPoly:
    """Physicists' Hermite polynomial ``H_n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = RatPoly.x()
    prev, cur = RatPoly(), RatPoly.constant(1)
    for k in range(n):
        prev, cur = cur, x * cur * 2 - prev * (2 * k)
    return cur


def hypergeometric_terminating(upper, lower, z=1):
    """Finite sum of ``pFq(upper; lower; z)``.

    One upper parameter must be a nonpositive integer; a zero lower
    Pochhammer before termination raises ``ZeroDivisionError``.
    """
    upper = [Q(u) for u in upper]
    lower = [Q(b) for b in lower]
    z = Q(z)
    stops = [-int(u) for u in upper if u <= 0 and u.denominator == 1]
    if not stops:
        raise ValueError("series does not terminate")
    total, term = ZERO, ONE
    for i in range(min(stops) + 1):
        total += term
        num = ONE
        for u in upper:
            num *= u + i
        den = Q(i + 1)
        for b in lower:
            den *= b + i
        term = term * num * z / den
    return total
