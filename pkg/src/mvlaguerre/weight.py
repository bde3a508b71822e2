"""Exact representation of the matrix weight and its moments.

A weight is stored as ``W(x) = exp(-x) x^nu Q(x)`` with ``Q`` a matrix
polynomial. Integrals against it are exact rationals times ``Gamma(nu+1)``
since ``int_0^inf exp(-x) x^(nu+s) dx = (nu+1)_s Gamma(nu+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import ONE, Q
from .matpoly import MatPoly, diag, is_zero, mat_equal, scale, zeros
from .report import Check
from .scalar import RatPoly, factorial, pochhammer
from .structure import StructParams, build_L


def _int_offset(nu, nu0) -> int:
    diff = Q(nu) - Q(nu0)
    if diff.denominator != 1 or diff < 0:
        raise ValueError(f"cannot rebase exponent {nu} to {nu0}")
    return int(diff)


@dataclass(frozen=True)
class GammaUnits:
    """A matrix whose true value is ``value * Gamma(nu + 1)``."""

    value: np.ndarray
    nu: object

    def in_units(self, nu0) -> np.ndarray:
        """Re-express in ``Gamma(nu0 + 1)`` units (``nu - nu0`` a nonnegative integer)."""
        k = _int_offset(self.nu, nu0)
        return scale(self.value, pochhammer(Q(nu0) + 1, k))

    def rebase(self, nu0) -> GammaUnits:
        return GammaUnits(self.in_units(nu0), Q(nu0))

    def __eq__(self, other):
        if not isinstance(other, GammaUnits):
            return NotImplemented
        base = min(Q(self.nu), Q(other.nu))
        return mat_equal(self.in_units(base), other.in_units(base))

    __hash__ = None


class WeightForm:
    """``exp(-x) x^nu Q(x)``; supports products with matrix polynomials and d/dx."""

    __slots__ = ("nu", "Q")
    __array_ufunc__ = None

    def __init__(self, nu, Qpoly: MatPoly):
        self.nu = Q(nu)
        self.Q = Qpoly

    @property
    def size(self) -> int:
        return self.Q.size

    def rebase(self, nu0) -> WeightForm:
        return WeightForm(nu0, self.Q.shift(_int_offset(self.nu, nu0)))

    def _aligned(self, other: WeightForm) -> tuple[MatPoly, MatPoly, object]:
        base = min(self.nu, other.nu)
        return self.rebase(base).Q, other.rebase(base).Q, base

    def __eq__(self, other):
        if not isinstance(other, WeightForm):
            return NotImplemented
        a, b, _ = self._aligned(other)
        return a == b

    __hash__ = None

    def __add__(self, other: WeightForm) -> WeightForm:
        a, b, base = self._aligned(other)
        return WeightForm(base, a + b)

    def __neg__(self) -> WeightForm:
        return WeightForm(self.nu, -self.Q)

    def __sub__(self, other: WeightForm) -> WeightForm:
        return self + (-other)

    def __matmul__(self, other) -> WeightForm:
        return WeightForm(self.nu, self.Q @ other)

    def __rmatmul__(self, other) -> WeightForm:
        return WeightForm(self.nu, other @ self.Q)

    def __mul__(self, c) -> WeightForm:
        return WeightForm(self.nu, self.Q * c)

    __rmul__ = __mul__

    def transpose(self) -> WeightForm:
        return WeightForm(self.nu, self.Q.T)

    @property
    def T(self) -> WeightForm:
        return self.transpose()

    def derivative(self) -> WeightForm:
        """d/dx, keeping the exponent whenever ``x`` divides ``Q``."""
        q = self.Q
        v = q.valuation()
        if v is None:
            return self
        if v >= 1:
            return WeightForm(self.nu, q.divide_x() * self.nu + q.derivative() - q)
        return WeightForm(self.nu - 1, q * self.nu + q.derivative().shift(1) - q.shift(1))

    def vanishing_exponent(self):
        """Exponent ``e`` with ``W(x) ~ x^e`` at the origin (``None`` if zero)."""
        v = self.Q.valuation()
        return None if v is None else self.nu + v

    def __call__(self, x: float) -> np.ndarray:
        import math

        return math.exp(-x) * x ** float(self.nu) * self.Q(float(x))

    def __repr__(self):
        return f"WeightForm(nu={self.nu}, deg Q={self.Q.degree})"


def build_weight(p: StructParams, nu, delta, check: bool = True) -> WeightForm:
    """``L T L^T`` with ``T = exp(-x) diag(delta_k x^(nu+k))``."""
    nu = Q(nu)
    delta = [Q(d) for d in delta]
    if len(delta) != p.N:
        raise ValueError(f"need {p.N} delta values")
    if check:
        if nu <= 0:
            raise ValueError("nu must be positive")
        if any(d <= 0 for d in delta):
            raise ValueError("delta entries must be positive")
    L = build_L(p)
    n = p.N
    T = MatPoly([diag([0] * n)] + [diag([delta[k] if k == j else 0 for k in range(n)]) for j in range(n)], n)
    return WeightForm(nu, L @ T @ L.T)


def exact_moment(w: WeightForm, m: int) -> GammaUnits:
    """``int_0^inf x^m W(x) dx`` in ``Gamma(nu+1)`` units."""
    out = zeros(w.size)
    for s, c in enumerate(w.Q.coeffs):
        if not is_zero(c):
            out = out + scale(c, pochhammer(w.nu + 1, m + s))
    return GammaUnits(out, w.nu)


def H0_formula(p: StructParams, nu, delta) -> GammaUnits:
    """Closed-form zeroth moment, valid when ``alpha == nu``; diagonal."""
    nu = Q(nu)
    if p.alpha != nu:
        raise ValueError("the closed-form zeroth moment needs alpha == nu")
    delta = [Q(d) for d in delta]
    vals = []
    for j in range(1, p.N + 1):
        s = sum(
            (delta[k - 1] / p.mu[k - 1] ** 2 * (-1) ** (k + 1) * pochhammer(1 - j, k - 1)
             for k in range(1, j + 1)),
            Q(0),
        )
        vals.append(p.mu[j - 1] ** 2 * pochhammer(nu + 1, j) / factorial(j - 1) * s)
    return GammaUnits(diag(vals), nu)


@dataclass(frozen=True)
class ChuVandermondeResult:
    value: GammaUnits | None
    matching_base: str | None
    checks: tuple


def _h0_summed(p: StructParams, nu, c_over_d, delta1, den_base) -> GammaUnits:
    vals = []
    for j in range(1, p.N + 1):
        den = pochhammer(den_base, j - 1)
        vals.append(
            p.mu[j - 1] ** 2 * delta1 * pochhammer(nu + 1, j) * pochhammer(-p.N - c_over_d, j - 1)
            / (p.mu[0] ** 2 * factorial(j - 1) * den)
        )
    return GammaUnits(diag(vals), nu)


def H0_chu_vandermonde(p: StructParams, nu, c_over_d, delta) -> ChuVandermondeResult:
    """Summed zeroth moment for a family built by the iterated recursion.

    Two denominator Pochhammer bases are candidates, ``(-N-1)`` and
    ``(-N+1)``; each is compared with :func:`H0_formula` and the one that
    matches is returned.
    """
    nu, c_over_d = Q(nu), Q(c_over_d)
    reference = H0_formula(p, nu, delta)
    delta1 = Q(delta[0])
    checks, match, value = [], None, None
    for label, base in (("-N-1", -p.N - 1), ("-N+1", -p.N + 1)):
        try:
            cand = _h0_summed(p, nu, c_over_d, delta1, Q(base))
            ok = cand == reference
        except ZeroDivisionError:
            cand, ok = None, False
        checks.append(
            Check(
                f"zeroth moment summed with denominator ({label})_(j-1) equals direct sum",
                "Chu-Vandermonde evaluation of the zeroth moment",
                ok,
                {"N": p.N, "denominator_base": label},
            )
        )
        if ok and match is None:
            match, value = label, cand
    return ChuVandermondeResult(value, match, tuple(checks))
