"""Structural matrices of the LDU-factorised Laguerre-type weight.

``A_mu`` (nilpotent, subdiagonal), ``J = diag(1..N)``, ``S_mu = diag(mu)``,
the unipotent lower triangular ``L^{(alpha)}_mu(x)`` built from Laguerre
polynomials, its inverse, and the constant matrices ``M^{(alpha,lambda)}``
relating different ``alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import ONE, Q
from .matpoly import (
    MatPoly,
    commutator,
    identity,
    is_zero,
    mat_equal,
    mat_inv,
    mat_power,
    neumann_inverse,
    nilpotent_exp,
    scale,
    unipotent_inverse,
    zeros,
)
from .report import Check
from .scalar import binomial, factorial, laguerre, pochhammer


@dataclass(frozen=True)
class StructParams:
    N: int
    alpha: object
    mu: tuple

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        mu = tuple(Q(m) for m in self.mu)
        if len(mu) != self.N:
            raise ValueError(f"need {self.N} mu values, got {len(mu)}")
        if any(m == 0 for m in mu):
            raise ValueError("mu entries must be nonzero")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "alpha", Q(self.alpha))

    @classmethod
    def unit(cls, N: int, alpha) -> StructParams:
        return cls(N, alpha, (1,) * N)

    def with_alpha(self, alpha) -> StructParams:
        return StructParams(self.N, alpha, self.mu)


def build_A(p: StructParams) -> np.ndarray:
    """``A_mu`` with ``(A_mu)_{k,k-1} = -mu_k/mu_{k-1}``."""
    a = zeros(p.N)
    for k in range(1, p.N):
        a[k, k - 1] = -p.mu[k] / p.mu[k - 1]
    return a


def build_J(N: int) -> np.ndarray:
    out = zeros(N)
    for k in range(N):
        out[k, k] = Q(k + 1)
    return out


def build_S(p: StructParams) -> np.ndarray:
    out = zeros(p.N)
    for k in range(p.N):
        out[k, k] = p.mu[k]
    return out


def build_L(p: StructParams) -> MatPoly:
    """``L^{(alpha)}_mu(x)``; entry ``(m, n)`` is ``mu_m/mu_n L^{(alpha+n)}_{m-n}(x)``."""
    from .scalar import RatPoly

    def ent(i, j):
        if i < j:
            return RatPoly()
        # 1-based column index enters the Laguerre parameter
        return laguerre(i - j, p.alpha + (j + 1)) * (p.mu[i] / p.mu[j])

    return MatPoly.from_entries(p.N, ent)


def build_L_inverse(p: StructParams) -> MatPoly:
    """Closed-form inverse; entry ``(m, n)`` is ``mu_m/mu_n L^{(-alpha-m-1)}_{m-n}(-x)``."""
    from .scalar import RatPoly

    def ent(i, j):
        if i < j:
            return RatPoly()
        return laguerre(i - j, -p.alpha - (i + 1) - 1).scale_argument(-1) * (p.mu[i] / p.mu[j])

    return MatPoly.from_entries(p.N, ent)


def L_at_zero(p: StructParams) -> np.ndarray:
    return build_L(p).coeff(0).copy()


def one_plus_A_inverse(p: StructParams) -> np.ndarray:
    """``(1 + A_mu)^{-1}`` via the terminating Neumann series."""
    return neumann_inverse(build_A(p))


def build_M(alpha, lam, p: StructParams) -> np.ndarray:
    """``M^{(alpha,lambda)} = sum_k (alpha-lambda)_k/k! (-1)^k A_mu^k``."""
    alpha, lam = Q(alpha), Q(lam)
    a = build_A(p)
    out, power = zeros(p.N), identity(p.N)
    for k in range(p.N):
        out = out + scale(power, pochhammer(alpha - lam, k) / factorial(k) * (-1) ** k)
        power = power @ a
    return out


def M_from_L0(alpha, lam, p: StructParams) -> np.ndarray:
    """``L^{(alpha)}(0) L^{(lambda)}(0)^{-1}``."""
    return L_at_zero(p.with_alpha(alpha)) @ mat_inv(L_at_zero(p.with_alpha(lam)))


def M_binomial(alpha, lam, p: StructParams) -> np.ndarray:
    """``(1 + A_mu)^{lambda-alpha}`` through the terminating binomial series."""
    s = Q(lam) - Q(alpha)
    a = build_A(p)
    out, power = zeros(p.N), identity(p.N)
    for k in range(p.N):
        out = out + scale(power, binomial(s, k))
        power = power @ a
    return out


# ---------------------------------------------------------------------------
# identity checks


def check_commutations(p: StructParams) -> list[Check]:
    """The three conjugation relations between ``L``, ``J`` and ``A_mu``."""
    N = p.N
    L = build_L(p)
    Li = build_L_inverse(p)
    A = build_A(p)
    J = build_J(N)
    I = identity(N)
    x = MatPoly.x(N)
    inv1pA = one_plus_A_inverse(p)
    ref = "commutation relations of L with J and A"

    lhs1 = L @ J @ Li
    rhs1 = x @ inv1pA - x + MatPoly.constant((scale(I, p.alpha) + J) @ A + J)
    lhs2 = Li @ J @ L
    rhs2 = MatPoly.constant(J) - (MatPoly.constant(scale(I, p.alpha) + J) - x) @ A - x @ (A @ A)
    lhs3 = L @ (I - A) @ Li
    rhs3 = MatPoly.constant(inv1pA)
    return [
        Check("L J L^-1 = x(1+A)^-1 - x + (alpha+J)A + J", ref, lhs1 == rhs1, {"N": N}),
        Check("L^-1 J L = J - (alpha+J-x)A - x A^2", ref, lhs2 == rhs2, {"N": N}),
        Check("L (1-A) L^-1 = (1+A)^-1", ref, lhs3 == rhs3, {"N": N}),
    ]


def structure_checks(p: StructParams, lam=None) -> list[Check]:
    """Inverse, exponential form and the ``M`` matrices for one parameter set."""
    N = p.N
    L = build_L(p)
    Li = build_L_inverse(p)
    A = build_A(p)
    I = MatPoly.identity(N)
    checks = [
        Check("L(x) L^-1(x) = I (closed-form inverse)", "inverse of L", L @ Li == I and Li @ L == I),
        Check(
            "closed-form inverse = forward-substitution inverse",
            "inverse of L",
            Li == unipotent_inverse(L),
        ),
        Check("dL/dx = L A_mu", "derivative of L", L.derivative() == L @ A),
        Check(
            "L(x) = L(0) exp(x A_mu)",
            "exponential form of L",
            L == MatPoly.constant(L.coeff(0)) @ nilpotent_exp(A),
        ),
        Check("[A, L] = A L A", "commutation relations of L with J and A", A @ L - L @ A == A @ L @ A),
        Check("A_mu^N = 0", "nilpotency of A", is_zero(mat_power(A, N))),
    ]
    if lam is not None:
        lam = Q(lam)
        m_sum = build_M(p.alpha, lam, p)
        m_l0 = M_from_L0(p.alpha, lam, p)
        m_bin = M_binomial(p.alpha, lam, p)
        Lam = build_L(p.with_alpha(lam))
        checks += [
            Check(
                "M(alpha,lambda): sum form = L^(alpha)(0) L^(lambda)(0)^-1 = (1+A)^(lambda-alpha)",
                "matrices with different parameters",
                mat_equal(m_sum, m_l0) and mat_equal(m_sum, m_bin),
                {"alpha": str(p.alpha), "lambda": str(lam)},
            ),
            Check(
                "L^(alpha)(x) = M(alpha,lambda) L^(lambda)(x)",
                "matrices with different parameters",
                L == m_sum @ Lam,
            ),
            Check(
                "M(alpha,lambda) M(lambda,alpha) = I",
                "matrices with different parameters",
                mat_equal(m_sum @ build_M(lam, p.alpha, p), identity(N)),
            ),
        ]
    return checks
