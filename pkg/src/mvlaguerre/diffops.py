"""Second-order matrix differential operators acting on the right.

``Q D = Q'' F2 + Q' F1 + Q F0``. The module builds the operator ``D``
with lower triangular eigenvalues ``Gamma_n``, its conjugate by ``L``
(diagonal coefficients), the factorised operator ``S o d/dx`` with
eigenvalues ``n K_n``, and the reversed factorisation ``d/dx o S``. The
checks cover eigen-equations, symmetry with respect to the weight,
commutativity, the relation between the reversed operator and the level
``nu+1`` operators, the Burchnall expansion and the Hermite connection
formula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import Q
from .matpoly import MatPoly, commutator, diag, identity, is_zero, mat_equal, mat_inv, mat_power, matrix_pochhammer, scale
from .mvop import monic_from_moments, rodrigues_constant
from .pearson import FamilySpec, build_K, build_Phi, build_Psi, raising_operator
from .report import Check
from .scalar import RatPoly, binomial, factorial, hermite, hypergeometric_terminating, laguerre, pochhammer
from .structure import build_A, build_J, build_L, L_at_zero, one_plus_A_inverse
from .weight import WeightForm


@dataclass(frozen=True)
class SecondOrderOp:
    F2: MatPoly
    F1: MatPoly
    F0: MatPoly

    @property
    def size(self) -> int:
        return self.F2.size

    def apply(self, q: MatPoly) -> MatPoly:
        if q.size != self.size:
            raise ValueError(f"size mismatch: {q.size} vs {self.size}")
        return q.derivative(2) @ self.F2 + q.derivative() @ self.F1 + q @ self.F0

    def __add__(self, other: SecondOrderOp) -> SecondOrderOp:
        return SecondOrderOp(self.F2 + other.F2, self.F1 + other.F1, self.F0 + other.F0)

    def __sub__(self, other: SecondOrderOp) -> SecondOrderOp:
        return SecondOrderOp(self.F2 - other.F2, self.F1 - other.F1, self.F0 - other.F0)

    def __mul__(self, c) -> SecondOrderOp:
        return SecondOrderOp(self.F2 * c, self.F1 * c, self.F0 * c)

    __rmul__ = __mul__

    def plus_constant(self, c) -> SecondOrderOp:
        """Add ``c`` times the identity operator."""
        return SecondOrderOp(self.F2, self.F1, self.F0 + Q(c))

    def __eq__(self, other):
        if not isinstance(other, SecondOrderOp):
            return NotImplemented
        return self.F2 == other.F2 and self.F1 == other.F1 and self.F0 == other.F0

    __hash__ = None


def apply(op: SecondOrderOp, q: MatPoly) -> MatPoly:
    return op.apply(q)


# ---------------------------------------------------------------------------
# operators


def build_D(f: FamilySpec, level: int = 0) -> SecondOrderOp:
    N = f.N
    p = f.struct
    nu = f.nu_at(level)
    A, J, I = build_A(p), build_J(N), identity(N)
    inv = one_plus_A_inverse(p)
    x = MatPoly.x(N)
    F1 = x @ (-inv) + MatPoly.constant(scale(I, nu + 1) + J + (scale(I, p.alpha) + J) @ A)
    F0 = MatPoly.constant(scale(inv, p.alpha - nu) - J)
    return SecondOrderOp(x, F1, F0)


def Gamma_n(f: FamilySpec, n: int, level: int = 0) -> np.ndarray:
    p = f.struct
    return scale(one_plus_A_inverse(p), p.alpha - f.nu_at(level) - n) - build_J(f.N)


def build_D_tilde(f: FamilySpec, level: int = 0, zeroth: str = "full") -> SecondOrderOp:
    """``L^-1``-conjugate of ``D``: ``x d^2 + (nu+J+1-x) d + (alpha-nu) - J``.

    ``zeroth="bare"`` drops the ``alpha - nu`` term, giving ``-J``.
    """
    N = f.N
    nu = f.nu_at(level)
    J, I = build_J(N), identity(N)
    x = MatPoly.x(N)
    F1 = MatPoly.constant(J + scale(I, nu + 1)) - x
    shift = f.alpha - nu if zeroth == "full" else 0
    F0 = MatPoly.constant(scale(I, shift) - J)
    return SecondOrderOp(x, F1, F0)


def Lambda_n(f: FamilySpec, n: int, level: int = 0) -> np.ndarray:
    return scale(build_K(f, n, level), n)


def build_calD(f: FamilySpec, level: int = 0) -> SecondOrderOp:
    """``S o d/dx = d^2 Phi^T + d Psi^T``."""
    return SecondOrderOp(
        build_Phi(f, level).T, build_Psi(f, level).T, MatPoly.zero(f.N)
    )


def build_darboux(f: FamilySpec, level: int = 0) -> SecondOrderOp:
    """``d/dx o S = d^2 Phi^T + d (Phi'^T + Psi^T) + Psi'^T``."""
    phi, psi = build_Phi(f, level), build_Psi(f, level)
    return SecondOrderOp(phi.T, phi.derivative().T + psi.T, psi.derivative().T)


def Xi_n(f: FamilySpec, n: int, level: int = 0, quadratic: str = "n(n+1)") -> np.ndarray:
    """Eigenvalue of the reversed operator on ``P_n^(nu+1)``.

    ``lc`` denotes the ``x^2`` coefficient of ``Phi`` and the ``x``
    coefficient of ``Psi``. ``quadratic`` selects the factor in front of
    ``lc(Phi)^T``: ``"n(n+1)"`` (from the leading coefficients) or ``"n^2"``.
    """
    k = n * (n + 1) if quadratic == "n(n+1)" else n * n
    lc_phi = build_Phi(f, level).coeff(2).T
    lc_psi = build_Psi(f, level).coeff(1).T
    return scale(lc_phi, k) + scale(lc_psi, n + 1)


# ---------------------------------------------------------------------------
# symmetry


def _positive_exponent(w: WeightForm):
    e = w.vanishing_exponent()
    return e is None or e > 0, None if e is None else str(e)


def check_symmetry(op: SecondOrderOp, w: WeightForm, name: str = "D") -> list[Check]:
    """Symmetry equations and boundary terms as exact identities.

    Every boundary term is ``exp(-x) x^e`` times a polynomial, so it tends
    to zero at infinity; at the origin it vanishes when ``e > 0`` (or the
    term is identically zero). The exponents are reported.
    """
    ref = "symmetry conditions for a second-order operator"
    f2w = op.F2 @ w
    f1w = op.F1 @ w
    f0w = op.F0 @ w
    eq1 = f2w == w @ op.F2.T
    eq2 = f2w.derivative() * 2 - f1w == w @ op.F1.T
    eq3 = f2w.derivative().derivative() - f1w.derivative() + f0w == w @ op.F0.T
    b1_ok, b1_exp = _positive_exponent(f2w)
    b2_ok, b2_exp = _positive_exponent(f1w - f2w.derivative())
    return [
        Check(f"{name}: F2 W = W F2^T", ref, eq1),
        Check(f"{name}: 2(F2 W)' - F1 W = W F1^T", ref, eq2),
        Check(f"{name}: (F2 W)'' - (F1 W)' + F0 W = W F0^T", ref, eq3),
        Check(
            f"{name}: F2 W and F1 W - (F2 W)' vanish at 0 and infinity",
            "boundary conditions for symmetry",
            b1_ok and b2_ok,
            {"exponent_F2W": b1_exp, "exponent_F1W_minus_dF2W": b2_exp},
        ),
    ]


def diagonal_weight(f: FamilySpec, level: int = 0) -> WeightForm:
    """``T = exp(-x) x^nu diag(delta_k x^k)``."""
    N = f.N
    delta = f.working_delta(level)
    coeffs = [diag([0] * N)] + [diag([delta[k] if k == j else 0 for k in range(N)]) for j in range(N)]
    return WeightForm(f.nu_at(level), MatPoly(coeffs, N))


# ---------------------------------------------------------------------------
# eigen-equations


def check_eigen_D(f: FamilySpec, n: int, level: int = 0) -> list[Check]:
    p_n = monic_from_moments(f, level, n)
    L = build_L(f.struct)
    g = Gamma_n(f, n, level)
    pl = p_n @ L
    return [
        Check(f"P_{n} D = Gamma_{n} P_{n}", "eigenvalue equation for D", build_D(f, level).apply(p_n) == g @ p_n, {"n": n}),
        Check(
            f"(P_{n} L) D~ = Gamma_{n} (P_{n} L)",
            "conjugated operator",
            build_D_tilde(f, level).apply(pl) == g @ pl,
            {"n": n},
        ),
    ]


def check_conjugation(f: FamilySpec, level: int = 0, degree: int = 3) -> list[Check]:
    """Coefficient relations between ``D`` and its conjugate, and ``(Q D) L = (Q L) D~``."""
    D, Dt = build_D(f, level), build_D_tilde(f, level)
    L = build_L(f.struct)
    dL, d2L = L.derivative(), L.derivative(2)
    rel = (
        D.F2 @ L == L @ Dt.F2
        and D.F1 @ L == dL @ Dt.F2 * 2 + L @ Dt.F1
        and D.F0 @ L == d2L @ Dt.F2 + dL @ Dt.F1 + L @ Dt.F0
    )
    probes = _probe_polys(f.N, degree)
    action = all(D.apply(q) @ L == Dt.apply(q @ L) for q in probes)
    return [
        Check("F_i and conjugated F~_i related through L", "conjugated operator", rel),
        Check("(Q D) L = (Q L) D~ for probe polynomials", "conjugated operator", action, {"probes": len(probes)}),
    ]


def _probe_polys(N: int, degree: int) -> list[MatPoly]:
    """Deterministic non-symmetric test polynomials."""
    out = []
    for d in range(degree + 1):
        coeffs = []
        for k in range(d + 1):
            m = np.empty((N, N), dtype=object)
            for i in range(N):
                for j in range(N):
                    m[i, j] = Q((i + 2 * j + 3 * k + d) % 5 - 2, 1 + (i + k) % 3)
            coeffs.append(m)
        out.append(MatPoly(coeffs, N))
    return out


def check_eigen_calD(f: FamilySpec, n: int, level: int = 0) -> list[Check]:
    p_n = monic_from_moments(f, level, n)
    op = build_calD(f, level)
    lam = Lambda_n(f, n, level)
    g = Gamma_n(f, n, level)
    return [
        Check(f"P_{n} calD = {n} K_{n} P_{n}", "second operator from the shift operators", op.apply(p_n) == lam @ p_n, {"n": n}),
        Check(f"Gamma_{n} Lambda_{n} = Lambda_{n} Gamma_{n}", "commuting operators", is_zero(commutator(g, lam)), {"n": n}),
    ]


def check_factorisation(f: FamilySpec, level: int = 0, degree: int = 3) -> list[Check]:
    """``calD = S o d/dx`` and ``[D, calD] = 0`` on probe polynomials."""
    cal, D = build_calD(f, level), build_D(f, level)
    probes = _probe_polys(f.N, degree)
    fact = all(cal.apply(q) == raising_operator(f, q.derivative(), level) for q in probes)
    comm = all(D.apply(cal.apply(q)) == cal.apply(D.apply(q)) for q in probes)
    return [
        Check("calD Q = (Q') S for probe polynomials", "second operator from the shift operators", fact),
        Check("D and calD commute on probe polynomials", "commuting operators", comm),
    ]


def check_darboux_eigen(f: FamilySpec, n: int, level: int = 0) -> list[Check]:
    p = monic_from_moments(f, level + 1, n)
    out = build_darboux(f, level).apply(p)
    return [
        Check(
            f"P_{n}^(nu+1) (d/dx o S) = Xi_{n} P_{n}^(nu+1), Xi_n = n(n+1) lc(Phi)^T + (n+1) lc(Psi)^T",
            "Darboux transform",
            out == Xi_n(f, n, level) @ p,
            {"n": n},
        ),
        Check(
            f"P_{n}^(nu+1) (d/dx o S) = Xi_{n} P_{n}^(nu+1), Xi_n = n^2 lc(Phi)^T + (n+1) lc(Psi)^T",
            "Darboux transform",
            out == Xi_n(f, n, level, quadratic="n^2") @ p,
            {"n": n},
        ),
    ]


def check_darboux_relation(f: FamilySpec, level: int = 0) -> Check:
    """``(1/d) d/dx o S = (1/d') calD^(nu+1) - D^(nu+1) + alpha - N - 2 nu - 2 - rho``."""
    ref = "explicit Darboux transform"
    rho = f.rho
    if rho is None:
        return Check("Darboux operator relation", ref, False, {"skipped": "c/d = nu + j + rho not detected"})
    nu = f.nu_at(level)
    lhs = build_darboux(f, level) * (1 / f.d[level])
    rhs = (build_calD(f, level + 1) * (1 / f.d[level + 1]) - build_D(f, level + 1)).plus_constant(
        f.alpha - f.N - 2 * nu - 2 - rho
    )
    return Check(
        "(1/d) (d/dx o S) = (1/d') calD^(nu+1) - D^(nu+1) + alpha - N - 2nu - 2 - rho",
        ref,
        lhs == rhs,
        {"level": level, "rho": str(rho)},
    )


# ---------------------------------------------------------------------------
# Burchnall expansion


def phi_product(f: FamilySpec, k: int, level: int = 0) -> MatPoly:
    """``(Phi^(nu) ... Phi^(nu+k-1))^T``."""
    out = MatPoly.identity(f.N)
    for p in range(k):
        out = out @ build_Phi(f, level + p)
    return out.T


def phi_product_closed(f: FamilySpec, k: int, level: int = 0, sign: int = 1) -> MatPoly:
    """``sign^k x^k (prod d) L(0) (J - x A + nu + rho)_k L(0)^-1``."""
    N = f.N
    p = f.struct
    x = MatPoly.x(N)
    base = MatPoly.constant(build_J(N) + scale(identity(N), f.nu_at(level) + f.rho)) - x @ build_A(p)
    poch = matrix_pochhammer(base, k)
    l0 = L_at_zero(p)
    coef = Q(sign) ** k
    for j in range(k):
        coef *= f.d[level + j]
    out = MatPoly.constant(l0) @ poch @ MatPoly.constant(mat_inv(l0))
    return out.shift(k) * coef


def burchnall_rhs(f: FamilySpec, n: int, m: int, level: int = 0) -> MatPoly:
    """Leibniz expansion of ``d^n (P_m^(nu+n) W^(nu+n))`` divided by ``W^(nu)``.

    ``sum_k C(n,k) m!/(m-k)! P_(m-k)^(nu+n+k) G_(n-k)^(nu+k)^-1 P_(n-k)^(nu+k) (Phi...Phi)^T``
    """
    out = MatPoly.zero(f.N)
    for k in range(min(n, m) + 1):
        coef = binomial(n, k) * factorial(m) / factorial(m - k)
        g_inv = mat_inv(rodrigues_constant(f, n - k, level + k))
        term = (
            monic_from_moments(f, level + n + k, m - k)
            @ g_inv
            @ monic_from_moments(f, level + k, n - k)
            @ phi_product_closed(f, k, level)
        )
        out = out + term * coef
    return out


def burchnall_lhs_constant(f: FamilySpec, n: int, m: int, level: int = 0) -> np.ndarray:
    """``G_(n+m)^(nu) G_m^(nu+n)^-1 = K_(n+m)^(nu)^-1 ... K_(m+1)^(nu+n-1)^-1``."""
    out = identity(f.N)
    for j in range(n):
        out = out @ mat_inv(build_K(f, n + m - j, level + j))
    return out


def burchnall_power_rhs(f: FamilySpec, n: int, m: int, level: int = 0) -> MatPoly:
    out = MatPoly.zero(f.N)
    k_n = build_K(f, n, level)
    for k in range(min(n, m) + 1):
        coef = (-1) ** k * binomial(n, k) * binomial(m, k) * factorial(k)
        term = (
            monic_from_moments(f, level + n - k, m - k)
            @ mat_power(k_n, n - k)
            @ monic_from_moments(f, level + k, n - k)
            @ phi_product_closed(f, k, level)
        )
        out = out + term * coef
    return out


def burchnall_check(f: FamilySpec, n: int, m: int, level: int = 0) -> list[Check]:
    ref = "Burchnall expansion"
    if f.rho is None:
        return [Check("Burchnall expansion", ref, False, {"skipped": "c/d = nu + j + rho not detected"})]
    p_nm = monic_from_moments(f, level, n + m)
    derived = p_nm == burchnall_lhs_constant(f, n, m, level) @ burchnall_rhs(f, n, m, level)
    power_lhs = mat_inv(mat_power(build_K(f, n + m, level), n)) @ p_nm
    power = power_lhs == burchnall_power_rhs(f, n, m, level)
    detail = {"n": n, "m": m, "N": f.N}
    return [
        Check(f"Burchnall expansion of P_{n + m} via Leibniz and Rodrigues products", ref, derived, detail),
        Check(f"Burchnall expansion of P_{n + m} with K-powers and alternating signs", ref, power, detail),
    ]


def phi_product_checks(f: FamilySpec, k: int, level: int = 0) -> list[Check]:
    ref = "Burchnall expansion"
    prod = phi_product(f, k, level)
    return [
        Check(f"(Phi...Phi)^T = x^k prod(d) L(0)(J - xA + nu + rho)_k L(0)^-1, k={k}", ref, prod == phi_product_closed(f, k, level)),
        Check(
            f"(Phi...Phi)^T = (-1)^k x^k prod(d) L(0)(J - xA + nu + rho)_k L(0)^-1, k={k}",
            ref,
            prod == phi_product_closed(f, k, level, sign=-1),
        ),
    ]


# ---------------------------------------------------------------------------
# Hermite connection


def hermite_connection_rhs(m: int, n: int, alpha) -> RatPoly:
    alpha = Q(alpha)
    out = RatPoly()
    for p in range(n, m + 1):
        coef = pochhammer(alpha + p + 1, m - p) / (factorial(m - p) * factorial(p - n))
        f22 = hypergeometric_terminating(
            [Q(p - m, 2), Q(p - m + 1, 2)], [(alpha + p + 1) / 2, (alpha + p + 2) / 2], 1
        )
        out = out + hermite(p - n) * (coef * f22)
    return out


def hermite_connection_check(m: int, n: int, alpha) -> Check:
    if not m >= n >= 0:
        raise ValueError("need m >= n >= 0")
    lhs = laguerre(m - n, Q(alpha) + n).scale_argument(-2)
    return Check(
        f"L_(m-n)^(alpha+n)(-2x) as Hermite sum, m={m}, n={n}",
        "connection between Laguerre and Hermite polynomials",
        lhs == hermite_connection_rhs(m, n, alpha),
        {"m": m, "n": n, "alpha": str(alpha)},
    )
