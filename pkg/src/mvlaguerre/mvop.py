"""Monic matrix orthogonal polynomials, norms and recurrence coefficients.

Three independent generators are provided:

* :func:`monic_from_moments` solves the block Hankel system (the oracle);
* :func:`monic_from_rodrigues` divides the ``n``-th derivative of the
  level ``nu+n`` weight by the level ``nu`` weight;
* :func:`monic_from_recurrence` runs the three-term recurrence with
  closed-form coefficients.

Integrals at level ``j`` are returned as :class:`GammaUnits` with base
exponent ``nu + j``.

The Rodrigues constant is the ordered product
``G_n = K_n^(nu)^-1 K_(n-1)^(nu+1)^-1 ... K_1^(nu+n-1)^-1``. These factors
are not all equal: ``K_(n-j)^(nu+j) = K_n^(nu) - j d`` when ``d`` is level
independent, so ``G_n`` is not a power of ``K_n``. Functions with
``power_form=True`` reproduce the power variant for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backend import ONE, Q
from .matpoly import (
    MatPoly,
    NoUniqueSolution,
    identity,
    is_zero,
    leading_minors,
    mat_equal,
    mat_inv,
    mat_power,
    scale,
    solve_linear,
    solve_right_linear,
    zeros,
)
from .pearson import FamilySpec, build_K, build_Psi, raising_operator
from .report import Check
from .scalar import factorial
from .structure import build_A, build_M
from .weight import GammaUnits, H0_formula, WeightForm, exact_moment


# ---------------------------------------------------------------------------
# inner products


def inner_product(P: MatPoly, Qp: MatPoly, w: WeightForm, moments=None) -> GammaUnits:
    """``int_0^inf P(x) W(x) Qp(x)^T dx`` in ``Gamma(w.nu + 1)`` units."""
    get = moments or (lambda k: exact_moment(w, k).value)
    out = zeros(w.size)
    for i, pi in enumerate(P.coeffs):
        if is_zero(pi):
            continue
        for j, qj in enumerate(Qp.coeffs):
            if not is_zero(qj):
                out = out + pi @ get(i + j) @ qj.T
    return GammaUnits(out, w.nu)


@lru_cache(maxsize=None)
def moment(f: FamilySpec, level: int, k: int) -> np.ndarray:
    """``int x^k W^(nu+level) dx`` in ``Gamma(nu+level+1)`` units."""
    return exact_moment(f.weight(level), k).value


def family_inner(f: FamilySpec, level: int, P: MatPoly, Qp: MatPoly) -> GammaUnits:
    return inner_product(P, Qp, f.weight(level), lambda k: moment(f, level, k))


# ---------------------------------------------------------------------------
# generators


@lru_cache(maxsize=None)
def monic_from_moments(f: FamilySpec, level: int, n: int) -> MatPoly:
    """Unique monic ``P_n`` with ``<P_n, x^j> = 0`` for ``j < n``.

    Writing ``P_n = x^n + sum_i Y_i x^i`` the conditions read
    ``sum_i Y_i m_(i+j) = -m_(n+j)``; the transposed block Hankel system is
    solved once for all rows.
    """
    N = f.N
    if n == 0:
        return MatPoly.identity(N)
    size = n * N
    hank = np.empty((size, size), dtype=object)
    rhs = np.empty((size, N), dtype=object)
    for j in range(n):
        for i in range(n):
            # row block j, column block i: (m_(i+j))^T
            hank[j * N:(j + 1) * N, i * N:(i + 1) * N] = moment(f, level, i + j).T
        rhs[j * N:(j + 1) * N, :] = -moment(f, level, n + j).T
    sol = solve_linear(hank, rhs)
    coeffs = [sol[i * N:(i + 1) * N, :].T.copy() for i in range(n)] + [identity(N)]
    return MatPoly(coeffs, N)


def rodrigues_constant(f: FamilySpec, n: int, level: int = 0, power_form: bool = False) -> np.ndarray:
    """``G_n = K_n^(nu)^-1 K_(n-1)^(nu+1)^-1 ... K_1^(nu+n-1)^-1``."""
    N = f.N
    if power_form:
        return mat_inv(mat_power(build_K(f, n, level), n)) if n else identity(N)
    out = identity(N)
    for j in range(n):
        out = out @ mat_inv(build_K(f, n - j, level + j))
    return out


def rodrigues_numerator(f: FamilySpec, n: int, level: int = 0) -> MatPoly:
    """``R`` with ``d^n/dx^n W^(nu+level+n) = exp(-x) x^(nu+level) R(x)``."""
    w = f.weight(level + n)
    for _ in range(n):
        w = w.derivative()
    return w.rebase(f.nu_at(level)).Q


@lru_cache(maxsize=None)
def monic_from_rodrigues(f: FamilySpec, level: int, n: int, power_form: bool = False) -> MatPoly:
    """``P_n = G_n (d^n W^(nu+n)) W^-1`` as a bounded-degree right division."""
    if n == 0:
        return MatPoly.identity(f.N)
    g = rodrigues_constant(f, n, level, power_form)
    q = f.weight(level).Q
    r = rodrigues_numerator(f, n, level)
    return solve_right_linear(q, g @ r, n)


def X_closed(f: FamilySpec, n: int, level: int = 0) -> np.ndarray:
    """One-but-leading coefficient ``n K_1^(nu+n-1)^-1 Psi^(nu+n-1)(0)^T``."""
    if n == 0:
        return zeros(f.N)
    lev = level + n - 1
    return scale(mat_inv(build_K(f, 1, lev)) @ build_Psi(f, lev).coeff(0).T, n)


def B_closed(f: FamilySpec, n: int, level: int = 0) -> np.ndarray:
    return X_closed(f, n, level) - X_closed(f, n + 1, level)


def H0_general(f: FamilySpec, level: int) -> GammaUnits:
    """``H_0^(alpha, nu+level) = M H_0^(nu', nu') M^T`` with ``nu' = nu+level``."""
    nup = f.nu_at(level)
    p = f.struct
    h = H0_formula(p.with_alpha(nup), nup, f.working_delta(level))
    m = build_M(f.alpha, nup, p)
    return GammaUnits(m @ h.value @ m.T, nup)


@lru_cache(maxsize=None)
def H_closed(f: FamilySpec, n: int, level: int = 0, power_form: bool = False) -> GammaUnits:
    """``H_n = (-1)^n n! G_n H_0^(alpha, nu+n)`` in ``Gamma(nu+level+1)`` units."""
    g = rodrigues_constant(f, n, level, power_form)
    h0 = H0_general(f, level + n).in_units(f.nu_at(level))
    return GammaUnits(scale(g @ h0, (-1) ** n * factorial(n)), f.nu_at(level))


def H_oracle(f: FamilySpec, n: int, level: int = 0) -> GammaUnits:
    p = monic_from_moments(f, level, n)
    return family_inner(f, level, p, p)


def C_closed(f: FamilySpec, n: int, level: int = 0) -> np.ndarray:
    """``C_n = H_n H_(n-1)^-1`` from the closed-form norms."""
    return H_closed(f, n, level).value @ mat_inv(H_closed(f, n - 1, level).value)


def _C_product(f: FamilySpec, n: int, level: int, power_form: bool, middle_sign: int) -> np.ndarray:
    nup = f.nu_at(level) + n
    p = f.struct
    m_n = build_M(f.alpha, nup, p)
    m_n1 = build_M(f.alpha, nup - 1, p)
    g_n = rodrigues_constant(f.with_alpha(nup), n, level, power_form)
    g_n1 = rodrigues_constant(f.with_alpha(nup - 1), n - 1, level, power_form)
    h0_n = H0_formula(p.with_alpha(nup), nup, f.working_delta(level + n)).value
    h0_n1 = H0_formula(p.with_alpha(nup - 1), nup - 1, f.working_delta(level + n - 1)).value
    middle = identity(f.N) + scale(build_A(p).T.copy(), middle_sign)
    out = m_n @ g_n @ h0_n @ middle @ mat_inv(h0_n1) @ mat_inv(g_n1) @ mat_inv(m_n1)
    # H_0 at consecutive levels carry Gamma units one apart
    return scale(out, -n * nup)


def C_product(f: FamilySpec, n: int, level: int = 0) -> np.ndarray:
    """``C_n`` as a product of level-``nu+n`` data.

    ``-n (nu+n) M_n G_n H_0 (1 + A^T) H_0'^-1 G_(n-1)^-1 M_(n-1)^-1`` where
    primes denote level ``nu+n-1``, ``G`` is taken at ``alpha = nu+n`` resp.
    ``nu+n-1``, and ``1 + A^T = M_n^T (M_(n-1)^T)^-1``.
    """
    return _C_product(f, n, level, power_form=False, middle_sign=1)


def C_power_form(f: FamilySpec, n: int, level: int = 0) -> np.ndarray:
    """Variant of :func:`C_product` with ``K``-powers and ``(1 - A^T)``; kept for comparison."""
    return _C_product(f, n, level, power_form=True, middle_sign=-1)


@lru_cache(maxsize=None)
def monic_from_recurrence(f: FamilySpec, level: int, n: int) -> tuple:
    """``P_0 .. P_n`` from ``P_(j+1) = (x - B_j) P_j - C_j P_(j-1)``."""
    N = f.N
    x = MatPoly.x(N)
    polys = [MatPoly.identity(N)]
    prev = MatPoly.zero(N)
    for j in range(n):
        nxt = x @ polys[j] - B_closed(f, j, level) @ polys[j]
        if j > 0:
            nxt = nxt - C_closed(f, j, level) @ prev
        prev = polys[j]
        polys.append(nxt)
    return tuple(polys)


# ---------------------------------------------------------------------------
# sequence record


@dataclass(frozen=True)
class MVOPSequence:
    family: FamilySpec
    level: int
    polys: tuple
    norms: tuple
    B: tuple
    C: tuple
    X: tuple

    @classmethod
    def build(cls, f: FamilySpec, nmax: int, level: int = 0, method: str = "recurrence") -> MVOPSequence:
        if method == "recurrence":
            polys = monic_from_recurrence(f, level, nmax)
        elif method == "rodrigues":
            polys = tuple(monic_from_rodrigues(f, level, n) for n in range(nmax + 1))
        elif method == "moments":
            polys = tuple(monic_from_moments(f, level, n) for n in range(nmax + 1))
        else:
            raise ValueError(f"unknown method {method!r}")
        norms = tuple(H_closed(f, n, level) for n in range(nmax + 1))
        B = tuple(B_closed(f, n, level) for n in range(nmax + 1))
        C = tuple(C_closed(f, n, level) for n in range(1, nmax + 1))
        X = tuple(X_closed(f, n, level) for n in range(nmax + 1))
        return cls(f, level, polys, norms, B, C, X)


# ---------------------------------------------------------------------------
# checks


def generator_agreement(f: FamilySpec, nmax: int, level: int = 0) -> list[Check]:
    rec = monic_from_recurrence(f, level, nmax)
    out = []
    for n in range(nmax + 1):
        mom = monic_from_moments(f, level, n)
        try:
            rod = monic_from_rodrigues(f, level, n)
        except NoUniqueSolution:
            rod = None
        out.append(
            Check(
                f"P_{n}: moments = Rodrigues = recurrence",
                "Rodrigues formula and three-term recurrence",
                rod is not None and mom == rod and mom == rec[n],
                {"n": n, "level": level, "rodrigues_solved": rod is not None},
            )
        )
    return out


def orthogonality_checks(f: FamilySpec, nmax: int, level: int = 0) -> list[Check]:
    polys = [monic_from_moments(f, level, n) for n in range(nmax + 1)]
    out = []
    bad = []
    for n in range(nmax + 1):
        for m in range(n):
            if not is_zero(family_inner(f, level, polys[n], polys[m]).value):
                bad.append([n, m])
    out.append(
        Check("<P_n, P_m> = 0 for n != m", "orthogonality", not bad, {"nonzero_pairs": bad})
    )
    for n in range(nmax + 1):
        oracle = family_inner(f, level, polys[n], polys[n])
        closed = H_closed(f, n, level)
        h = oracle.value
        out.append(
            Check(
                f"H_{n}: closed form = <P_n, P_n>, symmetric, positive definite",
                "squared norm from the Rodrigues formula",
                closed == oracle and mat_equal(h, h.T) and all(m > 0 for m in leading_minors(h)),
                {"n": n, "level": level},
            )
        )
    return out


def recurrence_checks(f: FamilySpec, nmax: int, level: int = 0) -> list[Check]:
    """Closed-form ``B_n, C_n`` against oracle ratios and the recurrence itself."""
    out = []
    x = MatPoly.x(f.N)
    for n in range(nmax):
        pn = monic_from_moments(f, level, n)
        p1 = monic_from_moments(f, level, n + 1)
        b = B_closed(f, n, level)
        lhs = x @ pn - p1 - b @ pn
        ok = True
        if n > 0:
            c = C_closed(f, n, level)
            h_n = H_oracle(f, n, level).value
            h_m = H_oracle(f, n - 1, level).value
            ok = mat_equal(c, h_n @ mat_inv(h_m)) and mat_equal(c, C_product(f, n, level))
            lhs = lhs - c @ monic_from_moments(f, level, n - 1)
        out.append(
            Check(
                f"x P_{n} = P_{n + 1} + B_{n} P_{n} + C_{n} P_{n - 1}",
                "coefficients of the three-term recurrence",
                ok and lhs.is_zero(),
                {"n": n, "level": level},
            )
        )
    return out


def derivative_shift_check(f: FamilySpec, n: int, level: int = 0) -> list[Check]:
    """Lowering ``d/dx`` and raising ``S`` on the monic sequence."""
    p_n = monic_from_moments(f, level, n)
    p_up = monic_from_moments(f, level + 1, n - 1)
    k = build_K(f, n, level)
    ref = "shift operators"
    return [
        Check(f"dP_{n}/dx = {n} P_{n - 1}^(nu+1)", ref, p_n.derivative() == p_up * n, {"n": n, "level": level}),
        Check(
            f"P_{n - 1}^(nu+1) S = K_{n} P_{n}",
            ref,
            raising_operator(f, p_up, level) == k @ p_n,
            {"n": n, "level": level},
        ),
    ]


def perturbation_check(f: FamilySpec, n: int, level: int = 0) -> Check:
    """Changing one coefficient of ``P_n`` must break orthogonality."""
    p = monic_from_moments(f, level, n)
    coeffs = [c.copy() for c in p.coeffs]
    coeffs[0][0, 0] = coeffs[0][0, 0] + ONE
    bumped = MatPoly(coeffs, f.N)
    broken = any(
        not is_zero(family_inner(f, level, bumped, monic_from_moments(f, level, m)).value)
        for m in range(n)
    )
    return Check(f"perturbed P_{n} is not orthogonal", "uniqueness of the monic sequence", broken, {"n": n})


def power_form_checks(f: FamilySpec, n: int, level: int = 0) -> list[Check]:
    """Variants that take ``G_n`` as the power ``K_n^-n``, and the product formula for ``C_n``."""
    ref = "Rodrigues formula and three-term recurrence"
    out = []
    try:
        rod = monic_from_rodrigues(f, level, n, power_form=True)
        ok = rod == monic_from_moments(f, level, n)
    except NoUniqueSolution:
        ok = False
    out.append(Check(f"Rodrigues with G_{n} = K_{n}^-{n} gives P_{n}", ref, ok, {"n": n, "N": f.N}))
    out.append(
        Check(
            f"H_{n} with G_{n} = K_{n}^-{n} equals <P_n, P_n>",
            ref,
            H_closed(f, n, level, power_form=True) == H_oracle(f, n, level),
            {"n": n, "N": f.N},
        )
    )
    if n >= 1:
        out.append(
            Check(
                f"product formula for C_{n} equals H_n H_(n-1)^-1",
                ref,
                mat_equal(C_power_form(f, n, level), C_closed(f, n, level)),
                {"n": n, "N": f.N},
            )
        )
    return out
