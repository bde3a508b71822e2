"""Parameter families satisfying the Pearson conditions, and the Pearson data.

A family fixes ``N, alpha, nu``, the squares ``mu_k^2`` and per-level
coefficients ``c, d`` with

    delta_k^(nu+j+1) = (k d^(nu+j) + c^(nu+j)) delta_k^(nu+j)                  (shift)
    mu_(k+1)^2 / mu_k^2 = d^(nu+j) k (N-k) delta_(k+1)^(nu+j) / delta_k^(nu+j+1)  (coupling)

Levels are integer shifts ``j`` of ``nu``. ``delta`` is normalised by
``delta_1^(nu) = 1``; every level is derived from the base by the shift rule.

Working frame
-------------
``mu`` enters only through conjugation by ``S = diag(mu)``: the weight is
``S W~ S`` where ``W~`` uses ``mu = 1`` and ``delta~_k = delta_k / mu_k^2``,
and ``P_n = S P~_n S^-1``, ``H_n = S H~_n S``. When every ``mu_k^2`` is a
rational square the family is computed directly with that ``mu``
(``frame == "mu"``); otherwise the exact computation runs on the balanced
data (``frame == "balanced"``) and ``mu``-frame values are the conjugates
above. Identities are frame independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._backend import ONE, Q, rational_sqrt
from .matpoly import MatPoly, diag, identity, mat_equal, mat_inv, scale
from .report import Check
from .scalar import factorial, pochhammer
from .structure import StructParams, build_A, build_J, L_at_zero
from .weight import WeightForm, build_weight


class FamilyError(ValueError):
    """The parameters violate the shift or coupling conditions."""

    def __init__(self, message, checks=()):
        super().__init__(message)
        self.checks = tuple(checks)


@dataclass(frozen=True)
class FamilySpec:
    N: int
    alpha: object
    nu: object
    mu_squared: tuple
    c: tuple  # c^(nu+j), j = 0..max_shift
    d: tuple  # d^(nu+j), j = 0..max_shift
    delta: tuple  # delta^(nu+j), j = 0..max_shift+1 (true frame, delta_1^(nu) = 1)
    max_shift: int
    label: str = "custom"
    validation: tuple = field(default=(), hash=False)
    notes: tuple = field(default=(), compare=False, hash=False)

    # frame --------------------------------------------------------------------

    @property
    def mu(self):
        roots = [rational_sqrt(m) for m in self.mu_squared]
        return None if any(r is None for r in roots) else tuple(roots)

    @property
    def frame(self) -> str:
        return "mu" if self.mu is not None else "balanced"

    @property
    def struct(self) -> StructParams:
        mu = self.mu
        return StructParams(self.N, self.alpha, mu if mu is not None else (1,) * self.N)

    def working_delta(self, level: int) -> tuple:
        self._require_weight(level)
        if self.frame == "mu":
            return self.delta[level]
        return tuple(dk / m for dk, m in zip(self.delta[level], self.mu_squared))

    def nu_at(self, level: int):
        return self.nu + level

    # levels -------------------------------------------------------------------

    def _require_weight(self, level: int):
        if not 0 <= level <= self.max_shift + 1:
            raise ValueError(f"level {level} outside 0..{self.max_shift + 1}")

    def _require_pearson(self, level: int):
        if not 0 <= level <= self.max_shift:
            raise ValueError(f"Pearson data needs level in 0..{self.max_shift}, got {level}")

    def c_over_d(self, level: int):
        self._require_pearson(level)
        return self.c[level] / self.d[level]

    @property
    def rho(self):
        """Constant ``rho`` with ``c/d = nu + j + rho`` at every level, else ``None``."""
        vals = {self.c[j] / self.d[j] - (self.nu + j) for j in range(self.max_shift + 1)}
        return vals.pop() if len(vals) == 1 else None

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.validation)

    @lru_cache(maxsize=None)
    def weight(self, level: int = 0) -> WeightForm:
        """``W^(alpha, nu+level)`` in the working frame."""
        return build_weight(self.struct, self.nu_at(level), self.working_delta(level), check=False)

    def with_alpha(self, alpha) -> FamilySpec:
        return FamilySpec(
            self.N, Q(alpha), self.nu, self.mu_squared, self.c, self.d, self.delta,
            self.max_shift, self.label, self.validation, self.notes,
        )

    def describe(self) -> dict:
        from ._backend import to_str

        return {
            "label": self.label,
            "N": self.N,
            "alpha": to_str(self.alpha),
            "nu": to_str(self.nu),
            "mu_squared": [to_str(m) for m in self.mu_squared],
            "c": [to_str(v) for v in self.c],
            "d": [to_str(v) for v in self.d],
            "delta_base": [to_str(v) for v in self.delta[0]],
            "max_shift": self.max_shift,
            "frame": self.frame,
            "rho": None if self.rho is None else to_str(self.rho),
        }


def _validate(N, nu, mu_sq, c, d, delta) -> list[Check]:
    checks = []
    positive = all(v > 0 for level in delta for v in level)
    checks.append(Check("delta_k > 0 at every level", "positivity of the weight", positive))
    checks.append(
        Check(
            "d > 0 and c >= 0 at every level",
            "shift condition on delta",
            all(v > 0 for v in d) and all(v >= 0 for v in c),
        )
    )
    bad_shift = []
    for j in range(len(c)):
        for k in range(1, N + 1):
            if delta[j + 1][k - 1] != (k * d[j] + c[j]) * delta[j][k - 1]:
                bad_shift.append({"level": j, "k": k})
    checks.append(
        Check(
            "delta^(nu+j+1) = (d J + c) delta^(nu+j)",
            "shift condition on delta",
            not bad_shift,
            {"violations": bad_shift},
        )
    )
    bad_coupling = []
    for j in range(len(c)):
        for k in range(1, N):
            lhs = mu_sq[k] / mu_sq[k - 1]
            rhs = d[j] * k * (N - k) * delta[j][k] / delta[j + 1][k - 1]
            if lhs != rhs:
                bad_coupling.append({"level": j, "k": k, "lhs": str(lhs), "rhs": str(rhs)})
    checks.append(
        Check(
            "mu_(k+1)^2/mu_k^2 = d k(N-k) delta_(k+1)^(nu) / delta_k^(nu+1) at every level",
            "coupling condition between mu and delta",
            not bad_coupling,
            {"violations": bad_coupling},
        )
    )
    return checks


def iterated_delta(N, mu_squared, c_over_d) -> tuple:
    """``delta_k`` from ``delta_k/mu_k^2 = (1+c/d)_(k-1) / ((k-1)! (N-k+1)_(k-1)) delta_1/mu_1^2``."""
    r = Q(c_over_d)
    mu_squared = [Q(m) for m in mu_squared]
    out = []
    for k in range(1, N + 1):
        ratio = pochhammer(1 + r, k - 1) / (factorial(k - 1) * pochhammer(N - k + 1, k - 1))
        out.append(ratio * mu_squared[k - 1] / mu_squared[0])
    return tuple(out)


def family_from_iterated(
    N: int,
    alpha,
    nu,
    mu_squared,
    c_over_d,
    d_levels=(1,),
    max_shift: int = 6,
    *,
    c_levels=None,
    delta_base=None,
    strict: bool = True,
    label: str = "custom",
    notes=(),
) -> FamilySpec:
    """Build a family from the iterated recursion and validate it.

    ``c_over_d`` is the base-level ratio; higher levels use
    ``c/d = c_over_d + j`` unless ``c_levels`` is given explicitly.
    ``d_levels`` is padded with its last entry. ``delta_base`` overrides the
    iterated base ``delta`` (used to probe invalid input).
    """
    alpha, nu = Q(alpha), Q(nu)
    mu_squared = tuple(Q(m) for m in mu_squared)
    if len(mu_squared) != N:
        raise ValueError(f"need {N} mu_squared values")
    if any(m <= 0 for m in mu_squared):
        raise ValueError("mu_squared entries must be positive")
    d_levels = [Q(v) for v in d_levels] or [ONE]
    d = tuple(d_levels[j] if j < len(d_levels) else d_levels[-1] for j in range(max_shift + 1))
    if c_levels is None:
        c = tuple(d[j] * (Q(c_over_d) + j) for j in range(max_shift + 1))
    else:
        c_levels = [Q(v) for v in c_levels]
        c = tuple(c_levels[j] if j < len(c_levels) else c_levels[-1] for j in range(max_shift + 1))
    if delta_base is None:
        base = iterated_delta(N, mu_squared, c[0] / d[0])
    else:
        base = tuple(Q(v) for v in delta_base)
        if len(base) != N:
            raise ValueError(f"need {N} delta values")
    levels = [base]
    for j in range(max_shift + 1):
        levels.append(tuple((k * d[j] + c[j]) * levels[j][k - 1] for k in range(1, N + 1)))
    checks = _validate(N, nu, mu_squared, c, d, levels)
    fam = FamilySpec(
        N, alpha, nu, mu_squared, c, d, tuple(levels), max_shift, label, tuple(checks), tuple(notes)
    )
    if strict and not fam.valid:
        failed = [ch.identity for ch in checks if not ch.passed]
        raise FamilyError(f"inconsistent family parameters: {failed}", checks)
    return fam


def _normalized(seq):
    return tuple(v / seq[0] for v in seq)


def _coupling_holds(N, mu_sq, c_over_d, delta):
    """Coupling condition at one level for a given base ``delta`` (with d = 1)."""
    nxt = [(k + c_over_d) * delta[k - 1] for k in range(1, N + 1)]
    return all(
        mu_sq[k] / mu_sq[k - 1] == k * (N - k) * delta[k] / nxt[k - 1] for k in range(1, N)
    )


def example1(N: int, alpha, nu, max_shift: int = 6, strict: bool = True) -> FamilySpec:
    """``mu_k^2 = (N-k+1)_k``, ``c = nu``, ``d = 1``; delta from the iterated recursion.

    The notes record whether the closed form ``delta_k = Gamma(nu)(nu)_k``
    (equivalently ``delta_(k+1) = (k + c/d) delta_k``) meets the coupling
    condition for this ``mu``; it does not once ``N >= 3``.
    """
    nu = Q(nu)
    mu_sq = tuple(pochhammer(N - k + 1, k) for k in range(1, N + 1))
    closed = _normalized(tuple(pochhammer(nu, k) for k in range(1, N + 1)))
    iterated = _normalized(iterated_delta(N, mu_sq, nu))
    note = Check(
        "closed form delta_k = Gamma(nu)(nu)_k satisfies the coupling condition",
        "first example family",
        _coupling_holds(N, mu_sq, nu, closed),
        {
            "closed_form": [str(v) for v in closed],
            "iterated": [str(v) for v in iterated],
            "agree": closed == iterated,
        },
    )
    return family_from_iterated(
        N, alpha, nu, mu_sq, nu, (1,), max_shift, strict=strict, label="example1", notes=(note,)
    )


def example2(N: int, alpha, nu, lam=1, max_shift: int = 6, strict: bool = True) -> FamilySpec:
    """``mu_k^2 = (k-1)! (N-k+1)_(k-1)``, ``c = nu*lam``, ``d = lam``."""
    nu, lam = Q(nu), Q(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    mu_sq = tuple(factorial(k - 1) * pochhammer(N - k + 1, k - 1) for k in range(1, N + 1))
    closed = _normalized(tuple(pochhammer(nu, k) for k in range(1, N + 1)))
    note = Check(
        "closed form delta_k = lambda^nu Gamma(nu+k) matches the iterated recursion",
        "second example family",
        closed == _normalized(iterated_delta(N, mu_sq, nu)),
    )
    return family_from_iterated(
        N, alpha, nu, mu_sq, nu, (lam,), max_shift, strict=strict, label="example2", notes=(note,)
    )


def example3(N: int, alpha, nu, rho=1, C=0, max_shift: int = 6, strict: bool = True) -> FamilySpec:
    """``mu_k = 1``, ``d = rho``, ``c = C + nu*rho``."""
    nu, rho, C = Q(nu), Q(rho), Q(C)
    if rho <= 0 or C < 0:
        raise ValueError("need rho > 0 and C >= 0")
    mu_sq = (ONE,) * N
    closed = _normalized(
        tuple(
            pochhammer(1 + nu + C / rho, k - 1) / (factorial(k - 1) * pochhammer(N - k + 1, k - 1))
            for k in range(1, N + 1)
        )
    )
    note = Check(
        "closed form delta_k = (1+nu+C/rho)_(k-1)/((k-1)!(N-k+1)_(k-1)) matches the iterated recursion",
        "third example family",
        closed == _normalized(iterated_delta(N, mu_sq, nu + C / rho)),
    )
    return family_from_iterated(
        N, alpha, nu, mu_sq, nu + C / rho, (rho,), max_shift, strict=strict, label="example3",
        notes=(note,),
    )


def example(which: int, N: int, alpha, nu, max_shift: int = 6, **params) -> FamilySpec:
    if which == 1:
        return example1(N, alpha, nu, max_shift)
    if which == 2:
        return example2(N, alpha, nu, params.get("lam", 1), max_shift)
    if which == 3:
        return example3(N, alpha, nu, params.get("rho", 1), params.get("C", 0), max_shift)
    raise ValueError(f"unknown example {which}")


# ---------------------------------------------------------------------------
# Pearson polynomials and the shift constant


def _conj_T(f: FamilySpec, inner: MatPoly) -> MatPoly:
    """``(L(0)^T)^-1 inner L(0)^T``."""
    l0t = L_at_zero(f.struct).T.copy()
    return mat_inv(l0t) @ inner @ l0t


def build_Phi(f: FamilySpec, level: int = 0) -> MatPoly:
    """``Phi`` with ``W^(nu) Phi = W^(nu+1)``."""
    f._require_pearson(level)
    N = f.N
    c, d = f.c[level], f.d[level]
    A, J = build_A(f.struct), build_J(N)
    x = MatPoly.x(N)
    inner = (x @ x) @ scale(A.T.copy(), -d) + x @ (scale(J, d) + scale(identity(N), c))
    return _conj_T(f, inner)


def build_Psi(f: FamilySpec, level: int = 0) -> MatPoly:
    """``Psi`` with ``W^(nu) Psi = d/dx W^(nu+1)``."""
    f._require_pearson(level)
    N = f.N
    c, d = f.c[level], f.d[level]
    nu = f.nu_at(level)
    A, J, I = build_A(f.struct), build_J(N), identity(N)
    x = MatPoly.x(N)
    dl0 = diag(f.working_delta(level))
    dl1 = diag(f.working_delta(level + 1))
    slope = scale(J - A.T @ (J + scale(I, nu + 1)) - scale(I, N + 1), d) - scale(I, c)
    const = (J + scale(I, nu + 1)) @ (scale(J, d) + scale(I, c)) + mat_inv(dl0) @ A @ dl1
    return _conj_T(f, x @ slope + const)


def build_K(f: FamilySpec, n: int, level: int = 0) -> np.ndarray:
    """``K_n`` with ``P_(n-1)^(nu+1) S = K_n P_n^(nu)``."""
    f._require_pearson(level)
    N = f.N
    c, d = f.c[level], f.d[level]
    nu = f.nu_at(level)
    A, J, I = build_A(f.struct), build_J(N), identity(N)
    inner = scale(J - (J + scale(I, nu + n)) @ A - scale(I, N + 1), d) - scale(I, c)
    l0 = L_at_zero(f.struct)
    return l0 @ inner @ mat_inv(l0)


def conjugated_K(f: FamilySpec, n: int, level: int = 0) -> np.ndarray:
    """``L(0)^-1 K_n L(0)`` (lower triangular)."""
    l0 = L_at_zero(f.struct)
    return mat_inv(l0) @ build_K(f, n, level) @ l0


def verify_pearson(f: FamilySpec, level: int = 0) -> list[Check]:
    """Pearson equations as exact identities of the polynomial parts."""
    w0, w1 = f.weight(level), f.weight(level + 1)
    phi, psi = build_Phi(f, level), build_Psi(f, level)
    ref = "Pearson equations"
    # a degree-two Phi needs a nonzero A_mu, so N = 1 gives degree one
    want_phi = 2 if f.N > 1 else 1
    detail = {"level": level, "N": f.N}
    return [
        Check("W^(nu) Phi = W^(nu+1)", ref, w0 @ phi == w1, detail),
        Check("W^(nu) Psi = d/dx W^(nu+1)", ref, w0 @ psi == w1.derivative(), detail),
        Check(
            f"deg Phi = {want_phi}",
            "Phi is a polynomial of degree two",
            phi.degree == want_phi,
            {**detail, "degree": phi.degree},
        ),
        Check("deg Psi = 1", "Psi is a polynomial of degree one", psi.degree == 1, {**detail, "degree": psi.degree}),
    ]


def k_level_invariance(f: FamilySpec, n: int, j: int, level: int = 0) -> Check:
    """Whether ``K_(n-j)^(nu+j) == K_n^(nu)``.

    Both have conjugated diagonal ``d(i-N-1) - c`` evaluated at their own
    level, so the equality needs ``c`` and ``d`` to be level independent.
    """
    a = build_K(f, n, level)
    b = build_K(f, n - j, level + j)
    return Check(
        f"K_{n - j}^(nu+{j}) = K_{n}^(nu)",
        "K depends on nu+n only",
        mat_equal(a, b),
        {"n": n, "j": j, "level": level, "c": [str(f.c[level]), str(f.c[level + j])]},
    )


def raising_operator(f: FamilySpec, q: MatPoly, level: int = 0) -> MatPoly:
    """``Q S = Q' Phi^T + Q Psi^T``, mapping level ``nu+1`` polynomials to level ``nu``."""
    return q.derivative() @ build_Phi(f, level).T + q @ build_Psi(f, level).T
