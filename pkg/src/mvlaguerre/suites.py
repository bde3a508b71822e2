"""Verification suites grouping the identity checks, and family loading."""

from __future__ import annotations

import traceback
from dataclasses import dataclass

from ._backend import Q
from .diffops import (
    build_calD,
    build_D,
    build_D_tilde,
    burchnall_check,
    check_conjugation,
    check_darboux_eigen,
    check_darboux_relation,
    check_eigen_calD,
    check_eigen_D,
    check_factorisation,
    check_symmetry,
    diagonal_weight,
    Gamma_n,
    hermite_connection_check,
    phi_product_checks,
)
from .matpoly import MatPoly
from .mvop import (
    derivative_shift_check,
    generator_agreement,
    monic_from_moments,
    orthogonality_checks,
    perturbation_check,
    power_form_checks,
    recurrence_checks,
)
from .pearson import (
    FamilySpec,
    conjugated_K,
    example1,
    example2,
    example3,
    family_from_iterated,
    k_level_invariance,
    verify_pearson,
)
from .quadrature import compare, cross_check_inner, gauss_laguerre, numeric_inner_product, positivity_probe
from .report import Check
from .scalar import RatPoly, laguerre_inversion_sum, pochhammer
from .serialize import parse_rational
from .structure import build_L, check_commutations, structure_checks
from .weight import H0_chu_vandermonde, H0_formula, exact_moment

SUITES = ("structure", "pearson", "mvop", "diffops", "numeric")
EXTRA_SUITES = ("variants",)


@dataclass(frozen=True)
class Record:
    suite: str
    check: Check

    def to_dict(self) -> dict:
        d = self.check.to_dict()
        d["detail"] = {**d["detail"], "suite": self.suite}
        return d


# ---------------------------------------------------------------------------
# family loading


def _params(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if v is not None}


def family_from_document(doc: dict, max_shift: int, overrides: dict | None = None) -> FamilySpec:
    """Build a family from ``{"example": k, "params": {...}}`` or an explicit document.

    Explicit documents use keys ``N, alpha, nu, mu_squared, c_over_d,
    d_levels`` and optionally ``c_levels``, ``delta`` (base-level override)
    and ``max_shift``. They are not required to be consistent: validation
    results are carried in the family and reported by the ``pearson`` suite.
    """
    overrides = _params(overrides or {})
    if "example" in doc:
        params = {**_params(doc.get("params", {})), **overrides}
        which = int(doc["example"])
        N = int(params.get("N", 2))
        nu = parse_rational(params.get("nu", 1))
        alpha = parse_rational(params.get("alpha", nu))
        shift = int(params.get("max_shift", max_shift))
        if which == 1:
            return example1(N, alpha, nu, shift)
        if which == 2:
            return example2(N, alpha, nu, parse_rational(params.get("lambda", 1)), shift)
        if which == 3:
            return example3(
                N, alpha, nu, parse_rational(params.get("rho", 1)), parse_rational(params.get("C", 0)), shift
            )
        raise ValueError(f"unknown example {which}")
    doc = {**doc, **overrides}
    missing = [k for k in ("N", "alpha", "nu", "mu_squared", "c_over_d") if k not in doc]
    if missing:
        raise ValueError(f"family document lacks {missing}")
    return family_from_iterated(
        int(doc["N"]),
        parse_rational(doc["alpha"]),
        parse_rational(doc["nu"]),
        [parse_rational(v) for v in doc["mu_squared"]],
        parse_rational(doc["c_over_d"]),
        [parse_rational(v) for v in doc.get("d_levels", [1])],
        int(doc.get("max_shift", max_shift)),
        c_levels=[parse_rational(v) for v in doc["c_levels"]] if "c_levels" in doc else None,
        delta_base=[parse_rational(v) for v in doc["delta"]] if "delta" in doc else None,
        strict=False,
    )


# ---------------------------------------------------------------------------
# suites


def structure_suite(f: FamilySpec, nmax: int, levels) -> list[Check]:
    p = f.struct
    out = structure_checks(p, lam=f.alpha + Q(3, 2)) + check_commutations(p)
    bad = [
        [i, j]
        for i in range(9)
        for j in range(i + 1)
        if laguerre_inversion_sum(i, j, f.alpha) != RatPoly.constant(1 if i == j else 0)
    ]
    out.append(
        Check(
            "sum_k L_(i-k)^(-alpha-i-1)(-x) L_(k-j)^(alpha+j)(x) = delta_ij, 0 <= j <= i <= 8",
            "Laguerre inversion formula",
            not bad,
            {"failures": bad},
        )
    )
    return out


def pearson_suite(f: FamilySpec, nmax: int, levels) -> list[Check]:
    out = list(f.validation)
    if not f.valid:
        return out
    for lev in levels:
        out += verify_pearson(f, lev)
        for n in range(nmax + 1):
            kt = conjugated_K(f, n, lev)
            c, d = f.c[lev], f.d[lev]
            lower = all(kt[i, j] == 0 for i in range(f.N) for j in range(i + 1, f.N))
            diag_ok = all(kt[i, i] == d * (i + 1 - f.N - 1) - c and kt[i, i] < 0 for i in range(f.N))
            out.append(
                Check(
                    f"L(0)^-1 K_{n} L(0) lower triangular with diagonal d(j-N-1)-c < 0",
                    "shift operators",
                    lower and diag_ok,
                    {"n": n, "level": lev},
                )
            )
    return out


def mvop_suite(f: FamilySpec, nmax: int, levels) -> list[Check]:
    out = []
    for lev in levels:
        out += generator_agreement(f, nmax, lev)
        out += orthogonality_checks(f, nmax, lev)
        out += recurrence_checks(f, nmax, lev)
        for n in range(1, nmax + 1):
            out += derivative_shift_check(f, n, lev)
        if nmax >= 1:
            out.append(perturbation_check(f, nmax, lev))
    g = f.with_alpha(f.nu)
    w = g.weight(0)
    h0 = H0_formula(g.struct, g.nu, g.working_delta(0))
    out.append(
        Check(
            "zeroth moment closed form = exact moment (alpha = nu)",
            "zeroth moment",
            h0 == exact_moment(w, 0),
        )
    )
    cv = H0_chu_vandermonde(g.struct, g.nu, g.c_over_d(0), g.working_delta(0))
    out.append(
        Check(
            "summed zeroth moment matches one candidate denominator",
            "Chu-Vandermonde evaluation of the zeroth moment",
            cv.matching_base is not None,
            {"matching_denominator": cv.matching_base},
        )
    )
    return out


def diffops_suite(f: FamilySpec, nmax: int, levels) -> list[Check]:
    out = []
    for lev in levels:
        w = f.weight(lev)
        for n in range(nmax + 1):
            out += check_eigen_D(f, n, lev)
            out += check_eigen_calD(f, n, lev)
            out += check_darboux_eigen(f, n, lev)[:1]
        out += check_conjugation(f, lev) + check_factorisation(f, lev)
        out += check_symmetry(build_D(f, lev), w, "D")
        out += check_symmetry(build_calD(f, lev), w, "calD")
        out += check_symmetry(build_D_tilde(f, lev), diagonal_weight(f, lev), "D~ vs T")
        out.append(check_darboux_relation(f, lev))
        for k in range(1, 3):
            out.append(phi_product_checks(f, k, lev)[0])
        for n in range(1, nmax + 1):
            for m in range(1, nmax + 1 - n):
                if n + m <= 4:
                    out.append(burchnall_check(f, n, m, lev)[0])
    for n in range(3):
        for m in range(n, n + 5):
            out.append(hermite_connection_check(m, n, f.alpha))
    return out


def numeric_suite(f: FamilySpec, nmax: int, levels, points: int | None = None) -> list[Check]:
    out = []
    for lev in levels:
        w = f.weight(lev)
        polys = [monic_from_moments(f, lev, n) for n in range(nmax + 1)]
        worst = {"max_rel": 0.0, "max_abs_at_zeros": 0.0, "max_raw_abs_at_zeros": 0.0}
        ok = True
        for n in range(nmax + 1):
            for m in range(n + 1):
                res = cross_check_inner(polys[n], polys[m], w, points)
                ok &= res["ok"]
                for k in worst:
                    worst[k] = max(worst[k], res[k])
        out.append(
            Check(
                "quadrature <P_n, P_m> matches exact values",
                "orthogonality",
                ok,
                {"level": lev, "nmax": nmax, **worst},
            )
        )
        mom_ok = True
        worst_m = 0.0
        eye = MatPoly.identity(f.N)
        for k in range(11):
            xk = MatPoly.monomial(k, eye.coeffs[0])
            res = compare(numeric_inner_product(xk, eye, w, points), exact_moment(w, k).value)
            mom_ok &= res["max_rel"] <= 1e-10
            worst_m = max(worst_m, res["max_rel"])
        out.append(Check("quadrature moments of order <= 10 match exact moments", "moments of the weight", mom_ok, {"level": lev, "max_rel": worst_m}))
        out.append(positivity_probe(w).as_check(f" (level {lev})"))
    rule = gauss_laguerre(float(f.nu), 12)
    exact = all(
        abs(float(sum(rule.weights * rule.nodes**m)) / float(pochhammer(f.nu + 1, m)) - 1) < 1e-12
        for m in range(2 * rule.points)
    )
    out.append(Check("Gauss-Laguerre rule exact on monomials up to 2n-1", "quadrature", exact, {"points": rule.points}))
    return out


def variants_suite(f: FamilySpec, nmax: int, levels) -> list[Check]:
    """Alternative readings of formulas that the main suites replace."""
    out = list(f.notes)
    for lev in levels:
        for n in range(1, min(nmax, 4) + 1):
            for j in range(1, n + 1):
                if lev + j <= f.max_shift:
                    out.append(k_level_invariance(f, n, j, lev))
        for n in range(1, nmax + 1):
            out += power_form_checks(f, n, lev)
        for n in range(1, nmax + 1):
            out += check_darboux_eigen(f, n, lev)[1:]
        out.append(phi_product_checks(f, 1, lev)[1])
        for n, m in ((1, 1), (2, 1), (2, 2)):
            if n + m <= max(nmax, 2):
                out.append(burchnall_check(f, n, m, lev)[1])
        p_n = monic_from_moments(f, lev, max(nmax, 1))
        pl = p_n @ build_L(f.struct)
        bare = build_D_tilde(f, lev, zeroth="bare").apply(pl) == Gamma_n(f, max(nmax, 1), lev) @ pl
        out.append(
            Check(
                "(P_n L) D~ = Gamma_n (P_n L) with zeroth-order term -J",
                "conjugated operator",
                bare,
                {"alpha_minus_nu": str(f.alpha - f.nu_at(lev))},
            )
        )
    g = f.with_alpha(f.nu)
    cv = H0_chu_vandermonde(g.struct, g.nu, g.c_over_d(0), g.working_delta(0))
    out += list(cv.checks)
    return out


_RUNNERS = {
    "structure": structure_suite,
    "pearson": pearson_suite,
    "mvop": mvop_suite,
    "diffops": diffops_suite,
    "numeric": numeric_suite,
    "variants": variants_suite,
}


def expand_suites(names) -> list[str]:
    out = []
    for name in names:
        name = name.strip().lower()
        if name == "all":
            out += [s for s in SUITES if s not in out]
        elif name in _RUNNERS:
            if name not in out:
                out.append(name)
        elif name:
            raise ValueError(f"unknown suite {name!r}")
    return out


def run_suites(f: FamilySpec, names, nmax: int, levels=(0,), points: int | None = None) -> list[Record]:
    """Run suites; an exception inside a suite becomes a failing record."""
    records = []
    for name in expand_suites(names):
        runner = _RUNNERS[name]
        if name != "pearson" and name != "structure" and not f.valid:
            records.append(
                Record(name, Check(f"{name} suite", "family validation", False, {"skipped": "family parameters are inconsistent"}))
            )
            continue
        try:
            checks = runner(f, nmax, levels, points) if name == "numeric" else runner(f, nmax, levels)
        except Exception as exc:  # reported, not raised
            checks = [
                Check(
                    f"{name} suite completed",
                    "suite execution",
                    False,
                    {"error": repr(exc), "trace": traceback.format_exc(limit=3)},
                )
            ]
        records += [Record(name, c) for c in checks]
    return records
