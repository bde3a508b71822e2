"""Double-precision cross-checks: Gauss-Laguerre quadrature and positivity probing.

Rules integrate against the probability density ``exp(-x) x^nu / Gamma(nu+1)``,
so quadrature results are directly comparable with exact values expressed in
``Gamma(nu+1)`` units.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, roots_genlaguerre

from .matpoly import MatPoly, to_float
from .report import Check
from .weight import WeightForm

REL_TOL = 1e-10
ABS_TOL = 1e-12


@dataclass(frozen=True)
class QuadratureRule:
    nu: float
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def points(self) -> int:
        return len(self.nodes)

    @property
    def exact_degree(self) -> int:
        return 2 * self.points - 1

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """``sum_i w_i values[i]`` over the leading axis."""
        return np.tensordot(self.weights, values, axes=1)


@lru_cache(maxsize=64)
def gauss_laguerre(nu: float, points: int) -> QuadratureRule:
    """Gauss rule for ``exp(-x) x^nu / Gamma(nu+1)`` on ``(0, inf)``."""
    nu = float(nu)
    if nu <= -1:
        raise ValueError("nu must exceed -1")
    if points < 1:
        raise ValueError("need at least one point")
    nodes, weights = roots_genlaguerre(points, nu)
    weights = weights * np.exp(-gammaln(nu + 1))
    return QuadratureRule(nu, np.asarray(nodes), np.asarray(weights))


def eval_float(p: MatPoly, xs: np.ndarray) -> np.ndarray:
    """Values ``p(x)`` for every ``x`` in ``xs``, shape ``(len(xs), N, N)``."""
    coeffs = [to_float(c) for c in p.coeffs]
    out = np.zeros((len(xs), p.size, p.size))
    for c in reversed(coeffs):
        out = out * xs[:, None, None] + c
    return out


def numeric_inner_product(P: MatPoly, Qp: MatPoly, w: WeightForm, points: int | None = None) -> np.ndarray:
    """Quadrature value of ``int P W Qp^T`` in ``Gamma(w.nu + 1)`` units."""
    need = max(P.degree, 0) + max(Qp.degree, 0) + max(w.Q.degree, 0)
    min_points = need // 2 + 1
    if points is None:
        points = min_points
    if points < min_points:
        raise ValueError(f"{points} points cannot integrate degree {need} exactly; need {min_points}")
    rule = gauss_laguerre(float(w.nu), points)
    x = rule.nodes
    vals = eval_float(P, x) @ eval_float(w.Q, x) @ np.transpose(eval_float(Qp, x), (0, 2, 1))
    return rule.integrate(vals)


def compare(numeric: np.ndarray, exact: np.ndarray, zero_scale: np.ndarray | None = None,
            rel: float = REL_TOL, abs_zero: float = ABS_TOL) -> dict:
    """Entrywise comparison: relative for nonzero exact entries, absolute at exact zeros.

    At exact zeros the error is divided by ``zero_scale`` (when given) before
    the absolute test; the unscaled error is reported as well.
    """
    ex = to_float(exact)
    zero = np.array([[v == 0 for v in row] for row in exact])
    err = np.abs(numeric - ex)
    rel_err = np.where(zero, 0.0, err / np.where(zero, 1.0, np.abs(ex)))
    raw_abs = np.where(zero, err, 0.0)
    scaled_abs = raw_abs if zero_scale is None else raw_abs / zero_scale
    max_rel = float(rel_err.max(initial=0.0))
    max_abs = float(scaled_abs.max(initial=0.0))
    return {
        "max_rel": max_rel,
        "max_abs_at_zeros": max_abs,
        "max_raw_abs_at_zeros": float(raw_abs.max(initial=0.0)),
        "ok": bool(max_rel <= rel and max_abs <= abs_zero),
    }


def cauchy_schwarz_scale(gram_p: np.ndarray, gram_q: np.ndarray) -> np.ndarray:
    """``sqrt(<p_i, p_i> <q_j, q_j>)``, the bound on entry ``(i, j)`` of ``<P, Q>``."""
    dp = np.sqrt(np.abs(np.diag(to_float(gram_p))))
    dq = np.sqrt(np.abs(np.diag(to_float(gram_q))))
    return np.outer(dp, dq)


def cross_check_inner(P: MatPoly, Qp: MatPoly, w: WeightForm, points: int | None = None) -> dict:
    """Quadrature against the exact inner product of ``P`` and ``Qp``.

    Entries that vanish exactly are measured against their Cauchy-Schwarz
    bound, which makes the absolute tolerance independent of how ``P`` and
    ``Qp`` are normalised.
    """
    from .mvop import inner_product

    exact = inner_product(P, Qp, w).value
    scale = cauchy_schwarz_scale(inner_product(P, P, w).value, inner_product(Qp, Qp, w).value)
    return compare(numeric_inner_product(P, Qp, w, points), exact, scale)


@dataclass(frozen=True)
class PositivityReport:
    min_eigenvalue: float
    min_scaled_eigenvalue: float
    argmin: float
    samples: int
    x_max: float
    positive: bool

    def as_check(self, label: str = "") -> Check:
        return Check(
            f"W(x) positive definite on sampled grid{label}",
            "positivity of the weight",
            self.positive,
            {
                "min_eigenvalue": self.min_eigenvalue,
                "min_scaled_eigenvalue": self.min_scaled_eigenvalue,
                "argmin": self.argmin,
                "samples": self.samples,
                "x_max": self.x_max,
            },
        )


def positivity_probe(w: WeightForm, samples: int = 200, x_min: float = 1e-2, x_max: float | None = None) -> PositivityReport:
    """Smallest eigenvalue of ``W(x)`` on log-spaced ``x in [x_min, x_max]``.

    ``x_max`` defaults to ``nu + 5N + 50``. The sign decision uses the
    congruent matrix ``D^-1/2 Q D^-1/2`` with ``D = diag Q``, which has the
    same inertia as ``W(x)`` but is far better conditioned at large ``x``.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    if x_max is None:
        x_max = float(w.nu) + 5 * w.size + 50
    xs = np.geomspace(x_min, x_max, samples)
    vals = eval_float(w.Q, xs)
    vals = 0.5 * (vals + np.transpose(vals, (0, 2, 1)))
    weight = np.exp(-xs + float(w.nu) * np.log(xs))
    raw = np.linalg.eigvalsh(vals).min(axis=1) * weight
    d = np.diagonal(vals, axis1=1, axis2=2)
    diag_ok = (d > 0).all(axis=1)
    inv = 1.0 / np.sqrt(np.where(d > 0, d, 1.0))
    scaled = np.linalg.eigvalsh(vals * inv[:, :, None] * inv[:, None, :]).min(axis=1)
    scaled = np.where(diag_ok, scaled, np.minimum(scaled, d.min(axis=1)))
    i = int(np.argmin(scaled))
    return PositivityReport(
        float(raw.min()), float(scaled[i]), float(xs[i]), samples, float(x_max), bool(scaled.min() > 0)
    )
