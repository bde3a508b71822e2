from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from mvlaguerre._backend import Q
from mvlaguerre.matpoly import MatPoly, diag, mat_equal, to_float
from mvlaguerre.pearson import example1, example2, example3
from mvlaguerre.structure import StructParams
from mvlaguerre.weight import GammaUnits, H0_chu_vandermonde, H0_formula, WeightForm, build_weight, exact_moment

from .strategies import nus

families = st.builds(
    lambda which, n, nu: (example1, example2, example3)[which](n, nu, nu),
    st.integers(0, 2),
    st.integers(1, 4),
    nus,
)


@given(families)
def test_weight_is_symmetric(f):
    w = f.weight(0)
    assert w.Q == w.Q.T


@given(families, st.integers(0, 4))
def test_moment_matches_adaptive_integral(f, m):
    w = f.weight(0)
    exact = to_float(exact_moment(w, m).value) * math.gamma(float(w.nu) + 1)
    for i in range(f.N):
        for j in range(f.N):
            val, _ = quad(lambda x: x**m * w(x)[i, j], 0, np.inf, limit=200)
            assert val == pytest.approx(exact[i, j], rel=1e-7, abs=1e-9 * max(1.0, abs(exact).max()))


@given(families)
def test_H0_closed_form_and_chu_vandermonde(f):
    h0 = H0_formula(f.struct, f.nu, f.working_delta(0))
    assert h0 == exact_moment(f.weight(0), 0)
    cv = H0_chu_vandermonde(f.struct, f.nu, f.c_over_d(0), f.working_delta(0))
    assert cv.matching_base == ("-N-1" if f.N == 1 else "-N+1")
    assert cv.value == h0


def test_H0_needs_alpha_equal_nu():
    with pytest.raises(ValueError):
        H0_formula(StructParams.unit(2, Q(2)), Q(1), (Q(1), Q(1)))


@pytest.mark.parametrize("delta", [(Q(1), Q(0)), (Q(1), Q(-1))])
def test_build_weight_rejects_nonpositive_delta(delta):
    p = StructParams.unit(2, Q(1))
    with pytest.raises(ValueError):
        build_weight(p, Q(1), delta)
    assert build_weight(p, Q(1), delta, check=False).size == 2


def test_gamma_units_rebase():
    g = GammaUnits(diag([Q(1), Q(2)]), Q(5, 2))
    base = g.rebase(Q(1, 2))
    # Gamma(7/2) = (3/2)(5/2) Gamma(3/2)
    assert mat_equal(base.value, diag([Q(15, 4), Q(15, 2)]))
    assert base == g
    with pytest.raises(ValueError):
        g.in_units(Q(3))


def test_weight_form_arithmetic():
    x = MatPoly.x(1)
    a = WeightForm(Q(1), x)
    b = WeightForm(Q(2), MatPoly.identity(1))
    assert a == b
    assert (a - b).Q.is_zero()
    assert (a * 3).Q == x * 3
    # (x^2 e^-x)' = x (2 - x) e^-x
    assert a.derivative() == WeightForm(Q(1), 2 - x)
