from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mvlaguerre._backend import Q
from mvlaguerre.matpoly import (
    MatPoly,
    NoUniqueSolution,
    SingularMatrixError,
    det,
    identity,
    mat_equal,
    mat_inv,
    matrix_pochhammer,
    nilpotent_exp,
    solve_linear,
    solve_right_linear,
    unipotent_inverse,
)

from .strategies import matpoly_triples, matrices, rationals


@given(matpoly_triples())
def test_ring_laws(t):
    n, a, b, c = t
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    assert (a + b) @ c == a @ c + b @ c
    assert a + b - b == a
    assert MatPoly.identity(n) @ a == a == a @ MatPoly.identity(n)


@given(matpoly_triples(), rationals)
def test_evaluation_transpose_and_derivative(t, x):
    n, a, b, _ = t
    assert mat_equal((a @ b)(x), a(x) @ b(x))
    assert (a @ b).T == b.T @ a.T
    assert (a @ b).derivative() == a.derivative() @ b + a @ b.derivative()
    assert (a * Q(3, 2))(x)[0, 0] == a(x)[0, 0] * Q(3, 2)


@given(matpoly_triples(max_degree=2))
def test_solve_right_linear_recovers_factor(t):
    n, p, _, c = t
    # q = x I + c_0 has invertible leading coefficient, so P is unique
    q = MatPoly.x(n) + MatPoly.constant(c.coeff(0))
    assert solve_right_linear(q, p @ q, max(p.degree, 0)) == p


def test_solve_right_linear_rejects_inconsistent():
    q = MatPoly.x(2) * 2
    r = MatPoly.identity(2)
    with pytest.raises(NoUniqueSolution):
        solve_right_linear(q, r, 1)


def test_solve_right_linear_rejects_underdetermined():
    zero = MatPoly.zero(2)
    with pytest.raises(NoUniqueSolution):
        solve_right_linear(zero, zero, 0)


@given(st.integers(1, 4).flatmap(matrices))
def test_inverse_and_determinant(m):
    n = m.shape[0]
    if det(m) == 0:
        with pytest.raises(SingularMatrixError):
            mat_inv(m)
        return
    inv = mat_inv(m)
    assert mat_equal(m @ inv, identity(n))
    assert det(m) * det(inv) == 1
    b = m @ np.array([[Q(i - 1)] for i in range(n)], dtype=object)
    assert mat_equal(m @ solve_linear(m, b), b)


@given(st.integers(2, 4).flatmap(matrices))
def test_unipotent_inverse_and_exp(m):
    n = m.shape[0]
    a = np.array([[m[i, j] if i > j else Q(0) for j in range(n)] for i in range(n)], dtype=object)
    e = nilpotent_exp(a)
    assert e @ nilpotent_exp(a, negate=True) == MatPoly.identity(n)
    assert unipotent_inverse(e) == nilpotent_exp(a, negate=True)
    assert e.derivative() == e @ MatPoly.constant(a)


def test_unipotent_inverse_rejects_general_input():
    with pytest.raises(ValueError):
        unipotent_inverse(MatPoly.constant(np.array([[Q(2), Q(0)], [Q(0), Q(1)]], dtype=object)))


def test_nilpotent_exp_rejects_invertible():
    with pytest.raises(ValueError):
        nilpotent_exp(identity(2))


@given(st.integers(0, 4))
def test_matrix_pochhammer_scalar(k):
    x = MatPoly.x(1)
    p = matrix_pochhammer(x, k)
    for v in (Q(0), Q(1), Q(5, 2)):
        expect = Q(1)
        for i in range(k):
            expect *= v + i
        assert p(v)[0, 0] == expect


def test_mixed_operands():
    p = MatPoly.x(2)
    assert (p + 1)(Q(2))[0, 0] == 3
    assert (1 - p)(Q(2))[1, 1] == -1
    assert (p @ identity(2)) == p
    with pytest.raises(TypeError):
        p + "x"
