from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mvlaguerre._backend import Q, rational_sqrt, to_str
from mvlaguerre.serialize import (
    matrix_csv_rows,
    matrix_from_json,
    matrix_to_json,
    parse_rational,
    poly_csv_rows,
    poly_from_json,
    poly_to_json,
)

from .strategies import matpolys, matrices, rationals


@given(rationals)
def test_rational_round_trip(v):
    assert parse_rational(to_str(v)) == v
    assert parse_rational(json.loads(json.dumps(to_str(v)))) == v


@given(st.integers(1, 3).flatmap(matrices))
def test_matrix_round_trip(m):
    back = matrix_from_json(json.loads(json.dumps(matrix_to_json(m))))
    assert (back == m).all()


@given(st.integers(1, 3).flatmap(matpolys))
def test_poly_round_trip(p):
    assert poly_from_json(json.loads(json.dumps(poly_to_json(p)))) == p


@given(st.integers(1, 3).flatmap(matpolys))
def test_csv_rows_cover_every_coefficient(p):
    rows = list(poly_csv_rows("P", 2, p))
    assert len(rows) == len(p.coeffs) * p.size**2
    assert all(r[0] == "P" and r[1] == 2 for r in rows)
    assert {r[4] for r in rows} == set(range(len(p.coeffs)))


def test_matrix_csv_rows_are_one_based():
    rows = list(matrix_csv_rows("H", 0, matrix_from_json([["1", "1/2"], ["0", "3"]])))
    assert rows[1] == ("H", 0, 1, 2, "", "1/2")


@pytest.mark.parametrize("text,value", [("3/2", Q(3, 2)), (" -4 ", Q(-4)), ("0.25", Q(1, 4)), (2, Q(2)), (2.0, Q(2))])
def test_parse_rational_accepts(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", [0.1, True, "x/2"])
def test_parse_rational_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(bad)


def test_rational_sqrt():
    assert rational_sqrt(Q(9, 4)) == Q(3, 2)
    assert rational_sqrt(Q(2)) is None
    assert rational_sqrt(Q(-1)) is None
