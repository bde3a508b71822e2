"""Hypothesis strategies shared by the unit tests."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from mvlaguerre._backend import Q
from mvlaguerre.matpoly import MatPoly

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6).map(Q)
positive_rationals = st.fractions(min_value=0, max_value=5, max_denominator=6).filter(lambda v: v > 0).map(Q)
nus = st.sampled_from([Q(1), Q(3, 2), Q(2), Q(5, 2), Q(1, 3)])


def matrices(n: int):
    return st.lists(rationals, min_size=n * n, max_size=n * n).map(
        lambda vals: np.array(vals, dtype=object).reshape(n, n)
    )


def matpolys(n: int, max_degree: int = 2):
    return st.lists(matrices(n), min_size=1, max_size=max_degree + 1).map(lambda cs: MatPoly(cs, n))


@st.composite
def matpoly_triples(draw, max_size: int = 3, max_degree: int = 2):
    n = draw(st.integers(1, max_size))
    return n, draw(matpolys(n, max_degree)), draw(matpolys(n, max_degree)), draw(matpolys(n, max_degree))
