"""Exact computations with matrix-valued Laguerre-type orthogonal polynomials.

All quantities are exact rationals (see :mod:`mvlaguerre._backend`);
integrals are expressed in units of ``Gamma(nu + 1)``.
"""

from __future__ import annotations

from ._backend import BACKEND, Q, to_str
from .diffops import SecondOrderOp, build_calD, build_D, build_darboux
from .matpoly import MatPoly
from .mvop import (
    MVOPSequence,
    H_closed,
    inner_product,
    monic_from_moments,
    monic_from_recurrence,
    monic_from_rodrigues,
)
from .pearson import FamilySpec, build_K, build_Phi, build_Psi, example1, example2, example3, family_from_iterated
from .report import Check
from .structure import StructParams
from .weight import GammaUnits, WeightForm, build_weight, exact_moment

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Check",
    "FamilySpec",
    "GammaUnits",
    "H_closed",
    "MVOPSequence",
    "MatPoly",
    "Q",
    "SecondOrderOp",
    "StructParams",
    "WeightForm",
    "build_D",
    "build_K",
    "build_Phi",
    "build_Psi",
    "build_calD",
    "build_darboux",
    "build_weight",
    "example1",
    "example2",
    "example3",
    "exact_moment",
    "family_from_iterated",
    "inner_product",
    "monic_from_moments",
    "monic_from_recurrence",
    "monic_from_rodrigues",
    "to_str",
]
