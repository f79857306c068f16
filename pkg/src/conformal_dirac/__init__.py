"""Exact algebra for conformal powers of the Dirac operator on Einstein manifolds."""

from .exact import Poly, RationalFunction, pochhammer, shifted_product
from .operators import conformal_power, expand_linear_factors, m_sequence
from .pe_solver import EinsteinParams, obstruction_extract, solve_coupled
from .special import QFamilySpec, q_closed, q_recurrence

__all__ = [
    "EinsteinParams",
    "Poly",
    "QFamilySpec",
    "RationalFunction",
    "conformal_power",
    "expand_linear_factors",
    "m_sequence",
    "obstruction_extract",
    "pochhammer",
    "q_closed",
    "q_recurrence",
    "shifted_product",
    "solve_coupled",
]

__version__ = "0.1.0"
