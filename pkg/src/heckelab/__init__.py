"""Hecke algebras, their polynomial realizations, and finite models of flag geometry."""

from .hecke import algebra, specialize
from .laurent import LaurentPoly, TruncatedSeries, exact_div, lowest_degree_part, poly_mul, series_exp
from .operators import degeneration_check, verify_realization
from .roots import cartan_type, irrep_dimension, weight_multiplicity, weyl_group

__version__ = "0.1.0"
