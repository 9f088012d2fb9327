"""Exact construction and analysis of the interpolated PSL(2, q) fusion rings."""
from .chartables import Eigentable, RowLabel, build_etingof_table, build_psl2_table, build_table
from .closedrules import closed_ring, crosscheck
from .criteria import CriterionReport, run_all
from .exactnum import CyclotomicNumber, Rational, root_of_unity, sqrt_integer
from .fusionring import FusionRing, fpdims, verify_axioms
from .modsearch import enumerate_unit_sum_of_inverse_squares, search_nonpointed_simple_modular_types
from .verlinde import reconstruct

__version__ = "0.1.0"

__all__ = [
    "CriterionReport", "CyclotomicNumber", "Eigentable", "FusionRing", "Rational", "RowLabel",
    "build_etingof_table", "build_psl2_table", "build_table", "closed_ring", "crosscheck",
    "enumerate_unit_sum_of_inverse_squares", "fpdims", "reconstruct", "root_of_unity", "run_all",
    "search_nonpointed_simple_modular_types", "sqrt_integer", "verify_axioms",
]
