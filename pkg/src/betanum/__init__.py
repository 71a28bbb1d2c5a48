"""Exact beta-expansions, linear recurrence numeration and the quotient mapping condition."""

__version__ = "0.1.0"

from .beta import (
    Finite,
    PFReport,
    Periodic,
    PeriodicWord,
    Unknown,
    VSet,
    classify,
    fin_membership,
    pf_check,
    quasi_greedy_expansion,
    weak_finiteness_witness,
)
from .field import FieldElement, NumberField
from .gnum import GSequence, HypBBounds, greedy_g_digits, hyp_b_falsify, odometer_successor
from .hypb import hyp_b_decide
from .poly import IntPolynomial, minimal_polynomial
from .substitution import beta_substitution, char_poly, incidence_matrix, qm_report

__all__ = [
    "Finite",
    "FieldElement",
    "GSequence",
    "HypBBounds",
    "IntPolynomial",
    "NumberField",
    "PFReport",
    "Periodic",
    "PeriodicWord",
    "Unknown",
    "VSet",
    "beta_substitution",
    "char_poly",
    "classify",
    "fin_membership",
    "greedy_g_digits",
    "hyp_b_decide",
    "hyp_b_falsify",
    "incidence_matrix",
    "minimal_polynomial",
    "odometer_successor",
    "pf_check",
    "qm_report",
    "quasi_greedy_expansion",
    "weak_finiteness_witness",
]
