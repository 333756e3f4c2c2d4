"""Exact Gröbner bases over the rationals and the specialization oracle."""

from .buchberger import groebner_basis, is_groebner_basis, normal_form, reduced_groebner_basis, s_polynomial
from .oracle import (
    MAX_NUMERATOR,
    SpecializationError,
    TrialRecord,
    UnluckySpecializationError,
    Verdict,
    contains_monomial,
    ideal_equal,
    is_monomial_ideal,
    monomial_polynomial,
    network_basis,
    random_assignment,
    specialize,
    specialized_generators,
)
from .poly import ORDERS, QPolynomial, monomial_divides, monomial_lcm

__all__ = [
    "QPolynomial",
    "ORDERS",
    "monomial_divides",
    "monomial_lcm",
    "groebner_basis",
    "reduced_groebner_basis",
    "normal_form",
    "s_polynomial",
    "is_groebner_basis",
    "MAX_NUMERATOR",
    "SpecializationError",
    "UnluckySpecializationError",
    "TrialRecord",
    "Verdict",
    "random_assignment",
    "specialize",
    "specialized_generators",
    "network_basis",
    "monomial_polynomial",
    "ideal_equal",
    "contains_monomial",
    "is_monomial_ideal",
]
