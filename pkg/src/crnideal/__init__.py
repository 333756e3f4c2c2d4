"""Steady-state ideals of mass-action reaction networks.

Parse networks, build their steady-state polynomials and hypergraphs, find
almost-balanced-vertex certificates for monomials in the ideal, rewrite
networks without changing the ideal, and check ideals with a randomized
Gröbner-basis oracle.
"""

from .balance import (
    BalanceCertificate,
    CertificateError,
    Obstruction,
    SearchSpaceError,
    brute_force_certificate,
    find_certificate,
    is_weakly_reversible,
    monomial_ideal_certificate,
    structural_obstructions,
    verify_certificate,
)
from .groebner import (
    QPolynomial,
    UnluckySpecializationError,
    Verdict,
    contains_monomial,
    ideal_equal,
    is_monomial_ideal,
    normal_form,
    reduced_groebner_basis,
    specialize,
)
from .hypergraph import NetworkHypergraph, build_hypergraph, incidence_matrix, species_edge_polynomial
from .massaction import (
    RatePolynomial,
    SteadyStateSystem,
    minimal_reactants,
    reactant_support_generators,
    steady_state_system,
)
from .network import (
    Complex,
    Network,
    ParseError,
    Reaction,
    RingContext,
    complex_divides,
    format_network,
    is_zero_one,
    parse_network,
    validate_network,
)
from .transforms import (
    TransformError,
    TransformRequest,
    TransformResult,
    add_degradation,
    add_species_to_product,
    add_species_to_reactant,
    apply_script,
)

__version__ = "0.1.0"
