"""Blowup invariants of ideals: Hilbert coefficients, fiber multiplicity,
reduction numbers and closures, with the known bounds checked on each input."""

from .groebner import (
    GroebnerBasis,
    Ideal,
    groebner_basis,
    ideal_colon,
    ideal_eliminate,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_sum,
    is_only_origin,
    krull_dim,
    length_of_quotient,
    min_gens,
    normal_form,
)
from .monomial import INFINITE, MonomialIdeal, integral_closure_monomial
from .parser import ParseError, parse_polynomial
from .ring import MonomialOrder, Polynomial, Ring, RingError, make_ring

__version__ = "0.1.0"

__all__ = [
    "GroebnerBasis",
    "INFINITE",
    "Ideal",
    "MonomialIdeal",
    "MonomialOrder",
    "ParseError",
    "Polynomial",
    "Ring",
    "RingError",
    "__version__",
    "groebner_basis",
    "ideal_colon",
    "ideal_eliminate",
    "ideal_intersection",
    "ideal_power",
    "ideal_product",
    "ideal_sum",
    "integral_closure_monomial",
    "is_only_origin",
    "krull_dim",
    "length_of_quotient",
    "make_ring",
    "min_gens",
    "normal_form",
    "parse_polynomial",
]
