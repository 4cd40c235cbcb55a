"""Exact arithmetic kernel: rationals, polynomials, quotient rings, cyclotomics."""

from .bipoly import BiPoly, parse_bipoly, resultant_elim, sylvester_resultant
from .cyclotomic import (
    conductors_up_to_degree,
    cyclotomic_part,
    cyclotomic_poly,
    totient,
    unity_order,
    unity_order_branches,
)
from .factor import Factorization, coprime_basis
from .matrix import Matrix
from .poly import UniPoly, format_poly, parse_poly, parse_rational, uni_gcd, uni_lcm
from .rings import QuotientRing, RingElem, SplitRequired, branches, crt, ring_split

__all__ = [
    "BiPoly",
    "Factorization",
    "Matrix",
    "QuotientRing",
    "RingElem",
    "SplitRequired",
    "UniPoly",
    "branches",
    "conductors_up_to_degree",
    "coprime_basis",
    "crt",
    "cyclotomic_part",
    "cyclotomic_poly",
    "format_poly",
    "parse_bipoly",
    "parse_poly",
    "parse_rational",
    "resultant_elim",
    "ring_split",
    "sylvester_resultant",
    "totient",
    "uni_gcd",
    "uni_lcm",
    "unity_order",
    "unity_order_branches",
]
