"""Exact shifted chromatic polynomials and extremal-bound verification for 5-chromatic graphs."""

from .chromatic import PolyCache, count_colourings_bruteforce, q_poly, verify_bound
from .graph import Graph, canonical_key, chromatic_number, enumerate_unlabeled, parse_graph6, to_graph6
from .poly import IntPoly, bound_poly, ll_leq, parse_poly

__all__ = [
    "Graph",
    "IntPoly",
    "PolyCache",
    "bound_poly",
    "canonical_key",
    "chromatic_number",
    "count_colourings_bruteforce",
    "enumerate_unlabeled",
    "ll_leq",
    "parse_graph6",
    "parse_poly",
    "q_poly",
    "to_graph6",
    "verify_bound",
]

__version__ = "0.1.0"
