"""Knot expressions and combinatorial knot Floer models."""
from .alexander import AlexPoly, alexander, nonzero_term_count, song_decomposition, torus_alexander
from .expr import (
    Cable, GenusOneClass, KnotExpr, Mirror, Multiple, Sum, ThinClass, Torus, Unknot, parse_knot, to_text,
)
from .invariants import (
    lattice_model, reduce_genus_one, reduce_genus_one_sum, split_signs, tau, v0, v0_lower_bound,
)
from .lattice import LatticeCFK, staircase_model, thin_model, thin_negative
from .staircase import Staircase, term_count_lower_bound, v0_connected_sum, v0_lspace, v0_pareto

__all__ = [
    "AlexPoly", "alexander", "nonzero_term_count", "song_decomposition", "torus_alexander",
    "Cable", "GenusOneClass", "KnotExpr", "Mirror", "Multiple", "Sum", "ThinClass", "Torus", "Unknot",
    "parse_knot", "to_text", "lattice_model", "reduce_genus_one", "reduce_genus_one_sum", "tau", "v0",
    "v0_lower_bound", "LatticeCFK", "staircase_model", "thin_model", "Staircase", "v0_connected_sum",
    "v0_lspace", "v0_pareto", "term_count_lower_bound", "split_signs", "thin_negative",
]
