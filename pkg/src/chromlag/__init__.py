"""Chromatic Lagrangians of cubic planar graphs.

Ribbon graphs, chromatic point counts, the edge lattice and its
intersection form, cross-ratio period coordinates, and superpotentials
with their BPS numbers, all in exact arithmetic.
"""

from .chromatic import IntPoly, brute_force_moduli_count, chromatic_polynomial, fillability_obstruction, moduli_count_poly
from .homlattice import PhaseFraming, h1_presentation, intersection_form, preset_phase, validate_phase_framing
from .periods import build_chart, cross_ratio
from .ribbon import RibbonGraph, blow_up, dual, edge_move, named_graph, validate
from .superpot import bps_invert, pipeline

__version__ = "0.1.0"

__all__ = [
    "RibbonGraph", "named_graph", "validate", "dual", "blow_up", "edge_move",
    "IntPoly", "chromatic_polynomial", "moduli_count_poly", "brute_force_moduli_count", "fillability_obstruction",
    "intersection_form", "h1_presentation", "PhaseFraming", "validate_phase_framing", "preset_phase",
    "build_chart", "cross_ratio",
    "pipeline", "bps_invert",
]
