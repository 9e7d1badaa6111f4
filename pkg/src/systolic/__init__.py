"""Combinatorial admissibility of decorated fat graphs as systolic graphs."""

from .admissibility import (
    MetricAssignment,
    check_admissibility,
    check_minimality,
    restrict_metric,
    verify_metric,
)
from .cycles import classify_cycle, enumerate_simple_cycles
from .fatgraph import FatGraph, delete_standard_cycles, standard_cycles, validate
from .generators import gen_example_g8, gen_trivalent_girth, gen_unitrivalent_girth, gen_wheel_family, girth
from .io import parse_fatgraph, parse_metric, serialize_fatgraph
from .lp import solve_feasibility
from .topology import (
    face_nonstandard_cycles,
    intersection_graph,
    min_genus_report,
    ribbon_genus,
    trace_faces,
    vf_obstruction,
)

__all__ = [
    "FatGraph",
    "MetricAssignment",
    "check_admissibility",
    "check_minimality",
    "classify_cycle",
    "delete_standard_cycles",
    "enumerate_simple_cycles",
    "face_nonstandard_cycles",
    "gen_example_g8",
    "gen_trivalent_girth",
    "gen_unitrivalent_girth",
    "gen_wheel_family",
    "girth",
    "intersection_graph",
    "min_genus_report",
    "parse_fatgraph",
    "parse_metric",
    "restrict_metric",
    "ribbon_genus",
    "serialize_fatgraph",
    "solve_feasibility",
    "standard_cycles",
    "trace_faces",
    "validate",
    "verify_metric",
    "vf_obstruction",
]
