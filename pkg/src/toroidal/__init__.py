"""Combinatorics of closed surfaces in (1,1)-knot complements.

Slopes on the Heegaard torus, toroidal graphs, knots level with respect to
them, and a Morse-event rewriting engine that normalizes a surface meeting
``T x I`` into the boundary of a toroidal graph neighborhood.
"""

from toroidal.slopes import (
    ManifoldFrame,
    Slope,
    SlopeError,
    delta,
    make_frame,
    make_slope,
)
from toroidal.graph import (
    ToroidalGraph,
    ValidationReport,
    boundary_genus,
    build_graph,
    enumerate_valid,
    random_graph,
    validate_graph,
)
from toroidal.level_knot import (
    LevelKnot,
    build_level_knot,
    is_well_wrapped,
    one_bridge_form,
    winding,
    wrapping_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "ManifoldFrame",
    "Slope",
    "SlopeError",
    "delta",
    "make_frame",
    "make_slope",
    "ToroidalGraph",
    "ValidationReport",
    "boundary_genus",
    "build_graph",
    "enumerate_valid",
    "random_graph",
    "validate_graph",
    "LevelKnot",
    "build_level_knot",
    "is_well_wrapped",
    "one_bridge_form",
    "winding",
    "wrapping_certificate",
]
