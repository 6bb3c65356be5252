"""Morse descriptions of surfaces in ``T x I`` and their normalization."""

from toroidal.morse.engine import (
    EngineDefect,
    Normalization,
    Reduced,
    Terminal,
    TraceEntry,
    Verdict,
    classify,
    extract_graph,
    inter_saddle_slopes,
    normalize,
    reduce_step,
    reflect,
    termination_measure,
)
from toroidal.morse.state import Bag, IllegalEvent, LevelState, NotASaddle, classify_saddle
from toroidal.morse.surface import (
    BoundaryData,
    Complexity,
    MalformedSurface,
    MorseEvent,
    MorseSurface,
    OddEuler,
    analyze,
    complexity,
    euler_characteristic,
    fold_states,
    genus,
    knot_trace,
    surface_from_json,
)
from toroidal.morse.synth import perturb, random_surface, random_walk_surface, synthesize

__all__ = [
    "EngineDefect", "Normalization", "Reduced", "Terminal", "TraceEntry", "Verdict",
    "classify", "extract_graph", "inter_saddle_slopes", "normalize", "reduce_step", "reflect",
    "termination_measure",
    "Bag", "IllegalEvent", "LevelState", "NotASaddle", "classify_saddle", "BoundaryData", "Complexity", "MalformedSurface",
    "MorseEvent", "MorseSurface", "OddEuler", "analyze", "complexity", "euler_characteristic",
    "fold_states", "genus", "knot_trace", "surface_from_json", "perturb", "random_surface",
    "random_walk_surface", "synthesize",
]
