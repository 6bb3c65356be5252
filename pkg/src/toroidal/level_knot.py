"""Knots level with respect to a toroidal graph.

A level knot is encoded by the windings of its arcs on the annuli
``eta(gamma_i)`` and the half-twists of its two strands in each handle
``N(alpha_i)``.  Arcs at one level wind coherently (one sign, measured
along the knot), which makes every cut piece ``k_i`` a closed braid in
its solid torus, so its wrapping number is its strand count.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from toroidal.graph import ToroidalGraph, graph_from_json, random_graph, validate_graph
from toroidal.slopes import ManifoldFrame

THROUGH = "through"
TURN = "turn"


class LevelKnotError(ValueError):
    pass


class ArityMismatch(LevelKnotError):
    pass


class IncoherentWinding(LevelKnotError):
    pass


class DegenerateWinding(LevelKnotError):
    """An end arc with winding 0 is not essential in its annulus."""


class Disconnected(LevelKnotError):
    def __init__(self, components: int):
        self.components = components
        super().__init__(f"pattern closes into {components} circles")


@dataclass(frozen=True)
class LevelKnot:
    graph: ToroidalGraph
    end_windings: tuple[int, int]
    mid_windings: tuple[tuple[int, int], ...] = ()
    handle_twists: tuple[int, ...] = ()
    mid_pairings: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return self.graph.n

    def to_json(self) -> dict:
        out = {
            "graph": self.graph.to_json(),
            "end_windings": list(self.end_windings),
            "mid_windings": [list(p) for p in self.mid_windings],
            "handle_twists": list(self.handle_twists),
        }
        if any(p != THROUGH for p in self.mid_pairings):
            out["mid_pairings"] = list(self.mid_pairings)
        return out


def level_knot_from_json(data) -> LevelKnot:
    if not isinstance(data, dict):
        raise LevelKnotError("level knot JSON must be an object")
    try:
        graph = graph_from_json(data["graph"])
        ends = tuple(data["end_windings"])
        mids = [tuple(p) for p in data.get("mid_windings", [])]
        twists = list(data.get("handle_twists", []))
    except (KeyError, TypeError) as exc:
        raise LevelKnotError(f"malformed level knot: {exc}") from exc
    return build_level_knot(graph, ends, mids, twists, data.get("mid_pairings"))


def _count_components(n: int, twists, pairings) -> int:
    """Trace the closed pattern through caps, handles and middle levels.

    Nodes are strand ends ``(handle, strand, side)``; every piece of the
    knot is an edge; components of the resulting 2-regular graph are the
    circles of the pattern.
    """
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for h in range(1, n):
        swap = twists[h - 1] % 2 == 1
        for j in (0, 1):
            union((h, j, "up"), (h, 1 - j if swap else j, "down"))
    union((1, 0, "up"), (1, 1, "up"))
    union((n - 1, 0, "down"), (n - 1, 1, "down"))
    for level in range(2, n):
        if pairings[level - 2] == THROUGH:
            for j in (0, 1):
                union((level - 1, j, "down"), (level, j, "up"))
        else:
            union((level - 1, 0, "down"), (level - 1, 1, "down"))
            union((level, 0, "up"), (level, 1, "up"))
    return len({find(x) for x in list(parent)})


def build_level_knot(graph: ToroidalGraph, end_windings: Sequence[int],
                     mid_windings: Sequence[Sequence[int]] = (),
                     handle_twists: Sequence[int] = (),
                     mid_pairings: Sequence[str] | None = None) -> LevelKnot:
    """Validate and build a level knot.

    For a type-1 graph ``end_windings`` is ``(w_1, longitudes)`` and the
    knot is the ``(w_1, longitudes)`` curve on a torus around ``gamma_1``;
    it is connected iff the two numbers are coprime.
    ``mid_pairings`` defaults to every middle level passing straight
    through (each arc joins the handle above to the handle below).
    """
    n = graph.n
    ends = tuple(int(w) for w in end_windings)
    mids = tuple(tuple(int(x) for x in p) for p in mid_windings)
    twists = tuple(int(h) for h in handle_twists)
    if len(ends) != 2:
        raise ArityMismatch("end_windings must be a pair")
    if len(mids) != max(n - 2, 0):
        raise ArityMismatch(f"type-{n} graph needs {max(n - 2, 0)} middle levels, got {len(mids)}")
    if any(len(p) != 2 for p in mids):
        raise ArityMismatch("each middle level carries exactly two arcs")
    if len(twists) != max(n - 1, 0):
        raise ArityMismatch(f"type-{n} graph needs {max(n - 1, 0)} handle twists, got {len(twists)}")
    pairings = tuple(mid_pairings) if mid_pairings is not None else (THROUGH,) * len(mids)
    if len(pairings) != len(mids) or any(p not in (THROUGH, TURN) for p in pairings):
        raise ArityMismatch("mid_pairings must give 'through' or 'turn' per middle level")

    if ends[0] == 0 or (n >= 2 and ends[1] == 0):
        raise DegenerateWinding("end arcs must wind around their annulus")
    for i, (t, s) in enumerate(mids, start=2):
        if t * s < 0:
            raise IncoherentWinding(f"level {i}: windings {t} and {s} have opposite signs")
        if t + s == 0:
            raise IncoherentWinding(f"level {i}: both arcs have winding 0")

    if n == 1:
        components = math.gcd(abs(ends[0]), abs(ends[1]))
    else:
        components = _count_components(n, twists, pairings)
    if components != 1:
        raise Disconnected(components)
    return LevelKnot(graph, ends, mids, twists, pairings)


def winding(knot: LevelKnot, i: int) -> int:
    """Signed winding of the cut piece ``k_i`` around ``gamma_i``."""
    n = knot.n
    if not 1 <= i <= n:
        raise IndexError(f"level {i} out of range 1..{n}")
    if i == 1:
        return knot.end_windings[0]
    if i == n:
        return knot.end_windings[1]
    t, s = knot.mid_windings[i - 2]
    return t + s


@dataclass(frozen=True)
class Exact:
    m: int


@dataclass(frozen=True)
class Indeterminate:
    pass


@dataclass(frozen=True)
class WrappingCertificate:
    levels: tuple[Exact | Indeterminate, ...]

    def to_json(self):
        return [{"exact": v.m} if isinstance(v, Exact) else "indeterminate" for v in self.levels]


def wrapping_certificate(knot: LevelKnot) -> WrappingCertificate:
    # Coherent spirals: each k_i is a closed |winding|-braid.
    return WrappingCertificate(tuple(Exact(abs(winding(knot, i))) for i in range(1, knot.n + 1)))


def is_well_wrapped(knot: LevelKnot) -> bool:
    return all(isinstance(v, Exact) and v.m >= 2 for v in wrapping_certificate(knot).levels)


def satisfies_incompressibility_hypotheses(knot: LevelKnot) -> bool:
    """Graph conditions and well-wrappedness both hold for ``knot``."""
    return validate_graph(knot.graph.frame, knot.graph.gammas).valid and is_well_wrapped(knot)


# -- explicit closed-braid tracing ----------------------------------------

_UPPER_FOOT = 0.0
_LOWER_FOOT = 0.1
_DISK_ANGLE = math.pi


def _spiral(theta0: float, theta1: float, samples: int = 64) -> np.ndarray:
    return np.linspace(theta0, theta1, samples)


def piece_angles(knot: LevelKnot, i: int) -> list[np.ndarray]:
    """Angle profiles (around ``gamma_i``) of the arcs of the closed piece
    ``k_i``, traversed along the knot.  Closing arcs on the cutting disks
    sit at the feet and are omitted: they never meet the test disk."""
    n = knot.n
    tau = 2 * math.pi
    if i in (1, n):
        w = winding(knot, i)
        return [_spiral(_UPPER_FOOT, _UPPER_FOOT + 0.05 + tau * w)]
    t, s = knot.mid_windings[i - 2]
    a = _spiral(_UPPER_FOOT, _LOWER_FOOT + tau * t)
    # second arc runs from the lower foot back up; s = 0 just steps back
    b = _spiral(_LOWER_FOOT, _UPPER_FOOT + tau * s)
    return [a, b]


def traced_strand_count(knot: LevelKnot, i: int) -> int:
    """Count crossings of ``k_i`` with one meridian disk of its solid torus.

    Returns -1 if the crossings do not all have one sign (then ``k_i`` is
    not a closed braid for this disk and the count is not a strand count).
    """
    signs = []
    for theta in piece_angles(knot, i):
        k = np.floor((theta - _DISK_ANGLE) / (2 * math.pi))
        jumps = np.diff(k)
        signs.extend(np.sign(jumps[jumps != 0]).astype(int).tolist())
    if len(set(signs)) > 1:
        return -1
    return len(signs)


# -- one-bridge witness -----------------------------------------------------

@dataclass(frozen=True)
class ArcWitness:
    level: int
    height: Fraction
    winding: int


@dataclass(frozen=True)
class StrandWitness:
    """A straight strand: heights it crosses, handles it runs through and
    the middle-level arcs it swallows, all listed top to bottom."""

    heights: tuple[Fraction, ...]
    handles: tuple[int, ...]
    absorbed: tuple[tuple[int, int], ...]

    @property
    def monotone(self) -> bool:
        return all(x < y for x, y in zip(self.heights, self.heights[1:]))


@dataclass(frozen=True)
class OneBridgeWitness:
    bottom_arc: ArcWitness
    top_arc: ArcWitness
    strands: tuple[StrandWitness, StrandWitness]

    def to_json(self):
        return {
            "k0": {"level": self.bottom_arc.level, "winding": self.bottom_arc.winding},
            "k1": {"level": self.top_arc.level, "winding": self.top_arc.winding},
            "strands": [
                {"heights": [str(h) for h in s.heights], "handles": list(s.handles),
                 "absorbed": [list(a) for a in s.absorbed]}
                for s in self.strands
            ],
        }


def one_bridge_form(knot: LevelKnot) -> OneBridgeWitness:
    """Push the middle-level arcs into the handles.

    What is left is one arc on ``T_0``, one arc on ``T_1`` and two strands
    crossing every level torus once, i.e. a (1,1)-position.
    """
    g = knot.graph
    n = g.n
    if n == 1:
        k0 = ArcWitness(1, Fraction(0), knot.end_windings[0])
        k1 = ArcWitness(1, Fraction(1), knot.end_windings[1])
        vertical = StrandWitness((), (), ())
        return OneBridgeWitness(k0, k1, (vertical, vertical))

    # position j of each strand as it leaves level 1 downward
    heights: list[list[Fraction]] = [[], []]
    handles: list[list[int]] = [[], []]
    absorbed: list[list[tuple[int, int]]] = [[], []]
    pos = [0, 1]
    for h in range(1, n):
        for strand in (0, 1):
            handles[strand].append(h)
        if knot.handle_twists[h - 1] % 2:
            pos = [1 - p for p in pos]
        level = h + 1
        if level < n:
            t, s = knot.mid_windings[level - 2]
            for strand in (0, 1):
                heights[strand].append(g.heights[level - 1])
                absorbed[strand].append((level, (t, s)[pos[strand]]))
    strands = tuple(StrandWitness(tuple(heights[j]), tuple(handles[j]), tuple(absorbed[j]))
                    for j in (0, 1))
    k0 = ArcWitness(1, g.heights[0], knot.end_windings[0])
    k1 = ArcWitness(n, g.heights[-1], knot.end_windings[1])
    return OneBridgeWitness(k0, k1, strands)


def random_level_knot(frame: ManifoldFrame, n: int, coefficient_bound: int, seed: int,
                      max_winding: int = 4) -> LevelKnot:
    """Random connected level knot over a random valid graph."""
    rng = random.Random(seed)
    graph = random_graph(frame, n, coefficient_bound, rng.getrandbits(32))
    sign = rng.choice((1, -1))
    if n == 1:
        w = rng.randint(1, max_winding)
        lon = rng.choice([x for x in range(0, max_winding + 1) if math.gcd(w, x) == 1])
        return build_level_knot(graph, (sign * w, lon))
    ends = (sign * rng.randint(1, max_winding), sign * rng.randint(1, max_winding))
    mids = []
    for _ in range(n - 2):
        t = rng.randint(0, max_winding)
        s = rng.randint(1 if t == 0 else 0, max_winding)
        mids.append((sign * t, sign * s))
    twists = [rng.randint(-3, 3) for _ in range(n - 1)]
    return build_level_knot(graph, ends, mids, twists)
