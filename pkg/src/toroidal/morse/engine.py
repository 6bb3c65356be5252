"""Normalization of Morse descriptions by complexity-decreasing moves.

Each move rewrites the description into one of strictly smaller
termination measure and is checked by refolding: the rewritten description must
be legal and agree with the original on the levels it does not touch.
Every move is tried as written and on the upside-down description, so
each top-down move has its ``R_1`` counterpart.  When nothing applies
the surface is classified.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

from toroidal.graph import ToroidalGraph, build_graph, validate_graph
from toroidal.morse.state import IllegalEvent, LevelState
from toroidal.morse.surface import (
    MAX,
    MIN,
    SADDLE,
    Analysis,
    BoundaryData,
    Complexity,
    MalformedSurface,
    MorseEvent,
    MorseSurface,
    analyze,
    euler_characteristic,
)
from toroidal.slopes import delta


class Verdict(enum.Enum):
    CANONICAL = "canonical"
    COMPRESSIBLE = "compressible"
    MERIDIONALLY_COMPRESSIBLE = "meridionally-compressible"
    DISCONNECTED = "disconnected"


class EngineDefect(RuntimeError):
    """The move catalog got stuck or failed to descend.

    Raised rather than guessing a verdict; the offending description is
    attached for archiving.
    """

    def __init__(self, message: str, surface: MorseSurface):
        self.surface = surface
        super().__init__(message)


@dataclass(frozen=True)
class TraceEntry:
    move: str
    claim: str
    before: Complexity
    after: Complexity
    chi_before: int
    chi_after: int
    removed_chi: int = 0

    def to_json(self):
        return {"move": self.move, "claim": self.claim, "before": self.before.to_json(),
                "after": self.after.to_json(), "chi": [self.chi_before, self.chi_after]}


@dataclass(frozen=True)
class Reduced:
    surface: MorseSurface
    entry: TraceEntry


@dataclass(frozen=True)
class Terminal:
    verdict: Verdict
    reason: str


@dataclass
class Normalization:
    verdict: Verdict
    reason: str
    surface: MorseSurface
    trace: list[TraceEntry] = field(default_factory=list)

    @property
    def canonical(self) -> bool:
        return self.verdict is Verdict.CANONICAL


# -- helpers ---------------------------------------------------------------

def _legal(surface: MorseSurface) -> Analysis | None:
    try:
        return analyze(surface)
    except IllegalEvent:
        return None


def termination_measure(surface: MorseSurface, a: Analysis) -> tuple[int, int, int]:
    """``(|S_0| + |S_1|, |X|, |S~|)``: every move lowers it, even when a
    push into a solid torus splits the middle piece and raises ``c(S)``."""
    return (surface.bottom.pieces + surface.top.pieces, len(surface.events),
            a.middle_components)


def _complexity(surface: MorseSurface, a: Analysis) -> Complexity:
    return Complexity(surface.bottom.pieces + surface.top.pieces + a.middle_components,
                      len(surface.events))


def _rename(events, mapping: dict[int, int]):
    def m(xs):
        return tuple(mapping.get(x, x) for x in xs)

    return [replace(ev, operands=m(ev.operands), results=m(ev.results),
                    captures=m(ev.captures), far_curves=m(ev.far_curves)) for ev in events]


def _swap_ok(surface: MorseSurface, a: Analysis, k: int) -> Analysis | None:
    """Swap events ``k-1`` and ``k`` if they commute: the swapped
    description is legal and reaches the same labelled state."""
    ev = list(surface.events)
    x, y = ev[k - 1], ev[k]
    if set(y.operands) & set(x.results) or set(x.operands) & set(y.results):
        return None
    ev[k - 1], ev[k] = y, x
    cand = surface.with_events(ev)
    b = _legal(cand)
    if b is None or b.states[k + 1].key() != a.states[k + 1].key():
        return None
    return cand, b


def _bring_adjacent(surface: MorseSurface, a: Analysis, i: int, j: int):
    """Commute events so that event ``j`` directly follows event ``i``.

    Returns ``(surface, analysis, i, i + 1)`` or None.
    """
    while j > i + 1:
        got = _swap_ok(surface, a, j)
        if got is None:
            break
        surface, a = got
        j -= 1
    while j > i + 1:
        got = _swap_ok(surface, a, i + 1)
        if got is None:
            return None
        surface, a = got
        i += 1
    return surface, a, i, j


def _first_touch(events, start: int, curves) -> int | None:
    for j in range(start, len(events)):
        if any(events[j].touches(c) for c in curves):
            return j
    return None


# -- reflection ------------------------------------------------------------

def reflect(surface: MorseSurface, analysis: Analysis | None = None) -> MorseSurface:
    """Turn the description upside down (``T_0`` and ``T_1`` swap)."""
    a = analysis or analyze(surface)
    states = a.states
    events = surface.events
    out = []
    for k in range(len(events) - 1, -1, -1):
        ev = events[k]
        before, after = states[k], states[k + 1]
        h = 1 - ev.height
        if ev.kind == MAX:
            out.append(MorseEvent(MIN, None, ev.results, (), h))
        elif ev.kind == MIN:
            (c,) = ev.operands
            kind, key = before.host(c)
            host = () if key is None else (key,)
            out.append(MorseEvent(MAX, None, host, (c,), h))
        elif ev.type == 1:
            out.append(MorseEvent(SADDLE, 2, ev.results, ev.operands, h))
        elif ev.type == 2:
            a_, b_ = ev.operands
            far = before.regions[b_]
            slope = before.slope if len(before.ess) == 2 else None
            if len(before.ess) == 2:
                far_knots, far_curves = 0, ()
            else:
                far_knots, far_curves = far.knots, tuple(far.children)
            out.append(MorseEvent(SADDLE, 1, ev.results, ev.operands, h, slope=slope,
                                  far_knots=far_knots, far_curves=far_curves))
        elif ev.type == 3:
            out.append(MorseEvent(SADDLE, 4, ev.results, ev.operands, h))
        else:
            e, c = ev.operands
            (e2,) = ev.results
            side = "after" if before.host(c) == ("region", e) else "before"
            out.append(MorseEvent(SADDLE, 3, (e2,), (e, c), h, side=side,
                                  punctures=before.punctures(c),
                                  captures=tuple(before.trivial[c].children)))
    top = surface.top
    bottom = surface.bottom
    new_bottom = BoundaryData(top.disks, top.meridian_disks, top.annuli, top.annulus_slope,
                              ids=tuple(a.fold.top_ids))
    new_top = BoundaryData(bottom.disks, bottom.meridian_disks, bottom.annuli,
                           bottom.annulus_slope)
    return MorseSurface(surface.frame, new_bottom, new_top, tuple(out),
                        reflected=not surface.reflected)


# -- moves -------------------------------------------------------------------
# A move takes (surface, analysis) and returns (new surface, name, claim) or None.

def _remove_boundary(bd: BoundaryData, ids, removed: set[int], kinds) -> BoundaryData:
    m = bd.meridian_disks + 2 * bd.annuli
    ess, disks = list(ids[:m]), list(ids[m:])
    if ess:
        start = 0
        while ess[start % len(ess)] in removed and start > -len(ess):
            start -= 1
        ess = ess[start:] + ess[:start] if start else ess
        ess = [x for x in ess if x not in removed]
    disks = [x for x in disks if x not in removed]
    return BoundaryData(bd.disks - kinds.get("disk", 0),
                        bd.meridian_disks - kinds.get("meridian", 0),
                        bd.annuli - kinds.get("annulus", 0),
                        bd.annulus_slope if bd.annuli - kinds.get("annulus", 0) else None,
                        ids=tuple(ess + disks))


def strip_sphere(surface: MorseSurface, a: Analysis):
    if len(a.components) < 2:
        return None
    for comp in a.components:
        if comp.chi != 2:
            continue
        drop = set(comp.events)
        events = [ev for i, ev in enumerate(surface.events) if i not in drop]
        kinds = {"bottom": {}, "top": {}}
        for p in comp.pieces:
            kinds[p.side][p.kind] = kinds[p.side].get(p.kind, 0) + 1
        bottom = _remove_boundary(surface.bottom, surface.bottom_ids(), comp.curves, kinds["bottom"])
        top = _remove_boundary(surface.top, a.fold.top_ids, comp.curves, kinds["top"])
        cand = replace(surface, bottom=bottom, top=replace(top, ids=None))
        cand = cand.with_events(events)
        if _legal(cand) is not None:
            return cand, "strip-sphere", "claim2:sphere-component"
    return None


def cancel_max_saddle(surface: MorseSurface, a: Analysis):
    for i, ev in enumerate(surface.events):
        if ev.kind != MAX:
            continue
        (c,) = ev.results
        j = _first_touch(surface.events, i + 1, [c])
        if j is None:
            continue
        other = surface.events[j]
        if not (other.kind == SADDLE and other.type == 4 and other.operands[1] == c):
            continue
        got = _bring_adjacent(surface, a, i, j)
        if got is None:
            continue
        s2, a2, i2, j2 = got
        e = s2.events[j2].operands[0]
        (e2,) = s2.events[j2].results
        events = list(s2.events[:i2]) + _rename(s2.events[j2 + 1:], {e2: e})
        cand = s2.with_events(events)
        b = _legal(cand)
        if b is not None and b.states[-1].shape() == a.states[-1].shape():
            return cand, "cancel-extremum", "claim2:max-saddle-cancel"
    return None


def collapse_annulus(surface: MorseSurface, a: Analysis):
    """A max whose disk becomes an annulus that then fuses with a
    neighbouring curve is one type-3 saddle on that neighbour."""
    for i, ev in enumerate(surface.events):
        if ev.kind != MAX:
            continue
        (c,) = ev.results
        j = _first_touch(surface.events, i + 1, [c])
        if j is None:
            continue
        t1 = surface.events[j]
        if not (t1.kind == SADDLE and t1.type == 1):
            continue
        got = _bring_adjacent(surface, a, i, j)
        if got is None:
            continue
        s2, a2, i2, j2 = got
        e1, e2 = s2.events[j2].results
        k = _first_touch(s2.events, j2 + 1, [e1, e2])
        if k is None:
            continue
        t2 = s2.events[k]
        if not (t2.kind == SADDLE and t2.type == 2):
            continue
        got = _bring_adjacent(s2, a2, j2, k)
        if got is None:
            continue
        s3, a3, j3, k3 = got
        t2 = s3.events[k3]
        (d,) = t2.results
        x, y = t2.operands
        if x == e2 and y not in (e1, e2):
            repl = MorseEvent(SADDLE, 3, (y,), (e1, d), 0.5, side="after", punctures=0)
        elif y == e1 and x not in (e1, e2):
            repl = MorseEvent(SADDLE, 3, (x,), (e2, d), 0.5, side="before", punctures=0)
        else:
            continue
        start = j3 - 1
        events = list(s3.events[:start]) + [repl] + list(s3.events[k3 + 1:])
        cand = s3.with_events(events)
        b = _legal(cand)
        if b is None or b.states[start + 1].key() != a3.states[k3 + 1].key():
            continue
        return cand, "collapse-annulus", "claim2:annulus-joins-curve"
    return None


def merge_meridians(surface: MorseSurface, a: Analysis):
    bd = surface.bottom
    if bd.meridian_disks < 2 or not surface.events:
        return None
    ev = surface.events[0]
    if not (ev.kind == SADDLE and ev.type == 2):
        return None
    (d,) = ev.results
    if a.states[1].punctures(d) != 2:
        return None
    ids = surface.bottom_ids()
    m = bd.meridian_disks
    ess, disks = list(ids[:m]), list(ids[m:])
    rest = [x for x in ess if x not in ev.operands]
    rest = _rotate_to_knot_gap(a.states[1], rest)
    new_bd = BoundaryData(bd.disks + 1, m - 2, 0, None, ids=tuple(rest + [d] + disks))
    cand = replace(surface, bottom=new_bd).with_events(surface.events[1:])
    b = _legal(cand)
    if b is None or b.states[0].key() != a.states[1].key():
        return None
    return cand, "merge-meridians", "claim4:merge-meridian-disks"


def _rotate_to_knot_gap(st: LevelState, ess):
    if not ess:
        return []
    for k, e in enumerate(ess):
        bag = st.regions[e]
        if st.bag_punctures(bag) or bag.children:
            return ess[k:] + ess[:k]
    return ess


def disk_to_annulus(surface: MorseSurface, a: Analysis):
    bd = surface.bottom
    if bd.disks < 1 or bd.meridian_disks or not surface.events:
        return None
    ev = surface.events[0]
    ids = surface.bottom_ids()
    m = 2 * bd.annuli
    ess, disks = list(ids[:m]), list(ids[m:])
    if not (ev.kind == SADDLE and ev.type == 1 and ev.operands == (disks[0],)):
        return None
    e1, e2 = ev.results
    new_ess = [e1, e2] + ess[1:] + ess[:1]
    new_bd = BoundaryData(bd.disks - 1, 0, bd.annuli + 1, a.states[1].slope,
                          ids=tuple(new_ess + disks[1:]))
    cand = replace(surface, bottom=new_bd).with_events(surface.events[1:])
    b = _legal(cand)
    if b is None or b.states[0].key() != a.states[1].key():
        return None
    return cand, "disk-to-annulus", "claim5:push-saddle-into-R0"


def push_type4(surface: MorseSurface, a: Analysis):
    bd = surface.bottom
    if bd.disks < 1 or not surface.events:
        return None
    ev = surface.events[0]
    if not (ev.kind == SADDLE and ev.type == 4):
        return None
    e, c = ev.operands
    (e2,) = ev.results
    ids = list(surface.bottom_ids())
    if c not in ids or e not in ids:
        return None
    new_ids = [e2 if x == e else x for x in ids if x != c]
    new_bd = replace(bd, disks=bd.disks - 1, ids=tuple(new_ids))
    cand = replace(surface, bottom=new_bd).with_events(surface.events[1:])
    b = _legal(cand)
    if b is None or b.states[0].key() != a.states[1].key():
        return None
    return cand, "push-saddle", "claim3:push-type4-into-R0"


# Priority: stripping, extremum cancellation, boundary pushes, saddle eliminations.
MOVES: list[tuple[str, Callable]] = [
    ("strip", strip_sphere),
    ("extremum", cancel_max_saddle),
    ("extremum", collapse_annulus),
    ("boundary", merge_meridians),
    ("boundary", disk_to_annulus),
    ("saddle", push_type4),
]

_MIRROR_CLAIM = {
    "claim2:max-saddle-cancel": "claim2:saddle-min-cancel",
    "claim2:annulus-joins-curve": "claim2:annulus-joins-curve",
    "claim4:merge-meridian-disks": "claim4:merge-meridian-disks-R1",
    "claim5:push-saddle-into-R0": "claim5:push-saddle-into-R1",
    "claim3:push-type4-into-R0": "claim3:push-type3-into-R1",
}


def _canonical_slopes(surface: MorseSurface, a: Analysis):
    """Slopes ``r_1..r_{n+1}`` if the description has the shape
    (type 2, type 1)^n between single annuli, else None."""
    for bd in (surface.bottom, surface.top):
        if (bd.annuli, bd.disks, bd.meridian_disks) != (1, 0, 0):
            return None
    evs = surface.events
    if len(evs) % 2:
        return None
    for k, ev in enumerate(evs):
        if ev.kind != SADDLE or ev.type != (2 if k % 2 == 0 else 1):
            return None
    return [a.states[2 * i].slope for i in range(len(evs) // 2 + 1)]


def classify(surface: MorseSurface, a: Analysis) -> Terminal:
    """Verdict for a description no move applies to."""
    evs = surface.events
    if any(ev.kind != SADDLE for ev in evs):
        return Terminal(Verdict.COMPRESSIBLE,
                        "claim2: a local extremum survives every cancellation")
    types = [ev.type for ev in evs]
    if 3 in types or 4 in types:
        return Terminal(Verdict.COMPRESSIBLE,
                        "claim3: a type-3/4 saddle sits next to another saddle")
    for bd in (surface.bottom, surface.top):
        if bd.meridian_disks:
            return Terminal(Verdict.COMPRESSIBLE,
                            "claim4: a meridian disk survives; the first saddle on it compresses S")
    for side, bd in (("bottom", surface.bottom), ("top", surface.top)):
        if bd.disks:
            return Terminal(Verdict.COMPRESSIBLE,
                            f"claim5: a trivial disk in the {side} solid torus is not pushed out")
    for bd in (surface.bottom, surface.top):
        if bd.annuli > 1:
            return Terminal(Verdict.COMPRESSIBLE,
                            "claim6: nested annuli in a connected surface give a compression disk")
    slopes = _canonical_slopes(surface, a)
    if slopes is None:
        raise EngineDefect("no move applies and no rule classifies the description", surface)
    for k in range(1, len(evs), 2):
        (d,) = evs[k - 1].results
        if a.states[k].punctures(d) != 2:
            return Terminal(Verdict.COMPRESSIBLE,
                            "claim8: a level disk meets k in no point and compresses S")
    lam, mu = surface.bottom_meridian, surface.top_meridian
    if delta(slopes[0], lam) < 2:
        return Terminal(Verdict.COMPRESSIBLE, "claim9: first slope meets lambda_M fewer than twice")
    for i in range(len(slopes) - 1):
        if delta(slopes[i], slopes[i + 1]) < 2:
            return Terminal(Verdict.COMPRESSIBLE,
                            f"claim9: delta(r_{i + 1}, r_{i + 2}) < 2")
    if delta(slopes[-1], mu) < 2:
        return Terminal(Verdict.COMPRESSIBLE, "claim9: last slope meets mu_M fewer than twice")
    return Terminal(Verdict.CANONICAL, f"claim9: toroidal graph of type {len(slopes)}")


def reduce_step(surface: MorseSurface) -> Reduced | Terminal:
    """Apply the highest-priority move, or return the terminal verdict.

    Grammar violations raise :class:`IllegalEvent`, except a curve
    bounding a disk that meets the knot once, which is reported as the
    meridional compression it is.
    """
    try:
        a = analyze(surface)
    except IllegalEvent as exc:
        if exc.meridional:
            return Terminal(Verdict.MERIDIONALLY_COMPRESSIBLE, f"event {exc.index}: {exc.reason}")
        raise
    chi = euler_characteristic(surface)
    if len(a.components) == 1 and a.components[0].chi == 2:
        return Terminal(Verdict.COMPRESSIBLE, "S is a sphere")
    before = _complexity(surface, a)
    mirror = None
    for _, move in MOVES:
        for flipped in (False, True):
            if flipped:
                if mirror is None:
                    mirror = reflect(surface, a)
                    mirror_a = analyze(mirror)
                got = move(mirror, mirror_a)
            else:
                got = move(surface, a)
            if got is None:
                continue
            cand, name, claim = got
            if flipped:
                cand = reflect(cand)
                claim = _MIRROR_CLAIM.get(claim, claim)
            b = analyze(cand)
            after = _complexity(cand, b)
            if not termination_measure(cand, b) < termination_measure(surface, a):
                raise EngineDefect(f"move {name} did not decrease complexity", surface)
            chi_after = euler_characteristic(cand)
            return Reduced(cand, TraceEntry(name, claim, before, after, chi, chi_after,
                                            removed_chi=chi - chi_after))
    if len(a.components) > 1:
        return Terminal(Verdict.DISCONNECTED,
                        f"claim6: S has {len(a.components)} components")
    return classify(surface, a)


def normalize(surface: MorseSurface) -> Normalization:
    """Iterate :func:`reduce_step` to a verdict.

    Terminates because every step lowers :func:`termination_measure`.
    """
    if not surface.events and not surface.bottom.pieces + surface.top.pieces:
        raise MalformedSurface("empty surface")
    trace: list[TraceEntry] = []
    budget = (surface.bottom.pieces + surface.top.pieces + len(surface.events) + 2) * (
        len(surface.events) + 1)
    for _ in range(budget + 1):
        step = reduce_step(surface)
        if isinstance(step, Terminal):
            return Normalization(step.verdict, step.reason, surface, trace)
        trace.append(step.entry)
        surface = step.surface
    raise EngineDefect("step budget exceeded", surface)


def inter_saddle_slopes(surface: MorseSurface):
    a = analyze(surface)
    slopes = _canonical_slopes(surface, a)
    if slopes is None:
        raise ValueError("description is not in canonical form")
    return slopes


def extract_graph(normalized: Normalization | MorseSurface) -> ToroidalGraph:
    """The toroidal graph of a canonical description, its curves taken at
    the nonsingular levels between saddle pairs."""
    surface = normalized.surface if isinstance(normalized, Normalization) else normalized
    if isinstance(normalized, Normalization) and not normalized.canonical:
        raise ValueError(f"not canonical: {normalized.reason}")
    slopes = inter_saddle_slopes(surface)
    evs = surface.events
    heights = [0.0]
    for i in range(1, len(slopes) - 1):
        heights.append((evs[2 * i - 1].height + evs[2 * i].height) / 2)
    if len(slopes) > 1:
        heights.append(1.0)
    hs = [Fraction(h).limit_denominator(10**6) for h in heights]
    report = validate_graph(surface.frame, slopes)
    if not report.valid:
        raise ValueError("canonical slopes violate the graph conditions")
    return build_graph(surface.frame, slopes, hs)
