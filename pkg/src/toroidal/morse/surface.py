"""Morse descriptions of a closed surface meeting ``T x I``.

Height 0 is ``T_0`` (the ``R_0`` side), height 1 is ``T_1``.  The surface
is given by its pieces in the two solid tori and the ordered singular
events of the height function on the middle piece.  Folding the events
from the ``S_0`` state gives the level state between consecutive events.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from toroidal.morse.state import Bag, IllegalEvent, LevelState
from toroidal.slopes import ManifoldFrame, Slope, make_frame

MAX, MIN, SADDLE = "max", "min", "saddle"
_RESULT_COUNT = {(MAX, None): 1, (MIN, None): 0, (SADDLE, 1): 2, (SADDLE, 2): 1,
                 (SADDLE, 3): 2, (SADDLE, 4): 1}


@dataclass(frozen=True)
class BoundaryData:
    """Pieces of ``S`` in one solid torus.

    Trivial disks are nested around the knot arc on the boundary torus;
    annuli are nested around it too, outside the disks.  ``ids`` labels
    the boundary curves: essential curves in cyclic order starting with
    the one just before the knot's gap, then disks from outermost in.
    """

    disks: int = 0
    meridian_disks: int = 0
    annuli: int = 0
    annulus_slope: Slope | None = None
    ids: tuple[int, ...] | None = None

    @property
    def pieces(self) -> int:
        return self.disks + self.meridian_disks + self.annuli

    @property
    def curve_count(self) -> int:
        return self.disks + self.meridian_disks + 2 * self.annuli

    def to_json(self) -> dict:
        out = {"disks": self.disks, "meridian_disks": self.meridian_disks,
               "annuli": self.annuli}
        if self.annulus_slope is not None:
            out["annulus_slope"] = self.annulus_slope.to_json()
        return out


@dataclass(frozen=True)
class MorseEvent:
    """One critical point.

    ``operands`` are the curves consumed and ``results`` the curves
    created.  Saddle parameters: ``slope`` (type 1, required when the
    level has no essential curve), ``far_knots``/``far_curves`` (type 1,
    contents of the split region moved beyond the second new curve),
    ``side``/``punctures``/``captures`` (type 3, where the new trivial
    curve sits and what it encloses).  A max's single optional operand is
    its host: an essential curve (the gap after it) or a trivial curve.
    """

    kind: str
    type: int | None
    operands: tuple[int, ...]
    results: tuple[int, ...]
    height: float
    slope: Slope | None = None
    far_knots: int = 0
    far_curves: tuple[int, ...] = ()
    side: str = "after"
    punctures: int = 0
    captures: tuple[int, ...] = ()

    @property
    def chi(self) -> int:
        return -1 if self.kind == SADDLE else 1

    def touches(self, c: int) -> bool:
        return (c in self.operands or c in self.results or c in self.captures
                or c in self.far_curves)

    def label(self) -> str:
        return f"saddle{self.type}" if self.kind == SADDLE else self.kind

    def to_json(self) -> dict:
        out = {"height": self.height, "kind": self.kind}
        if self.kind == SADDLE:
            out["type"] = self.type
        out["operands"] = list(self.operands)
        out["results"] = list(self.results)
        if self.slope is not None:
            out["slope"] = self.slope.to_json()
        if self.far_knots:
            out["far_knots"] = self.far_knots
        if self.far_curves:
            out["far_curves"] = list(self.far_curves)
        if self.type == 3:
            out["side"] = self.side
            out["punctures"] = self.punctures
            if self.captures:
                out["captures"] = list(self.captures)
        return out


@dataclass(frozen=True)
class MorseSurface:
    frame: ManifoldFrame
    bottom: BoundaryData
    top: BoundaryData
    events: tuple[MorseEvent, ...] = ()
    reflected: bool = False

    @property
    def bottom_meridian(self) -> Slope:
        return self.frame.mu_M if self.reflected else self.frame.lambda_M

    @property
    def top_meridian(self) -> Slope:
        return self.frame.lambda_M if self.reflected else self.frame.mu_M

    def bottom_ids(self) -> tuple[int, ...]:
        if self.bottom.ids is not None:
            return self.bottom.ids
        return tuple(range(self.bottom.curve_count))

    def with_events(self, events: Sequence[MorseEvent], **kw) -> "MorseSurface":
        return replace(self, events=tuple(_reheight(self.events, events)), **kw)

    def to_json(self) -> dict:
        out = {"frame": self.frame.to_json(), "bottom": self.bottom.to_json(),
               "top": self.top.to_json(), "events": [e.to_json() for e in self.events]}
        if self.bottom.ids is not None and self.bottom.ids != tuple(range(self.bottom.curve_count)):
            out["bottom_ids"] = list(self.bottom.ids)
        return out


def _reheight(old: Sequence[MorseEvent], new: Sequence[MorseEvent]) -> list[MorseEvent]:
    """Keep heights sorted after events were removed or reordered."""
    hs = sorted(e.height for e in new)
    return [replace(e, height=h) for e, h in zip(new, hs)]


# -- boundary states --------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    """A component of ``S_0`` or ``S_1`` and the level curves it bounds."""

    side: str
    kind: str
    curves: tuple[int, ...]

    @property
    def chi(self) -> int:
        return 0 if self.kind == "annulus" else 1


def boundary_state(bd: BoundaryData, meridian: Slope, ids: Sequence[int], side: str,
                   index: int) -> tuple[LevelState, list[Piece]]:
    for name in ("disks", "meridian_disks", "annuli"):
        v = getattr(bd, name)
        if not isinstance(v, int) or v < 0:
            raise IllegalEvent(index, f"{side}: {name} must be a nonnegative integer")
    if bd.annuli and bd.meridian_disks:
        raise IllegalEvent(index, f"{side}: annuli and meridian disks cannot coexist")
    if bd.meridian_disks % 2:
        raise IllegalEvent(index, f"{side}: odd number of essential curves (S separates)")
    if bd.annuli and bd.annulus_slope is None:
        raise IllegalEvent(index, f"{side}: annuli need annulus_slope")
    ids = list(ids)
    if len(ids) != bd.curve_count or len(set(ids)) != len(ids):
        raise IllegalEvent(index, f"{side}: expected {bd.curve_count} distinct curve ids")
    m = bd.meridian_disks + 2 * bd.annuli
    ess, disks = ids[:m], ids[m:]
    st = LevelState()
    pieces = []
    if m:
        st.slope = meridian if bd.meridian_disks else bd.annulus_slope
        st.ess = ess
        st.regions = {e: Bag() for e in ess}
        inner = st.regions[ess[0]]
        if bd.meridian_disks:
            pieces += [Piece(side, "meridian", (e,)) for e in ess]
        else:
            for j in range(bd.annuli):
                pieces.append(Piece(side, "annulus", (ess[-j % m], ess[1 + j])))
    else:
        inner = st.regions[None]
    for c in disks:
        inner.children.append(c)
        st.trivial[c] = Bag()
        inner = st.trivial[c]
        pieces.append(Piece(side, "disk", (c,)))
    inner.knots = 2
    return st, pieces


def match_top(st: LevelState, bd: BoundaryData, meridian: Slope, index: int) -> list[int]:
    """Curve ids of the final state in :class:`BoundaryData` order, or raise."""
    m = bd.meridian_disks + 2 * bd.annuli
    boundary_state(bd, meridian, list(range(bd.curve_count)), "top", index)
    fail = IllegalEvent(index, "final level does not match the S_1 data")
    if len(st.ess) != m:
        raise fail
    if m:
        slope = meridian if bd.meridian_disks else bd.annulus_slope
        if st.slope != slope:
            raise fail
        full = [e for e in st.ess if st.bag_punctures(st.regions[e]) or st.regions[e].children]
        if len(full) != 1:
            raise fail
        i = st.ess.index(full[0])
        ess = st.ess[i:] + st.ess[:i]
        bag = st.regions[ess[0]]
    else:
        ess = []
        bag = st.regions[None]
    disks = []
    for _ in range(bd.disks):
        if bag.knots or len(bag.children) != 1:
            raise fail
        disks.append(bag.children[0])
        bag = st.trivial[bag.children[0]]
    if bag.knots != 2 or bag.children:
        raise fail
    return ess + disks


# -- event semantics --------------------------------------------------------

def _check_trivial(st: LevelState, c: int, i: int):
    if c not in st.trivial:
        raise IllegalEvent(i, f"curve {c} is not a trivial curve at this level")


def _check_essential(st: LevelState, e: int, i: int):
    if e not in st.ess:
        raise IllegalEvent(i, f"curve {e} is not an essential curve at this level")


def _new_trivial(st: LevelState, c: int, bag: Bag, i: int):
    st.trivial[c] = bag
    p = st.punctures(c)
    if p == 1:
        raise IllegalEvent(i, f"{IllegalEvent.MERIDIONAL}: curve {c} bounds a disk meeting k once")


def apply_event(st: LevelState, ev: MorseEvent, i: int) -> LevelState:
    st = st.copy()
    want = _RESULT_COUNT.get((ev.kind, ev.type))
    if want is None:
        raise IllegalEvent(i, f"unknown event {ev.kind}/{ev.type}")
    if len(ev.results) != want:
        raise IllegalEvent(i, f"{ev.label()} produces {want} curves")
    existing = st.curves
    for r in ev.results:
        if r in existing and r not in ev.operands:
            raise IllegalEvent(i, f"result id {r} already in use")
    if len(set(ev.results)) != len(ev.results):
        raise IllegalEvent(i, "repeated result ids")

    if ev.kind == MAX:
        (c,) = ev.results
        if not ev.operands:
            if st.ess:
                raise IllegalEvent(i, "max needs a host curve when essential curves exist")
            host = st.regions[None]
        elif len(ev.operands) == 1:
            x = ev.operands[0]
            if x in st.ess:
                host = st.regions[x]
            elif x in st.trivial:
                host = st.trivial[x]
            else:
                raise IllegalEvent(i, f"max host {x} not present")
        else:
            raise IllegalEvent(i, "max takes at most one host operand")
        if c in existing:
            raise IllegalEvent(i, f"result id {c} already in use")
        host.children.append(c)
        st.trivial[c] = Bag()
        return st

    if ev.kind == MIN:
        if len(ev.operands) != 1:
            raise IllegalEvent(i, "min takes one operand")
        (c,) = ev.operands
        _check_trivial(st, c, i)
        if st.trivial[c].children or st.trivial[c].knots:
            raise IllegalEvent(i, f"min on curve {c} whose disk is not empty")
        st.bag(st.host(c)).children.remove(c)
        del st.trivial[c]
        return st

    t = ev.type
    if t == 1:
        if len(ev.operands) != 1:
            raise IllegalEvent(i, "type-1 saddle takes one trivial curve")
        (c,) = ev.operands
        e1, e2 = ev.results
        _check_trivial(st, c, i)
        where = st.host(c)
        if where[0] != "region":
            raise IllegalEvent(i, f"curve {c} is nested in a disk and cannot become essential")
        g = where[1]
        host = st.regions[g]
        inner = st.trivial.pop(c)
        host.children.remove(c)
        if st.ess:
            if ev.slope is not None and ev.slope != st.slope:
                raise IllegalEvent(i, "new essential curves must share the level's slope")
            if ev.far_knots > host.knots or not set(ev.far_curves) <= set(host.children):
                raise IllegalEvent(i, "far contents not in the split region")
            far = Bag(ev.far_knots, [x for x in host.children if x in ev.far_curves])
            host.knots -= ev.far_knots
            host.children = [x for x in host.children if x not in ev.far_curves]
            k = st.ess.index(g)
            st.ess[k + 1:k + 1] = [e1, e2]
            st.regions[e1] = inner
            st.regions[e2] = far
        else:
            if ev.slope is None:
                raise IllegalEvent(i, "type-1 saddle on a level without essential curves needs a slope")
            if ev.far_knots or ev.far_curves:
                raise IllegalEvent(i, "far contents only apply between existing essential curves")
            st.slope = ev.slope
            st.ess = [e1, e2]
            st.regions = {e1: inner, e2: host}
        return st

    if t == 2:
        if len(ev.operands) != 2:
            raise IllegalEvent(i, "type-2 saddle joins two essential curves")
        a, b = ev.operands
        (d,) = ev.results
        _check_essential(st, a, i)
        _check_essential(st, b, i)
        if a == b or st.next(a) != b:
            raise IllegalEvent(i, f"saddle joins non-adjacent curves {a}, {b}")
        inner = st.regions.pop(a)
        if len(st.ess) == 2:
            rest = st.regions.pop(b)
            st.ess = []
            st.slope = None
            rest.children.append(d)
            st.regions = {None: rest}
        else:
            p = st.prev(a)
            after = st.regions.pop(b)
            merged = st.regions[p]
            merged.knots += after.knots
            merged.children += after.children
            merged.children.append(d)
            st.ess = [x for x in st.ess if x not in (a, b)]
        _new_trivial(st, d, inner, i)
        return st

    if t == 3:
        if len(ev.operands) != 1:
            raise IllegalEvent(i, "type-3 saddle takes one essential curve")
        (e,) = ev.operands
        e2, c = ev.results
        _check_essential(st, e, i)
        if ev.side not in ("after", "before"):
            raise IllegalEvent(i, "side must be 'after' or 'before'")
        key = e if ev.side == "after" else st.prev(e)
        region = st.regions[key]
        if not set(ev.captures) <= set(region.children):
            raise IllegalEvent(i, "captured curves are not in the adjacent region")
        direct = ev.punctures - sum(st.punctures(x) for x in ev.captures)
        if not 0 <= direct <= region.knots:
            raise IllegalEvent(i, "type-3 saddle encloses knot points the region does not have")
        region.knots -= direct
        region.children = [x for x in region.children if x not in ev.captures]
        region.children.append(c)
        _rename_essential(st, e, e2)
        _new_trivial(st, c, Bag(direct, list(ev.captures)), i)
        return st

    if t == 4:
        if len(ev.operands) != 2:
            raise IllegalEvent(i, "type-4 saddle joins an essential and a trivial curve")
        e, c = ev.operands
        (e2,) = ev.results
        _check_essential(st, e, i)
        _check_trivial(st, c, i)
        where = st.host(c)
        if where[0] != "region" or where[1] not in (e, st.prev(e)):
            raise IllegalEvent(i, f"trivial curve {c} is not beside essential curve {e}")
        region = st.regions[where[1]]
        inner = st.trivial.pop(c)
        region.children.remove(c)
        region.knots += inner.knots
        region.children += inner.children
        _rename_essential(st, e, e2)
        return st

    raise IllegalEvent(i, f"unknown saddle type {t}")


def _rename_essential(st: LevelState, old: int, new: int):
    if old == new:
        return
    st.ess[st.ess.index(old)] = new
    st.regions[new] = st.regions.pop(old)


# -- folding and bookkeeping ----------------------------------------------

@dataclass
class Fold:
    states: list[LevelState]
    pieces: list[Piece]
    top_ids: list[int]


def _fold(surface: MorseSurface) -> Fold:
    events = surface.events
    for i, ev in enumerate(events):
        if not 0 < ev.height < 1:
            raise IllegalEvent(i, "event heights lie strictly between 0 and 1")
        if i and not events[i - 1].height < ev.height:
            raise IllegalEvent(i, "event heights must increase")
    st, pieces = boundary_state(surface.bottom, surface.bottom_meridian,
                                surface.bottom_ids(), "bottom", -1)
    states = [st]
    for i, ev in enumerate(events):
        st = apply_event(st, ev, i)
        if len(st.ess) % 2:
            raise IllegalEvent(i, "odd number of essential curves (S separates)")
        states.append(st)
    top_ids = match_top(st, surface.top, surface.top_meridian, len(events))
    top = BoundaryData(surface.top.disks, surface.top.meridian_disks, surface.top.annuli,
                       surface.top.annulus_slope)
    _, top_pieces = boundary_state(top, surface.top_meridian, top_ids, "top", len(events))
    return Fold(states, pieces + top_pieces, top_ids)


def fold_states(surface: MorseSurface) -> list[LevelState]:
    """Level states before the first event, between events, and after the last.

    Raises :class:`IllegalEvent` at the first violation.
    """
    return _fold(surface).states


class _UF:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, *xs):
        roots = [self.find(x) for x in xs]
        for r in roots[1:]:
            self.parent[r] = roots[0]


@dataclass(order=True, frozen=True)
class Complexity:
    """``(|S_0| + |S_1| + |S~|, |X|)``, compared lexicographically."""

    pieces: int
    singular: int

    def to_json(self):
        return [self.pieces, self.singular]


@dataclass
class Component:
    curves: set = field(default_factory=set)
    events: list = field(default_factory=list)
    pieces: list = field(default_factory=list)
    chi: int = 0


@dataclass
class Analysis:
    fold: Fold
    middle_components: int
    components: list[Component]

    @property
    def states(self):
        return self.fold.states


def analyze(surface: MorseSurface) -> Analysis:
    fold = _fold(surface)
    middle = _UF()
    for c in fold.states[0].curves:
        middle.find(c)
    for ev in surface.events:
        # a max's operand is only its host, not part of it
        ids = ev.results if ev.kind == MAX else ev.operands + ev.results
        if ids:
            middle.union(*ids)
    n_middle = len({middle.find(x) for x in list(middle.parent)})

    whole = _UF()
    for x in list(middle.parent):
        whole.union(x, middle.find(x))
    for p in fold.pieces:
        whole.union(*p.curves)
    comps: dict = {}

    def comp(x):
        return comps.setdefault(whole.find(x), Component())

    for x in list(whole.parent):
        comp(x).curves.add(x)
    for i, ev in enumerate(surface.events):
        anchor = (ev.results or ev.operands)[0]
        c = comp(anchor)
        c.events.append(i)
        c.chi += ev.chi
    for p in fold.pieces:
        c = comp(p.curves[0])
        c.pieces.append(p)
        c.chi += p.chi
    return Analysis(fold, n_middle, list(comps.values()))


def complexity(surface: MorseSurface) -> Complexity:
    a = analyze(surface)
    return Complexity(surface.bottom.pieces + surface.top.pieces + a.middle_components,
                      len(surface.events))


class OddEuler(ValueError):
    pass


def euler_characteristic(surface: MorseSurface) -> int:
    """``#max + #min - #saddles`` plus one per disk of ``S_0`` and ``S_1``."""
    chi = sum(ev.chi for ev in surface.events)
    for bd in (surface.bottom, surface.top):
        chi += bd.disks + bd.meridian_disks
    return chi


def genus(surface: MorseSurface) -> int:
    chi = euler_characteristic(surface)
    if chi % 2:
        raise OddEuler(f"closed orientable surfaces have even Euler characteristic, got {chi}")
    comps = analyze(surface).components
    return (2 * len(comps) - chi) // 2


def knot_trace(surface: MorseSurface) -> list[tuple[tuple, tuple]]:
    """Where the two strands of ``k`` sit at each level.

    Each entry gives, per strand, ``("gap", e)`` for the gap after
    essential curve ``e``, ``("region",)`` for the torus with no essential
    curves, or ``("disk", c)`` for the innermost trivial curve around it.
    """
    out = []
    for st in fold_states(surface):
        spots = []
        for key, bag in st.regions.items():
            spots += [("gap", key) if key is not None else ("region",)] * bag.knots
        for c, bag in st.trivial.items():
            spots += [("disk", c)] * bag.knots
        out.append(tuple(spots))
    return out


# -- JSON ------------------------------------------------------------------

class MalformedSurface(ValueError):
    pass


def _boundary_from_json(data, side) -> BoundaryData:
    if not isinstance(data, dict):
        raise MalformedSurface(f"{side} must be an object")
    unknown = set(data) - {"disks", "meridian_disks", "annuli", "annulus_slope"}
    if unknown:
        raise MalformedSurface(f"{side}: unknown keys {sorted(unknown)}")
    slope = data.get("annulus_slope")
    return BoundaryData(data.get("disks", 0), data.get("meridian_disks", 0),
                        data.get("annuli", 0), Slope.from_json(slope) if slope is not None else None)


def surface_from_json(data) -> MorseSurface:
    if not isinstance(data, dict):
        raise MalformedSurface("surface JSON must be an object")
    try:
        frame = ManifoldFrame.from_json(data["frame"]) if "frame" in data else make_frame(1, 0)
        bottom = _boundary_from_json(data.get("bottom", {}), "bottom")
        top = _boundary_from_json(data.get("top", {}), "top")
        raw = data.get("events", [])
        if not isinstance(raw, list):
            raise MalformedSurface("events must be a list")
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedSurface(str(exc)) from exc
    if "bottom_ids" in data:
        bottom = replace(bottom, ids=tuple(data["bottom_ids"]))
    ids = bottom.ids if bottom.ids is not None else tuple(range(bottom.curve_count))
    used = set(ids)
    for ev in raw:
        if isinstance(ev, dict):
            used |= set(ev.get("operands", [])) | set(ev.get("results", []))
    counter = max(used, default=-1) + 1
    events = []
    for i, ev in enumerate(raw):
        try:
            kind = ev["kind"]
            t = ev.get("type") if kind == SADDLE else None
            if (kind, t) not in _RESULT_COUNT:
                raise MalformedSurface(f"event {i}: unknown kind/type {kind}/{t}")
            results = ev.get("results")
            if results is None:
                results = list(range(counter, counter + _RESULT_COUNT[(kind, t)]))
                counter += len(results)
            slope = ev.get("slope")
            events.append(MorseEvent(
                kind, t, tuple(ev.get("operands", [])), tuple(results), float(ev["height"]),
                slope=Slope.from_json(slope) if slope is not None else None,
                far_knots=int(ev.get("far_knots", 0)),
                far_curves=tuple(ev.get("far_curves", [])),
                side=ev.get("side", "after"),
                punctures=int(ev.get("punctures", 0)),
                captures=tuple(ev.get("captures", []))))
        except MalformedSurface:
            raise
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise MalformedSurface(f"event {i}: {exc}") from exc
    if not events and not bottom.pieces + top.pieces:
        raise MalformedSurface("empty surface")
    return MorseSurface(frame, bottom, top, tuple(events))
