"""Building descriptions: canonical ones from graphs, random legal ones."""

from __future__ import annotations

import random
from dataclasses import replace

from toroidal.graph import ToroidalGraph, random_graph
from toroidal.level_knot import LevelKnot
from toroidal.morse.state import Bag, IllegalEvent, LevelState
from toroidal.morse.surface import (
    MAX,
    MIN,
    SADDLE,
    BoundaryData,
    MorseEvent,
    MorseSurface,
    apply_event,
    boundary_state,
    match_top,
)
from toroidal.slopes import ManifoldFrame, Slope, primitive_slopes


def synthesize(graph: ToroidalGraph, knot: LevelKnot | None = None) -> MorseSurface:
    """Canonical description of ``boundary N(Gamma)``.

    Between consecutive curves the two parallel copies of ``gamma_i`` fuse
    into the disk around the handle (type 2) and split into two copies of
    ``gamma_{i+1}`` (type 1); the knot's two points stay inside.
    """
    if knot is not None and knot.graph.gammas != graph.gammas:
        raise ValueError("knot is level with respect to a different graph")
    gs = graph.gammas
    n = len(gs)
    hs = [float(h) for h in graph.heights] if n > 1 else [0.0]
    events = []
    cur = (0, 1)
    nxt = 2
    for i in range(n - 1):
        lo, hi = hs[i], hs[i + 1]
        y = lo + (hi - lo) / 3
        z = lo + 2 * (hi - lo) / 3
        d = nxt
        events.append(MorseEvent(SADDLE, 2, cur, (d,), y))
        cur = (nxt + 1, nxt + 2)
        events.append(MorseEvent(SADDLE, 1, (d,), cur, z, slope=gs[i + 1]))
        nxt += 3
    bottom = BoundaryData(annuli=1, annulus_slope=gs[0])
    top = BoundaryData(annuli=1, annulus_slope=gs[-1])
    return MorseSurface(graph.frame, bottom, top, tuple(events))


# -- random legal descriptions ----------------------------------------------

def _candidates(st: LevelState, fresh: int, slopes, rng: random.Random):
    """Some legal next events (results use ids from ``fresh`` on)."""
    out = []
    a, b = fresh, fresh + 1
    hosts = list(st.ess) + list(st.trivial) if st.ess else [None] + list(st.trivial)
    for h in hosts:
        out.append(MorseEvent(MAX, None, () if h is None else (h,), (a,), 0.5))
    for c, bag in st.trivial.items():
        if not bag.knots and not bag.children:
            out.append(MorseEvent(MIN, None, (c,), (), 0.5))
    for c in st.trivial:
        kind, key = st.host(c)
        if kind != "region":
            continue
        if st.ess:
            region = st.regions[key]
            fk = rng.choice(range(region.knots + 1)) if rng.random() < 0.2 else 0
            others = [x for x in region.children if x != c]
            fc = tuple(x for x in others if rng.random() < 0.3)
            out.append(MorseEvent(SADDLE, 1, (c,), (a, b), 0.5, far_knots=fk, far_curves=fc))
        else:
            out.append(MorseEvent(SADDLE, 1, (c,), (a, b), 0.5, slope=rng.choice(slopes)))
    for e in st.ess:
        out.append(MorseEvent(SADDLE, 2, (e, st.next(e)), (a,), 0.5))
        for side in ("after", "before"):
            key = e if side == "after" else st.prev(e)
            region = st.regions[key]
            caps = tuple(x for x in region.children if rng.random() < 0.3)
            inside = sum(st.punctures(x) for x in caps)
            for p in {inside, inside + region.knots} - {inside + 1}:
                out.append(MorseEvent(SADDLE, 3, (e,), (a, b), 0.5, side=side,
                                      punctures=p, captures=caps))
            for c in region.children:
                out.append(MorseEvent(SADDLE, 4, (e, c), (a,), 0.5))
    return out


def _top_data(st: LevelState, frame_mu: Slope, rng: random.Random) -> BoundaryData | None:
    m = len(st.ess)
    options = []
    if m:
        options.append(BoundaryData(annuli=m // 2, annulus_slope=st.slope))
        if st.slope == frame_mu:
            options.append(BoundaryData(meridian_disks=m))
    else:
        options.append(BoundaryData())
    rng.shuffle(options)
    for bd in options:
        for disks in range(0, 4):
            cand = replace(bd, disks=disks)
            try:
                match_top(st, cand, frame_mu, 0)
            except IllegalEvent:
                continue
            return cand
    return None


def _random_bottom(frame: ManifoldFrame, slopes, rng: random.Random) -> BoundaryData:
    r = rng.random()
    if r < 0.45:
        return BoundaryData(annuli=1, annulus_slope=rng.choice(slopes))
    if r < 0.55:
        return BoundaryData(annuli=2, annulus_slope=rng.choice(slopes))
    if r < 0.7:
        return BoundaryData(meridian_disks=2, disks=rng.choice((0, 0, 1)))
    if r < 0.85:
        return BoundaryData(disks=rng.choice((1, 1, 2)))
    if r < 0.95:
        return BoundaryData(annuli=1, annulus_slope=rng.choice(slopes), disks=1)
    return BoundaryData()


def random_walk_surface(frame: ManifoldFrame, max_events: int, rng: random.Random,
                        coefficient_bound: int = 3, tries: int = 200) -> MorseSurface:
    """A legal description built by a random walk of events."""
    slopes = primitive_slopes(coefficient_bound)
    for _ in range(tries):
        bottom = _random_bottom(frame, slopes, rng)
        st, _ = boundary_state(bottom, frame.lambda_M, range(bottom.curve_count), "bottom", -1)
        fresh = bottom.curve_count
        events = []
        length = rng.randint(0, max_events)
        ok = True
        for i in range(length):
            cands = _candidates(st, fresh, slopes, rng)
            rng.shuffle(cands)
            for ev in cands:
                try:
                    nst = apply_event(st, ev, i)
                except IllegalEvent:
                    continue
                break
            else:
                ok = False
                break
            st = nst
            events.append(ev)
            fresh += 2
        if not ok:
            continue
        top = _top_data(st, frame.mu_M, rng)
        if top is None or not events and not bottom.pieces + top.pieces:
            continue
        return MorseSurface(frame, bottom, top, tuple(_spread(events)))
    raise RuntimeError("random walk found no legal description")


def perturb(surface: MorseSurface, rng: random.Random, max_events: int) -> MorseSurface:
    """Insert removable detours (max/type-4 and type-3/min pairs) into a
    legal description, keeping it legal."""
    from toroidal.morse.surface import fold_states

    events = list(surface.events)
    for _ in range(rng.randint(1, 3)):
        if len(events) + 2 > max_events:
            break
        states = fold_states(replace(surface, events=tuple(_spread(events))))
        k = rng.randrange(len(states))
        st = states[k]
        used = set()
        for s in states:
            used |= s.curves
        for ev in events:
            used |= set(ev.results)
        fresh = max(used, default=-1) + 1
        if not st.ess:
            continue
        e = rng.choice(st.ess)
        if rng.random() < 0.5:
            pair = [MorseEvent(MAX, None, (e,), (fresh,), 0.5),
                    MorseEvent(SADDLE, 4, (e, fresh), (fresh + 1,), 0.5)]
        else:
            pair = [MorseEvent(SADDLE, 3, (e,), (fresh + 1, fresh), 0.5, side="after"),
                    MorseEvent(MIN, None, (fresh,), (), 0.5)]
        new_e = fresh + 1
        tail = [_swap_id(ev, e, new_e) for ev in events[k:]]
        events = events[:k] + pair + tail
    out = replace(surface, events=tuple(_spread(events)))
    fold_states(out)
    return out


def _spread(events):
    n = len(events)
    return [replace(ev, height=(j + 1) / (n + 1)) for j, ev in enumerate(events)]


def _swap_id(ev: MorseEvent, old: int, new: int) -> MorseEvent:
    def m(xs):
        return tuple(new if x == old else x for x in xs)

    return replace(ev, operands=m(ev.operands), results=m(ev.results),
                   captures=m(ev.captures), far_curves=m(ev.far_curves))


def random_surface(frame: ManifoldFrame, max_events: int, seed: int,
                   coefficient_bound: int = 4) -> MorseSurface:
    """Random legal description: either a random walk, or a canonical
    description of a random graph with removable detours inserted."""
    rng = random.Random(seed)
    if rng.random() < 0.5 or max_events < 2:
        return random_walk_surface(frame, max_events, rng, coefficient_bound)
    n = rng.randint(1, max(1, min(4, max_events // 2)))
    try:
        g = random_graph(frame, n, coefficient_bound, rng.getrandbits(32))
    except Exception:
        return random_walk_surface(frame, max_events, rng, coefficient_bound)
    return perturb(synthesize(g), rng, max_events)
