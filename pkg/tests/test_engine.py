import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morse_helpers import annuli, ev, surface
from toroidal.graph import build_graph, random_graph, validate_graph
from toroidal.morse import (
    BoundaryData,
    EngineDefect,
    MalformedSurface,
    MorseSurface,
    Verdict,
    analyze,
    complexity,
    euler_characteristic,
    extract_graph,
    genus,
    normalize,
    random_surface,
    reduce_step,
    reflect,
    synthesize,
    termination_measure,
)
from toroidal.morse.engine import Reduced, Terminal
from toroidal.slopes import S3, S1xS2, make_frame, make_slope

FRAMES = [S3, S1xS2, make_frame(5, 2), make_frame(3, 1)]


def test_cancel_max_against_saddle():
    s = surface(annuli((2, 3)), annuli((2, 3)),
                [ev(.3, "max", [0], [2]), ev(.6, "saddle4", [0, 2], [3])])
    step = reduce_step(s)
    assert isinstance(step, Reduced) and step.entry.claim.startswith("claim2")
    assert step.surface.events == ()


def test_claim4_merges_meridian_disks():
    s = surface({"meridian_disks": 2}, annuli((2, 3)),
                [ev(.3, "saddle2", [0, 1], [2]), ev(.6, "saddle1", [2], [3, 4], slope=[2, 3])])
    step = reduce_step(s)
    assert step.entry.claim == "claim4:merge-meridian-disks"
    new = step.surface
    assert (new.bottom.disks, new.bottom.meridian_disks) == (1, 0)
    assert s.bottom.pieces - new.bottom.pieces == 1
    assert [e.type for e in new.events] == [1]


def test_claim5_pushes_saddle_into_r0():
    s = surface({"disks": 1}, annuli((2, 3)), [ev(.6, "saddle1", [0], [1, 2], slope=[2, 3])])
    step = reduce_step(s)
    assert step.entry.claim == "claim5:push-saddle-into-R0"
    new = step.surface
    assert new.bottom.annuli == 1 and new.bottom.disks == 0
    assert len(s.events) - len(new.events) == 1


def test_claim5_mirror_pushes_into_r1():
    s = surface(annuli((-4, 3)), {"disks": 1}, [ev(.5, "saddle2", [0, 1], [2])])
    r = normalize(s)
    assert r.canonical and r.trace[0].claim == "claim5:push-saddle-into-R1"
    assert extract_graph(r).gammas == (make_slope(-4, 3),)


def test_claim5_can_raise_literal_complexity():
    # the disk + saddle torus has c = (3, 1); its canonical form has two
    # vertical tubes, c = (4, 0).  The termination measure still drops.
    s = surface({"disks": 1}, annuli((2, 3)), [ev(.6, "saddle1", [0], [1, 2], slope=[2, 3])])
    r = normalize(s)
    entry = r.trace[0]
    assert entry.before.to_json() == [3, 1] and entry.after.to_json() == [4, 0]
    assert termination_measure(r.surface, analyze(r.surface)) < \
        termination_measure(s, analyze(s))


def test_nested_annuli_disconnected():
    r = normalize(surface(annuli((2, 3), 2), annuli((2, 3), 2)))
    assert r.verdict is Verdict.DISCONNECTED and r.reason.startswith("claim6")


def test_delta_one_is_compressible():
    s = surface(annuli((2, 3)), annuli((3, 5)),
                [ev(.3, "saddle2", [0, 1], [2]), ev(.6, "saddle1", [2], [3, 4], slope=[3, 5])])
    r = normalize(s)
    assert r.verdict is Verdict.COMPRESSIBLE and "claim9" in r.reason


def test_meridional_event_verdict():
    s = surface(annuli((2, 3)), annuli((2, 3)),
                [ev(.3, "saddle3", [0], [2, 3], punctures=1), ev(.6, "min", [3])])
    assert normalize(s).verdict is Verdict.MERIDIONALLY_COMPRESSIBLE


def test_zero_events_is_type_one():
    r = normalize(surface(annuli((2, 3)), annuli((2, 3))))
    assert r.canonical and r.trace == []
    assert extract_graph(r).gammas == (make_slope(2, 3),)


def test_empty_surface_rejected():
    with pytest.raises(MalformedSurface):
        normalize(MorseSurface(S3, BoundaryData(), BoundaryData()))


def test_extract_examples():
    g = extract_graph(synthesize(build_graph(S3, [make_slope(2, 3), make_slope(2, 5)])))
    assert g.gammas == (make_slope(2, 3), make_slope(2, 5)) and g.n == 2
    g3 = build_graph(S3, [make_slope(2, 3), make_slope(2, 5), make_slope(-2, 3)])
    out = extract_graph(normalize(synthesize(g3)))
    assert out.n == 3 and genus(synthesize(g3)) == 3


def test_reflection_is_an_involution():
    for seed in range(60):
        s = random_surface(FRAMES[seed % 4], 10, seed)
        r = reflect(s)
        assert complexity(r) == complexity(s)
        assert euler_characteristic(r) == euler_characteristic(s)
        back, orig = reflect(r).to_json(), s.to_json()
        heights = [e.pop("height") for e in back["events"]]
        assert heights == pytest.approx([e.pop("height") for e in orig["events"]])
        assert back == orig


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FRAMES), st.integers(1, 5), st.integers(0, 2**32))
def test_round_trip_and_idempotence(frame, n, seed):
    g = random_graph(frame, n, 6, seed)
    r = normalize(synthesize(g))
    assert r.canonical and r.trace == []
    assert extract_graph(r).gammas == g.gammas
    again = normalize(r.surface)
    assert again.surface == r.surface and again.trace == []


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(FRAMES))
def test_random_surfaces_terminate(seed, frame):
    s = random_surface(frame, 12, seed)
    try:
        r = normalize(s)
    except EngineDefect as exc:  # pragma: no cover - archived counterexample
        pytest.fail(f"counterexample: {exc} {exc.surface.to_json()}")
    chi = euler_characteristic(s)
    for entry in r.trace:
        assert entry.chi_before - entry.chi_after == entry.removed_chi
        if entry.removed_chi:
            assert entry.move == "strip-sphere"
    assert euler_characteristic(r.surface) == chi - sum(t.removed_chi for t in r.trace)
    if r.canonical:
        types = [e.type for e in r.surface.events]
        assert types == [2, 1] * (len(types) // 2)
        assert r.surface.bottom.annuli == r.surface.top.annuli == 1
        assert r.surface.bottom.pieces == r.surface.top.pieces == 1
        g = extract_graph(r)
        assert validate_graph(g.frame, g.gammas).valid
        assert genus(r.surface) == g.n
        assert euler_characteristic(r.surface) == 2 - 2 * g.n


def test_terminal_step_is_stable():
    s = synthesize(build_graph(S3, [make_slope(2, 3), make_slope(2, 5)]))
    step = reduce_step(s)
    assert isinstance(step, Terminal) and step.verdict is Verdict.CANONICAL
