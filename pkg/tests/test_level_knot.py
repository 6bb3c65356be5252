import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toroidal.graph import build_graph
from toroidal.level_knot import (
    ArityMismatch,
    DegenerateWinding,
    Disconnected,
    Exact,
    IncoherentWinding,
    build_level_knot,
    is_well_wrapped,
    level_knot_from_json,
    one_bridge_form,
    random_level_knot,
    satisfies_incompressibility_hypotheses,
    traced_strand_count,
    winding,
    wrapping_certificate,
)
from toroidal.slopes import S3, S1xS2, make_frame, make_slope

G1 = build_graph(S3, [make_slope(2, 3)])
G2 = build_graph(S3, [make_slope(2, 3), make_slope(2, 5)])
G3 = build_graph(S3, [make_slope(2, 3), make_slope(2, 5), make_slope(-2, 3)])


def test_torus_knot_pattern():
    k = build_level_knot(G1, (1, 1))
    assert wrapping_certificate(k).levels == (Exact(1),)
    assert not is_well_wrapped(k)
    w = one_bridge_form(k)
    assert all(s.monotone and not s.handles for s in w.strands)


def test_type2_single_circle():
    k = build_level_knot(G2, (2, 2), [], [0])
    assert wrapping_certificate(k).levels == (Exact(2), Exact(2))
    assert is_well_wrapped(k) and satisfies_incompressibility_hypotheses(k)


def test_disconnected_patterns():
    with pytest.raises(Disconnected) as exc:
        build_level_knot(G1, (2, 2))
    assert exc.value.components == 2
    # a middle level whose arcs turn back splits the pattern
    with pytest.raises(Disconnected):
        build_level_knot(G3, (2, 2), [(1, 1)], [0, 0], ["turn"])


def test_construction_errors():
    with pytest.raises(ArityMismatch):
        build_level_knot(G3, (2, 2), [], [0, 0])
    with pytest.raises(ArityMismatch):
        build_level_knot(G2, (2, 2), [], [])
    with pytest.raises(IncoherentWinding):
        build_level_knot(G3, (2, 2), [(2, -1)], [0, 0])
    with pytest.raises(DegenerateWinding):
        build_level_knot(G2, (0, 2), [], [0])


def test_winding_examples():
    k = build_level_knot(G3, (2, 3), [(2, 1)], [0, 1])
    assert [winding(k, i) for i in (1, 2, 3)] == [2, 3, 3]
    k = build_level_knot(G3, (2, 3), [(0, 1)], [0, 1])
    assert winding(k, 2) == 1 and not is_well_wrapped(k)


def test_type3_witness_passes_middle_level():
    k = build_level_knot(G3, (2, 3), [(1, 2)], [0, 1])
    w = one_bridge_form(k)
    assert w.bottom_arc.level == 1 and w.top_arc.level == 3
    for s in w.strands:
        assert s.monotone and s.handles == (1, 2) and len(s.heights) == 1
    assert [traced_strand_count(k, i) for i in (1, 2, 3)] == [2, 3, 3]


def test_json_round_trip():
    k = build_level_knot(G3, (2, 3), [(1, 2)], [0, 1])
    assert level_knot_from_json(k.to_json()) == k


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([S3, S1xS2, make_frame(5, 2)]), st.integers(1, 5), st.integers(0, 2**32))
def test_random_knots(frame, n, seed):
    k = random_level_knot(frame, n, 5, seed)
    cert = wrapping_certificate(k)
    for i, v in enumerate(cert.levels, start=1):
        assert v == Exact(abs(winding(k, i))) == Exact(traced_strand_count(k, i))
    assert is_well_wrapped(k) == all(abs(winding(k, i)) >= 2 for i in range(1, n + 1))
    w = one_bridge_form(k)
    assert len(w.strands) == 2 and all(s.monotone for s in w.strands)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 3))
def test_well_wrapped_is_monotone(seed, bump):
    k = random_level_knot(S3, 3, 5, seed)
    def grow(w, total):
        return w + (bump if total > 0 else -bump)

    bigger = build_level_knot(k.graph, [grow(w, w) for w in k.end_windings],
                              [(grow(t, t + s), s) for t, s in k.mid_windings], k.handle_twists)
    assert is_well_wrapped(bigger) >= is_well_wrapped(k)
