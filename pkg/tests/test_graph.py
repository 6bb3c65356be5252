import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_valid, normalized_primitive
from toroidal.graph import (
    BadHeights,
    Exhausted,
    InvalidGraph,
    boundary_genus,
    build_graph,
    enumerate_valid,
    graph_from_json,
    iter_valid,
    random_graph,
    validate_graph,
)
from toroidal.slopes import S3, S1xS2, make_frame, make_slope

L52 = make_frame(5, 2)


def slopes(*pairs):
    return [make_slope(*p) for p in pairs]


def conditions(report):
    return [(f.condition, f.observed) for f in report.failures]


def test_validate_examples():
    assert validate_graph(S3, slopes((2, 3))).valid
    assert conditions(validate_graph(S3, slopes((1, 2)))) == [("top", 1)]
    assert conditions(validate_graph(S1xS2, slopes((1, 1)))) == [("bottom", 1), ("top", 1)]


def test_validate_reports_every_failure():
    r = validate_graph(S3, slopes((1, 1), (1, 2), (3, 5)))
    # top holds: delta((3,5), (0,1)) = 3
    assert conditions(r) == [("bottom", 1), ("consecutive:1", 1), ("consecutive:2", 1)]


def test_build_examples():
    g = build_graph(S3, slopes((2, 3)))
    assert g.n == 1 and g.heights == (Fraction(0),)
    with pytest.raises(InvalidGraph) as exc:
        build_graph(S3, slopes((2, 1), (0, 1)))
    assert exc.value.report.failures[0].condition == "bottom"
    with pytest.raises(InvalidGraph) as exc:
        build_graph(L52, slopes((1, 1), (3, 1)))
    assert exc.value.report.failures[0].condition == "bottom"


def test_default_and_explicit_heights():
    g = build_graph(S3, slopes((2, 3), (2, 5), (-2, 3)))
    assert g.heights == (0, Fraction(1, 2), 1)
    g = build_graph(S3, slopes((2, 3), (2, 5)), heights=[0, 1])
    assert g.heights == (0, 1)
    for bad in ([0, 0], [1, 0], [Fraction(1, 3), 1], [0, Fraction(1, 2), 1]):
        with pytest.raises(BadHeights):
            build_graph(S3, slopes((2, 3), (2, 5)), heights=bad)


def test_boundary_genus():
    for gammas in (slopes((2, 3)), slopes((2, 3), (2, 5)), slopes((2, 3), (2, 5), (-2, 3))):
        assert boundary_genus(build_graph(S3, gammas)) == len(gammas)


def test_json_round_trip():
    g = build_graph(L52, slopes((2, 3), (2, 7)), heights=[0, 1])
    assert graph_from_json(g.to_json()) == g


@pytest.mark.parametrize("frame", [S3, S1xS2, L52])
@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("bound", [0, 1, 2, 3])
def test_enumeration_matches_brute_force(frame, n, bound):
    lam = (frame.lambda_M.a, frame.lambda_M.b)
    mu = (frame.mu_M.a, frame.mu_M.b)
    grid = sorted(normalized_primitive(bound))
    expected = [seq for seq in itertools.product(grid, repeat=n) if brute_valid(lam, mu, seq)]
    got = [tuple((s.a, s.b) for s in seq) for seq in enumerate_valid(frame, n, bound)]
    assert got == expected
    if bound:
        assert got == [tuple((s.a, s.b) for s in seq) for seq in iter_valid(frame, n, bound)]
    else:
        assert got == []


def test_enumeration_small_census():
    # no slope with |a|, |b| <= 2 meets both (1,0) and (0,1) twice
    assert enumerate_valid(S3, 1, 2) == []
    # with bound 3 only (+-2, 3) and (+-3, 2) qualify
    got = {(s.a, s.b) for (s,) in enumerate_valid(S3, 1, 3)}
    assert got == {(2, 3), (-2, 3), (3, 2), (-3, 2)}


def test_random_graph_examples():
    g = random_graph(S3, 1, 3, seed=7)
    assert validate_graph(g.frame, g.gammas).valid
    assert random_graph(S3, 1, 3, seed=7) == g
    g = random_graph(L52, 2, 4, seed=1)
    assert validate_graph(L52, g.gammas).valid
    with pytest.raises(Exhausted):
        random_graph(S1xS2, 1, 1, seed=0)
    assert enumerate_valid(S1xS2, 1, 1) == []


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([S3, S1xS2, L52, make_frame(7, 3)]), st.integers(1, 4),
       st.integers(3, 6), st.integers(0, 2**63))
def test_random_graph_always_valid(frame, n, bound, seed):
    g = random_graph(frame, n, bound, seed)
    assert g.n == n == boundary_genus(g)
    assert all(abs(s.a) <= bound and abs(s.b) <= bound for s in g.gammas)
    lam, mu = (frame.lambda_M.a, frame.lambda_M.b), (frame.mu_M.a, frame.mu_M.b)
    assert brute_valid(lam, mu, [(s.a, s.b) for s in g.gammas])
