import functools
import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import det_delta, flat_torus_crossings, normalized_primitive
from toroidal.slopes import (
    S3,
    InvalidLens,
    NonPrimitive,
    S1xS2,
    Slope,
    SlopeError,
    ZeroClass,
    delta,
    lens_frames,
    make_frame,
    make_slope,
    primitive_slopes,
)


@pytest.mark.parametrize("raw, expected", [((0, -1), (0, 1)), ((2, -3), (-2, 3)),
                                           ((-1, 0), (1, 0)), ((3, 5), (3, 5))])
def test_make_slope_normalizes(raw, expected):
    s = make_slope(*raw)
    assert (s.a, s.b) == expected


def test_make_slope_errors():
    with pytest.raises(NonPrimitive):
        make_slope(2, 4)
    with pytest.raises(ZeroClass):
        make_slope(0, 0)
    with pytest.raises(SlopeError):
        Slope(2, -3)  # direct construction must already be normalized


def test_delta_examples():
    assert delta(make_slope(1, 0), make_slope(0, 1)) == 1
    assert delta(make_slope(2, 3), make_slope(2, 3)) == 0
    assert delta(make_slope(1, 2), make_slope(3, 4)) == 2


def test_delta_matches_flat_torus_count():
    for s, t in itertools.product(normalized_primitive(4), repeat=2):
        assert delta(make_slope(*s), make_slope(*t)) == flat_torus_crossings(s, t)


def test_primitive_slopes_grid():
    got = [(s.a, s.b) for s in primitive_slopes(5)]
    assert got == sorted(normalized_primitive(5))
    assert primitive_slopes(0) == []


@pytest.mark.parametrize("p, q, mu", [(1, 0, (0, 1)), (0, 1, (1, 0)), (5, 2, (2, 5))])
def test_frame_examples(p, q, mu):
    f = make_frame(p, q)
    assert (f.lambda_M.a, f.lambda_M.b) == (1, 0)
    assert (f.mu_M.a, f.mu_M.b) == mu
    assert delta(f.mu_M, f.lambda_M) == p


@pytest.mark.parametrize("p, q", [(4, 2), (5, 0), (5, 5), (-3, 1), (1, 1), (0, 0), (2, 3)])
def test_invalid_lens(p, q):
    with pytest.raises(InvalidLens):
        make_frame(p, q)


def test_named_frames_and_json():
    assert S3 == make_frame(1, 0) and S1xS2 == make_frame(0, 1)
    f = make_frame(7, 3)
    assert type(f).from_json(f.to_json()) == f
    assert Slope.from_json(make_slope(-2, 3).to_json()) == make_slope(-2, 3)
    assert [x.q for x in lens_frames(7)] == [1, 2, 3, 4, 5, 6]


pairs = st.tuples(st.integers(-30, 30), st.integers(-30, 30)).filter(
    lambda v: math.gcd(*v) == 1)


@given(pairs, pairs)
def test_delta_symmetric_and_zero_iff_equal(s, t):
    a, b = make_slope(*s), make_slope(*t)
    assert delta(a, b) == delta(b, a) == det_delta(s, t)
    assert (delta(a, b) == 0) == (a == b)


_GENERATORS = [(1, 1, 0, 1), (1, 0, 1, 1), (1, -1, 0, 1), (0, 1, 1, 0), (-1, 0, 0, 1)]


def _mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


# words in generators of GL(2, Z)
unimodular = st.lists(st.sampled_from(_GENERATORS), max_size=8).map(
    lambda word: functools.reduce(_mul, word, (1, 0, 0, 1)))


@given(pairs, pairs, unimodular)
def test_delta_unimodular_invariance(s, t, m):
    x, y, z, w = m

    def act(v):
        return make_slope(x * v[0] + y * v[1], z * v[0] + w * v[1])

    assert delta(act(s), act(t)) == delta(make_slope(*s), make_slope(*t))
