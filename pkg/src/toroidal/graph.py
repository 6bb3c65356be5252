"""Toroidal graphs of type n: validation, construction, census."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from toroidal.slopes import ManifoldFrame, Slope, delta, primitive_slopes


class GraphError(ValueError):
    pass


class InvalidGraph(GraphError):
    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(
            "not a toroidal graph: "
            + ", ".join(f"{f.condition} (delta={f.observed})" for f in report.failures))


class BadHeights(GraphError):
    pass


class Exhausted(GraphError):
    pass


@dataclass(frozen=True)
class Failure:
    """One violated inequality; ``condition`` is ``bottom``, ``top`` or
    ``consecutive:i`` (1-based, between ``gamma_i`` and ``gamma_{i+1}``)."""

    condition: str
    observed: int

    def to_json(self):
        return {"condition": self.condition, "delta": self.observed}


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[Failure, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.failures

    def to_json(self):
        return {"valid": self.valid, "failures": [f.to_json() for f in self.failures]}


def validate_graph(frame: ManifoldFrame, gammas: Sequence[Slope]) -> ValidationReport:
    """Check every inequality a toroidal graph must satisfy.

    For a single curve both end conditions are checked against the same
    curve.  Invalidity is reported, never raised.
    """
    if not gammas:
        raise GraphError("a toroidal graph needs at least one curve")
    failures = []
    d = delta(gammas[0], frame.lambda_M)
    if d < 2:
        failures.append(Failure("bottom", d))
    for i in range(len(gammas) - 1):
        d = delta(gammas[i], gammas[i + 1])
        if d < 2:
            failures.append(Failure(f"consecutive:{i + 1}", d))
    d = delta(gammas[-1], frame.mu_M)
    if d < 2:
        failures.append(Failure("top", d))
    return ValidationReport(tuple(failures))


@dataclass(frozen=True)
class ToroidalGraph:
    """Curves ``gamma_1..gamma_n`` on level tori at heights ``e_1 < ... < e_n``.

    Joining arcs are not stored: any disjoint straight arcs will do.
    Only valid graphs are constructed; go through :func:`build_graph`.
    """

    frame: ManifoldFrame
    gammas: tuple[Slope, ...]
    heights: tuple[Fraction, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.gammas)

    def to_json(self) -> dict:
        return {
            "frame": self.frame.to_json(),
            "gammas": [g.to_json() for g in self.gammas],
            "heights": [str(h) if h.denominator != 1 else int(h) for h in self.heights],
        }


def _default_heights(n: int) -> tuple[Fraction, ...]:
    if n == 1:
        return (Fraction(0),)
    return tuple(Fraction(i, n - 1) for i in range(n))


def _check_heights(n: int, heights) -> tuple[Fraction, ...]:
    hs = tuple(Fraction(h) for h in heights)
    if len(hs) != n:
        raise BadHeights(f"expected {n} heights, got {len(hs)}")
    if n == 1:
        if hs != (0,):
            raise BadHeights("a type-1 graph sits at height 0")
        return hs
    if hs[0] != 0 or hs[-1] != 1:
        raise BadHeights("heights must start at 0 and end at 1")
    if any(x >= y for x, y in zip(hs, hs[1:])):
        raise BadHeights("heights must be strictly increasing")
    return hs


def build_graph(frame: ManifoldFrame, gammas: Sequence[Slope], heights=None) -> ToroidalGraph:
    gammas = tuple(gammas)
    report = validate_graph(frame, gammas)
    if not report.valid:
        raise InvalidGraph(report)
    hs = _default_heights(len(gammas)) if heights is None else _check_heights(len(gammas), heights)
    return ToroidalGraph(frame, gammas, hs)


def graph_from_json(data) -> ToroidalGraph:
    if not isinstance(data, dict) or "frame" not in data or "gammas" not in data:
        raise GraphError("graph JSON needs 'frame' and 'gammas'")
    frame = ManifoldFrame.from_json(data["frame"])
    gammas = [Slope.from_json(g) for g in data["gammas"]]
    heights = data.get("heights")
    if heights is not None:
        try:
            heights = [Fraction(h) for h in heights]
        except (TypeError, ValueError) as exc:
            raise BadHeights(str(exc)) from exc
    return build_graph(frame, gammas, heights)


def boundary_genus(g: ToroidalGraph) -> int:
    """Genus of the handlebody ``N(Gamma)``, i.e. the type ``n``."""
    return g.n


def iter_valid(frame: ManifoldFrame, n: int, coefficient_bound: int):
    """Yield valid slope sequences of length ``n`` with ``|a|, |b| <= bound``.

    Sequences come out in lexicographic order.  Valid prefixes are
    extended one slope at a time, so the consecutive condition prunes early.
    """
    if n < 1:
        raise GraphError("n must be at least 1")
    pool = primitive_slopes(coefficient_bound) if coefficient_bound >= 1 else []

    def extend(prefix):
        if len(prefix) == n:
            if delta(prefix[-1], frame.mu_M) >= 2:
                yield tuple(prefix)
            return
        for s in pool:
            if not prefix:
                if delta(s, frame.lambda_M) < 2:
                    continue
            elif delta(prefix[-1], s) < 2:
                continue
            yield from extend(prefix + [s])

    yield from extend([])


def enumerate_valid(frame: ManifoldFrame, n: int, coefficient_bound: int) -> list[tuple[Slope, ...]]:
    return list(iter_valid(frame, n, coefficient_bound))


def random_graph(frame: ManifoldFrame, n: int, coefficient_bound: int, seed: int,
                 max_tries: int = 10_000) -> ToroidalGraph:
    """Rejection-sample a valid type-``n`` graph; deterministic per seed."""
    if n < 1 or coefficient_bound < 1:
        raise GraphError("need n >= 1 and coefficient_bound >= 1")
    pool = primitive_slopes(coefficient_bound)
    rng = random.Random(seed)
    for _ in range(max_tries):
        seq = [rng.choice(pool) for _ in range(n)]
        if validate_graph(frame, seq).valid:
            return build_graph(frame, seq)
    # rejection failed; decide exhaustion exactly rather than guessing
    valid = enumerate_valid(frame, n, coefficient_bound)
    if not valid:
        raise Exhausted(
            f"no valid type-{n} graph in {frame.name} with coefficients <= {coefficient_bound}")
    return build_graph(frame, rng.choice(valid))
