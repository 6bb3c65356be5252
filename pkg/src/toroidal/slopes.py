"""Slopes on the Heegaard torus and the frame of the ambient manifold.

A slope is stored as a primitive pair ``(a, b)`` with a single sign
representative per class: ``b > 0``, or ``(1, 0)``.  The frame of
``M`` fixes ``lambda_M = (1, 0)`` (bounds a disk in ``R_0``) and
``mu_M = (q, p)`` (bounds a disk in ``R_1``), so ``S^3 = L(1, 0)`` and
``S^1 x S^2 = L(0, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class SlopeError(ValueError):
    """Base class for slope and frame errors."""


class ZeroClass(SlopeError):
    pass


class NonPrimitive(SlopeError):
    pass


class InvalidLens(SlopeError):
    pass


@dataclass(frozen=True, order=True)
class Slope:
    a: int
    b: int

    def __post_init__(self):
        if (self.a, self.b) == (0, 0):
            raise ZeroClass("(0, 0) is not a slope")
        if gcd(abs(self.a), abs(self.b)) != 1:
            raise NonPrimitive(f"({self.a}, {self.b}) is not primitive")
        if not (self.b > 0 or (self.b == 0 and self.a == 1)):
            raise SlopeError(
                f"({self.a}, {self.b}) is not sign-normalized; use make_slope")

    def __iter__(self):
        yield self.a
        yield self.b

    def __repr__(self):
        return f"Slope({self.a}, {self.b})"

    def to_json(self) -> list[int]:
        return [self.a, self.b]

    @classmethod
    def from_json(cls, data) -> "Slope":
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            raise SlopeError(f"slope must be a pair [a, b], got {data!r}")
        a, b = data
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (a, b)):
            raise SlopeError(f"slope entries must be integers, got {data!r}")
        return make_slope(a, b)


def make_slope(a: int, b: int) -> Slope:
    """Return the normalized representative of the class of ``(a, b)``.

    Raises ZeroClass for ``(0, 0)`` and NonPrimitive when
    ``gcd(|a|, |b|) != 1``; non-primitive pairs are never reduced.
    """
    a, b = int(a), int(b)
    if (a, b) == (0, 0):
        raise ZeroClass("(0, 0) is not a slope")
    if gcd(abs(a), abs(b)) != 1:
        raise NonPrimitive(f"({a}, {b}) is not primitive")
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return Slope(a, b)


def delta(s: Slope, t: Slope) -> int:
    """Minimal geometric intersection number of two slopes."""
    return abs(s.a * t.b - s.b * t.a)


@dataclass(frozen=True)
class ManifoldFrame:
    p: int
    q: int
    lambda_M: Slope
    mu_M: Slope

    @property
    def name(self) -> str:
        if (self.p, self.q) == (1, 0):
            return "S3"
        if (self.p, self.q) == (0, 1):
            return "S1xS2"
        return f"L({self.p},{self.q})"

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q}

    @classmethod
    def from_json(cls, data) -> "ManifoldFrame":
        if (not isinstance(data, dict) or set(data) != {"p", "q"}
                or not all(type(data[k]) is int for k in ("p", "q"))):
            raise SlopeError(f"frame must be {{'p': int, 'q': int}}, got {data!r}")
        return make_frame(data["p"], data["q"])


def make_frame(p: int, q: int) -> ManifoldFrame:
    """Frame for ``S^3`` ``(1, 0)``, ``S^1 x S^2`` ``(0, 1)`` or ``L(p, q)``."""
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in (p, q)):
        raise InvalidLens(f"lens parameters must be integers, got ({p!r}, {q!r})")
    if (p, q) not in {(1, 0), (0, 1)}:
        if not (p >= 2 and 1 <= q < p and gcd(p, q) == 1):
            raise InvalidLens(f"no lens space L({p}, {q})")
    return ManifoldFrame(p, q, Slope(1, 0), make_slope(q, p))


S3 = make_frame(1, 0)
S1xS2 = make_frame(0, 1)


def lens_frames(p: int):
    """All frames with first parameter ``p`` (``p = 0, 1`` included)."""
    if p == 0:
        return [S1xS2]
    if p == 1:
        return [S3]
    return [make_frame(p, q) for q in range(1, p) if gcd(p, q) == 1]


def primitive_slopes(bound: int) -> list[Slope]:
    """Normalized slopes with ``|a|, |b| <= bound``, sorted lexicographically."""
    out = []
    for a in range(-bound, bound + 1):
        for b in range(0, bound + 1):
            if b == 0 and a != 1:
                continue
            if gcd(abs(a), b) == 1:
                out.append(Slope(a, b))
    out.sort()
    return out
