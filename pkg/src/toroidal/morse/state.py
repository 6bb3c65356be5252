"""Level states: the curves of a surface on one level torus.

Essential curves share one slope and sit in cyclic order; the gap after
essential curve ``e`` is ``regions[e]``.  With no essential curves the
whole torus is the single region keyed ``None``.  A region, and the disk
bounded by a trivial curve, is a :class:`Bag`: the knot points lying
directly in it plus the outermost trivial curves inside it.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from toroidal.slopes import Slope


class IllegalEvent(ValueError):
    """First grammar violation in a Morse description.

    ``index`` is the event index; ``-1`` points at the bottom boundary
    data and ``len(events)`` at the top boundary data.
    """

    MERIDIONAL = "meridional compression"

    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"event {index}: {reason}")

    @property
    def meridional(self) -> bool:
        return self.reason.startswith(self.MERIDIONAL)


@dataclass
class Bag:
    knots: int = 0
    children: list[int] = field(default_factory=list)


@dataclass
class LevelState:
    slope: Slope | None = None
    ess: list[int] = field(default_factory=list)
    regions: dict = field(default_factory=lambda: {None: Bag()})
    trivial: dict[int, Bag] = field(default_factory=dict)

    def copy(self) -> "LevelState":
        return copy.deepcopy(self)

    # -- queries ---------------------------------------------------------
    @property
    def curves(self) -> set[int]:
        return set(self.ess) | set(self.trivial)

    def punctures(self, c: int) -> int:
        bag = self.trivial[c]
        return bag.knots + sum(self.punctures(x) for x in bag.children)

    def bag_punctures(self, bag: Bag) -> int:
        return bag.knots + sum(self.punctures(x) for x in bag.children)

    def next(self, e: int) -> int:
        i = self.ess.index(e)
        return self.ess[(i + 1) % len(self.ess)]

    def prev(self, e: int) -> int:
        i = self.ess.index(e)
        return self.ess[i - 1]

    def host(self, c: int):
        """``(kind, key)`` of the bag holding trivial curve ``c``:
        ``("region", key)`` or ``("curve", parent)``."""
        for key, bag in self.regions.items():
            if c in bag.children:
                return ("region", key)
        for p, bag in self.trivial.items():
            if c in bag.children:
                return ("curve", p)
        raise KeyError(c)

    def bag(self, where) -> Bag:
        kind, key = where
        return self.regions[key] if kind == "region" else self.trivial[key]

    def depth(self, c: int) -> int:
        d = 0
        where = self.host(c)
        while where[0] == "curve":
            d += 1
            where = self.host(where[1])
        return d

    def key(self):
        """Hashable form; equal keys mean identical labelled states."""
        if self.ess:
            i = self.ess.index(min(self.ess))
            ess = tuple(self.ess[i:] + self.ess[:i])
        else:
            ess = ()

        def bag_key(b: Bag):
            return (b.knots, tuple(sorted(b.children)))

        regions = tuple(sorted((k if k is not None else -1, bag_key(b))
                               for k, b in self.regions.items()))
        trivial = tuple(sorted((c, bag_key(b)) for c, b in self.trivial.items()))
        return (self.slope, ess, regions, trivial)

    def shape(self):
        """Label-free form, up to rotation of the essential curves."""

        def bag_shape(b: Bag):
            return (b.knots, tuple(sorted(bag_shape(self.trivial[c]) for c in b.children)))

        if not self.ess:
            return (None, (bag_shape(self.regions[None]),))
        gaps = [bag_shape(self.regions[e]) for e in self.ess]
        rots = [tuple(gaps[i:] + gaps[:i]) for i in range(len(gaps))]
        return (self.slope, min(rots))

    def essential_count(self) -> int:
        return len(self.ess)

    def describe(self) -> str:
        def bag_str(b: Bag):
            inner = " ".join(f"T{c}<{bag_str(self.trivial[c])}>" for c in b.children)
            pts = "*" * b.knots
            return (pts + (" " if pts and inner else "") + inner) or "."

        if not self.ess:
            return f"[{bag_str(self.regions[None])}]"
        parts = [f"E{e} ({bag_str(self.regions[e])})" for e in self.ess]
        s = self.slope
        return f"slope ({s.a},{s.b}): " + " ".join(parts)


class NotASaddle(ValueError):
    pass


def classify_saddle(before: LevelState, after: LevelState) -> int:
    """Saddle type of a transition between two nonsingular levels.

    1: trivial -> two essential; 2: two essential -> trivial;
    3: essential -> essential + trivial; 4: essential + trivial -> essential.
    """
    de = len(after.ess) - len(before.ess)
    dt = len(after.trivial) - len(before.trivial)
    if before.ess and after.ess and before.slope != after.slope:
        raise NotASaddle("essential slopes differ across the level")
    if (de, dt) == (2, -1):
        return 1
    if (de, dt) == (-2, 1):
        return 2
    if de == 0 and before.ess:
        if dt == 1:
            return 3
        if dt == -1:
            return 4
    raise NotASaddle(f"essential {len(before.ess)}->{len(after.ess)}, "
                     f"trivial {len(before.trivial)}->{len(after.trivial)}")
