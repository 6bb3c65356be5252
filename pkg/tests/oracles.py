"""Independent reference computations used by the tests.

Nothing here imports the package's arithmetic: slopes are plain integer
pairs and intersection numbers are counted geometrically.
"""

from fractions import Fraction
from math import gcd


def flat_torus_crossings(s, t) -> int:
    """Count crossings of straight representatives of ``s`` and ``t`` on
    ``R^2 / Z^2``.

    The line through the origin with direction ``s`` meets translates of
    the line with direction ``t`` shifted by a generic offset; each crossing
    in one fundamental period of ``s`` is a parameter ``u`` in ``[0, 1)``
    solving ``u*s = v*t + off + m`` for integers ``m``.
    """
    (a, b), (c, d) = s, t
    det = a * d - b * c
    if det == 0:
        return 0
    off = (Fraction(1, 7919), Fraction(1, 104729))
    hits = set()
    span = abs(a) + abs(b) + abs(c) + abs(d) + 2
    for m1 in range(-span, span + 1):
        for m2 in range(-span, span + 1):
            # u*a - v*c = off0 + m1 ; u*b - v*d = off1 + m2
            r0, r1 = off[0] + m1, off[1] + m2
            u = Fraction(r0 * d - c * r1, det)
            v = Fraction(a * r1 - b * r0, det)
            if 0 <= u < 1 and 0 <= v < 1:
                hits.add((u, v))
    return len(hits)


def det_delta(s, t) -> int:
    return abs(s[0] * t[1] - s[1] * t[0])


def normalized_primitive(bound: int):
    out = []
    for a in range(-bound, bound + 1):
        for b in range(0, bound + 1):
            if (a, b) == (0, 0) or gcd(abs(a), b) != 1:
                continue
            if b == 0 and a != 1:
                continue
            out.append((a, b))
    return out


def brute_valid(lam, mu, seq) -> bool:
    """The defining inequalities, written out longhand."""
    if len(seq) == 1:
        return det_delta(seq[0], lam) >= 2 and det_delta(seq[0], mu) >= 2
    if det_delta(seq[0], lam) < 2:
        return False
    for x, y in zip(seq, seq[1:]):
        if det_delta(x, y) < 2:
            return False
    return det_delta(seq[-1], mu) >= 2
