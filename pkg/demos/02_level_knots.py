"""
Knots level with respect to a graph
===================================

Each level carries coherent spirals, so its cut piece is a closed braid
and the wrapping number is the strand count.
"""

from toroidal.graph import build_graph
from toroidal.level_knot import (
    Disconnected,
    build_level_knot,
    is_well_wrapped,
    one_bridge_form,
    traced_strand_count,
    wrapping_certificate,
)
from toroidal.slopes import S3, make_slope

g = build_graph(S3, [make_slope(2, 3), make_slope(2, 5), make_slope(-2, 3)])
k = build_level_knot(g, end_windings=(2, 3), mid_windings=[(1, 2)], handle_twists=[0, 1])

print(wrapping_certificate(k).to_json(), "well wrapped:", is_well_wrapped(k))

# the same counts, read off a sampled picture of each piece
print([traced_strand_count(k, i) for i in range(1, g.n + 1)])

# pushing the middle arcs into the handles leaves a (1,1)-position
w = one_bridge_form(k)
for s in w.strands:
    print("strand through handles", s.handles, "monotone", s.monotone)

###############################################################################
# Patterns that close into several circles are refused.
try:
    build_level_knot(g, (2, 2), [(1, 1)], [0, 0], mid_pairings=["turn"])
except Disconnected as exc:
    print("refused:", exc)
