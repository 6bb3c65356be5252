"""
Normalizing a Morse description
===============================

A closed surface is given by its pieces in the two solid tori and the
critical points of height on the part in between.  Normalization cancels
and pushes critical points until only (type 2, type 1) saddle pairs are
left, then reads off the graph.
"""

import json
import random

from toroidal.graph import build_graph
from toroidal.morse import (
    complexity,
    extract_graph,
    fold_states,
    genus,
    normalize,
    perturb,
    surface_from_json,
    synthesize,
)
from toroidal.slopes import S3, make_slope

g = build_graph(S3, [make_slope(2, 3), make_slope(2, 5), make_slope(-2, 3)])
s = synthesize(g)
for st in fold_states(s):
    print(st.describe())
print("complexity", complexity(s), "genus", genus(s))

###############################################################################
# Hide the canonical form behind extra extrema and saddles.
rng = random.Random(5)
noisy = perturb(s, rng, max_events=10)
print(len(noisy.events), "events after perturbing")

result = normalize(noisy)
for entry in result.trace:
    print(f"{entry.claim:34s} {entry.before.to_json()} -> {entry.after.to_json()}")
print(result.verdict.value, [x.to_json() for x in extract_graph(result).gammas])

###############################################################################
# Two meridian disks joined by a saddle merge into one trivial disk.
doc = {"frame": {"p": 1, "q": 0}, "bottom": {"meridian_disks": 2},
       "top": {"annuli": 1, "annulus_slope": [2, 3]},
       "events": [{"height": 0.3, "kind": "saddle", "type": 2, "operands": [0, 1], "results": [2]},
                  {"height": 0.6, "kind": "saddle", "type": 1, "operands": [2],
                   "results": [3, 4], "slope": [2, 3]}]}
r = normalize(surface_from_json(doc))
print(r.verdict.value, [t.claim for t in r.trace])
print(json.dumps(r.surface.to_json()))
