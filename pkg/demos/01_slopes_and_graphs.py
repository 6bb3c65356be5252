"""
Slopes, frames and toroidal graphs
==================================

A slope is a primitive pair up to sign.  Every ambient manifold is read
through two slopes on the Heegaard torus: lambda bounds a disk on the
R_0 side, mu on the R_1 side.
"""

from toroidal.graph import build_graph, enumerate_valid, validate_graph
from toroidal.slopes import S3, delta, lens_frames, make_frame, make_slope

# normalization picks one representative per class
print(make_slope(2, -3), make_slope(0, -1))

# the frame of L(p, q) puts p between its two meridians
for f in lens_frames(7)[:3]:
    print(f.name, "mu =", f.mu_M, "delta(mu, lambda) =", delta(f.mu_M, f.lambda_M))

###############################################################################
# A graph of type n is a list of slopes, each far enough from its neighbours.
gammas = [make_slope(2, 3), make_slope(2, 5), make_slope(-2, 3)]
print(validate_graph(S3, gammas))
g = build_graph(S3, gammas)
print("heights", [str(h) for h in g.heights])

# a failing sequence says which inequalities break
print(validate_graph(S3, [make_slope(2, 3), make_slope(1, 2)]).to_json())

###############################################################################
# Small census: type-2 graphs in L(5,2) with coefficients at most 3.
census = enumerate_valid(make_frame(5, 2), 2, 3)
print(len(census), "graphs; first:", census[0])
