"""Existence probability of a walk under an expected-degree random graph.

Under the independent-edge model (edge {i, j} appears with probability
d_i d_j / S), a walk exists iff all of its distinct edges do.  The library
classifies each edge of the walk as new or repeating, splits repeating runs
into blocks, and multiplies one degree factor per distinct edge.  Here we
verify the closed form against straight Monte-Carlo sampling of the edges.
"""

import numpy as np

from aspaths import DegreeSequence, RngSeed, classify_edges, path_probability

seq = DegreeSequence([2.0, 3.0, 3.5, 2.0, 2.5, 1.5])
print(f"degrees {list(seq.d)}  S={seq.S:g}  S2/S={seq.S2 / seq.S:.3f}\n")

walks = [
    (0, 1, 2, 3),          # plain chain: every edge new
    (1, 2, 3, 2, 4),       # one repeated edge, block led by a fresh node
    (0, 1, 2, 0, 1, 3),    # repeated edge whose lead node was seen before
]

rng = RngSeed(20).generator()
reps = 200_000
for walk in walks:
    cls = classify_edges(walk)
    p = path_probability(walk, seq)

    # Monte Carlo: draw each distinct edge of the walk independently.
    edges = sorted({(a, b) if a <= b else (b, a) for a, b in zip(walk, walk[1:])})
    probs = np.array([seq.edge_probability(a, b) for a, b in edges])
    hits = (rng.random((reps, len(edges))) < probs).all(axis=1)
    freq = float(hits.mean())

    print(f"walk {walk}")
    print(f"  edge tags        {cls.tags}")
    print(f"  new-edge interior {cls.N}   R1 {cls.R1}   R2 {cls.R2}")
    print(f"  closed form      {p:.6f}")
    print(f"  Monte-Carlo      {freq:.6f}   ({reps} realizations)")
    print()

print("the node-count identity: interior size = r - 1 - sum (i+1) q_i")
for walk in walks:
    cls = classify_edges(walk)
    r = len(walk) - 1
    rhs = r - 1 - sum((i + 1) * q for i, q in cls.q.items())
    print(f"  {walk}: |N| = {len(cls.N)}, identity gives {rhs}")
