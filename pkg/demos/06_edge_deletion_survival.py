"""Path diversity under random link failure.

Collect the almost shortest simple paths between node pairs once, then
delete every edge independently with probability p and record the fraction
of the collection that survives.  Repeating the deletion many times maps
out how robust the pair's routing options are.

Two graphs:
  * a synthetic pair joined by 4 edge-disjoint 3-edge routes, where the
    expected surviving fraction is exactly (1-p)^3, and
  * a sampled expected-degree graph, where survival decays smoothly in p
    and per-pair medians track each other closely.
"""

import numpy as np

from aspaths import (
    DegreeSequence,
    DeletionConfig,
    RngSeed,
    build_graph,
    edge_deletion_experiment,
    sample_chung_lu,
)

records, nid = [], 2
for _ in range(4):
    a, b = nid, nid + 1
    nid += 2
    records += [(0, a, 1.0), (a, b, 1.0), (b, 1, 1.0)]
synthetic = build_graph(records)

p_values = (0.05, 0.1, 0.2, 0.4)
cfg = DeletionConfig(p_values=p_values, trials_per_p=4000, pair_count=1,
                     pair_degree_floor=3, slack=0.0, seed=11)
report = edge_deletion_experiment(synthetic, cfg)
print("four edge-disjoint 3-edge routes: mean surviving fraction vs (1-p)^3")
print("    p     sampled   exact")
for p in p_values:
    mean = float(np.mean(report.fractions_for(p)))
    print(f"  {p:4.2f}   {mean:.4f}   {(1 - p) ** 3:.4f}")
print()

graph = sample_chung_lu(DegreeSequence([7.0] * 400), RngSeed(2024))
cfg2 = DeletionConfig(p_values=(0.02, 0.05, 0.1, 0.2), trials_per_p=60,
                      pair_count=6, pair_degree_floor=5, slack=2.0, seed=99)
rep2 = edge_deletion_experiment(graph, cfg2)

print("sampled 400-node graph, 6 pairs, slack 2:")
print("    p    min     q1      median  q3      max     mean")
for p, st in sorted(rep2.stats().items()):
    print(f"  {p:4.2f}  {st.min:.3f}   {st.q1:.3f}   {st.median:.3f}"
          f"   {st.q3:.3f}   {st.max:.3f}   {st.mean:.3f}")

print()
print("per-pair median curves (first 5 pairs):")
for pair_id, curve in rep2.median_curves().items():
    s, t = rep2.pairs[pair_id]
    pts = "  ".join(f"p={p:g}:{med:.3f}" for p, med in curve)
    print(f"  pair {pair_id} ({s},{t}): {pts}")
