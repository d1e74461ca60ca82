"""Step-by-step look at distance-weighted neighbor averaging.

Builds a tiny evaluation history by hand and shows exactly which records a
query point borrows from, with what weights, and what comes out.

    python3 demos/02_averaging_walkthrough.py
"""

import numpy as np

from knnavg.averaging import (
    EvaluationHistory,
    KnnConfig,
    history_rows,
    knn_evaluate,
    sed,
)
from knnavg.core import Solution


def record(x, f):
    f = np.asarray(f, dtype=float)
    return Solution(variables=np.asarray(x, dtype=float),
                    objectives=f.copy(), raw_objectives=f.copy())


history = EvaluationHistory(n_vars=2, n_objs=2)

print("=== batch 0: three early samples ===")
batch0 = [
    record([0.20, 0.30], [1.00, 2.00]),
    record([0.22, 0.31], [1.40, 1.60]),
    record([0.80, 0.90], [3.00, 0.50]),
]
config = KnnConfig(k=3, max_dist=2.0)
out0 = knn_evaluate(batch0, history, config)
for s in out0:
    print(f"  x={s.variables.tolist()} raw={s.raw_objectives.tolist()}"
          f" -> averaged={np.round(s.objectives, 4).tolist()}")

print()
print("=== the standardized distances behind that ===")
variances = history.variances()
print(f"per-dimension variances: {variances.round(5).tolist()}")
vars_matrix = history.variables_matrix()
for i in range(len(history)):
    dists = [sed(vars_matrix[i], vars_matrix[j], variances)
             for j in range(len(history))]
    print(f"  record {i}: distances {[round(d, 3) for d in dists]}")
print("records 0 and 1 are close in standardized terms, record 2 is far,")
print("so the first two blended with each other and record 2 kept to itself.")

print()
print("=== weights fall off with squared distance ===")
d = sed(vars_matrix[0], vars_matrix[1], variances)
print(f"distance between records 0 and 1: {d:.4f}")
print(f"weight of a neighbor at that distance: max({config.max_dist} - d^2, 0)"
      f" = {max(config.max_dist - d * d, 0.0):.4f}")
print(f"weight of the point itself (distance 0): {config.max_dist}")

print()
print("=== a new batch joins the history before averaging ===")
batch1 = [record([0.21, 0.30], [0.60, 2.40])]
out1 = knn_evaluate(batch1, history, config)
print(f"  query raw {batch1[0].raw_objectives.tolist()} ->"
      f" averaged {np.round(out1[0].objectives, 4).tolist()}")
print("  the query's own noisy sample is one of the neighbors, so the")
print("  average is pulled toward, but not onto, its nearby records.")

print()
print("=== k=1 switches averaging off ===")
lone = EvaluationHistory(2, 2)
out = knn_evaluate([record([0.5, 0.5], [1.23, 4.56])], lone, KnnConfig(k=1, max_dist=2.0))
print(f"  k=1 output equals the raw sample exactly: {out[0].objectives.tolist()}")

print()
print("=== everything the history recorded ===")
header, rows = history_rows(history)
print("  " + " | ".join(f"{h:>7}" for h in header))
for row in rows:
    print("  " + " | ".join(f"{v:>7}" if isinstance(v, int) else f"{v:>7.3f}"
                            for v in row))
