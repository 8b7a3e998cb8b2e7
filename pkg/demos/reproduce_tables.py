"""
Iris and the 1984 House votes
=============================

Pre-cluster with k-means (13 groups, ten seeds), build the classical and
belief trees on top of the groups, cut at 2..6 clusters and score each cut
against the known labels. Takes a few seconds.
"""

from collections import defaultdict

from beliefhc import load_iris, load_voting
from beliefhc.pipeline import closest_matches, grid_configs, reproduce

configs = grid_configs(k_inits=(13,), seeds=range(10))

for name, data in [("iris", load_iris()), ("voting", load_voting())]:
    rows = reproduce(data, name, configs)

    # best Rand index per family and cut
    best = defaultdict(float)
    for r in rows:
        family = "hac" if r["algorithm"] == "hac" else "bhc"
        best[family, r["f_c"]] = max(best[family, r["f_c"]], r["rand_index"])
    print(f"\n{name}: best Rand index over linkages and seeds")
    print("f_c    HAC     BHC")
    for f_c in range(2, 7):
        print(f"{f_c:>3}  {best['hac', f_c]:.4f}  {best['bhc', f_c]:.4f}")

    # %%
    # The grid row nearest each published value
    print("closest grid rows to the reference table")
    for m in closest_matches(rows, name):
        print(f"  {m['family']} f_c={m['f_c']}: ref RI {m['ref_rand_index']:.4f}, "
              f"got {m['rand_index']:.4f} ({m['algorithm']}/{m['linkage']}, seed {m['seed']}), "
              f"max dev {m['max_abs_dev']:.4f}")
