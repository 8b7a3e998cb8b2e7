"""
An outlier on the diamond
=========================

Twelve points: two small diamonds, a bridge point between them, and one
point far above everything. Both the classical single-link tree and the
belief tree leave the far point for last, but the belief index makes the
jump much more visible.
"""

from pathlib import Path

import numpy as np

from beliefhc import MassParams, bhc_cluster, hac_cluster, load_diamond, plot_dendrogram

ds = load_diamond()
print(ds.features)

hac = hac_cluster(ds, "single")
bhc, trace = bhc_cluster(ds, MassParams(alpha=0.95, gamma="auto"), variant="A", link="single")

# %%
# Merge order, one line per step. Indices are 0-based object rows.
for m, step in zip(bhc.merges, trace):
    print(f"merge {m.left:>2} + {m.right:>2}   BetP product {step.product:.4f}   index {step.monotone_index:.4f}")

# %%
# How big is the last jump compared with the rest?
for label, heights in [("HAC", hac.heights), ("BHC", trace.monotone_index)]:
    gaps = np.diff(np.concatenate([[0.0], heights]))
    print(f"{label}: last gap {gaps[-1]:.3f}, mean earlier gap {gaps[:-1].mean():.3f}")

out = Path("diamond_out")
out.mkdir(exist_ok=True)
plot_dendrogram(hac, out / "diamond_hac.svg", names=ds.names)
plot_dendrogram(bhc, out / "diamond_bhc.svg", names=ds.names)
print("wrote", sorted(p.name for p in out.iterdir()))
