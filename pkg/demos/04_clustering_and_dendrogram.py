"""
Grouping similar concepts
=========================

Clusters the boil-water concepts on their weighted distance matrix and
draws the merge tree. Saves a heatmap + dendrogram figure next to this
script.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from variant import HashedBowEncoder, assess, cluster, default_weights, dendrogram
from variant.spaceio import import_space

HERE = os.path.dirname(os.path.abspath(__file__))
space = import_space(os.path.join(HERE, "..", "data", "boil_water.csv"))
result = assess(space, HashedBowEncoder(), default_weights())
d = result.weighted_matrix.values

labels = cluster(d, 2)
print("cluster labels at k=2:")
for name, label in zip(result.concept_names, labels):
    print(f"  {name:>22} -> cluster {label}")

tree = dendrogram(d, result.concept_ids)
print("\nmerge order (node ids below 4 are leaves):")
for step, (a, b, h) in enumerate(tree.merges):
    print(f"  step {step}: join {a} and {b} at height {h:.3f}")

# --- figure: heatmap on the left, dendrogram segments on the right
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))

im = ax1.imshow(d, cmap="viridis", vmin=0, vmax=1)
ax1.set_xticks(range(len(space)), [c.name for c in space.concepts], rotation=30, ha="right")
ax1.set_yticks(range(len(space)), [c.name for c in space.concepts])
for i in range(len(space)):
    for j in range(len(space)):
        ax1.text(j, i, f"{d[i, j]:.2f}", ha="center", va="center", color="w", fontsize=8)
fig.colorbar(im, ax=ax1, shrink=0.8)
ax1.set_title("weighted pairwise distances")

# lay the dendrogram out by hand: x positions follow the leaf order
n = len(tree.leaves)
position = {i: (float(i), 0.0) for i in range(n)}
for m, (a, b, h) in enumerate(tree.merges):
    xa, _ = position[a]
    xb, _ = position[b]
    ya = position[a][1]
    yb = position[b][1]
    ax2.plot([xa, xa], [ya, h], color="k")
    ax2.plot([xb, xb], [yb, h], color="k")
    ax2.plot([xa, xb], [h, h], color="k")
    position[n + m] = ((xa + xb) / 2, h)
ax2.set_xticks(range(n), [result.concept_names[i] for i in range(n)], rotation=30, ha="right")
ax2.set_ylabel("merge height")
ax2.set_title("average-linkage dendrogram")

fig.tight_layout()
out = os.path.join(HERE, "clusters.png")
fig.savefig(out, dpi=120)
print(f"\nsaved {os.path.basename(out)}")
