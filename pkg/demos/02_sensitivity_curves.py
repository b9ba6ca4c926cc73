"""
Metric sensitivity curves
=========================

Two stress tests for count-based variety metrics, one varying how evenly
20 concepts split over two ideas, one varying the space size on a perfect
split. Saves both curves as PNG next to this script.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from variant import METRICS, testcase1_curve, testcase2_curve

HERE = os.path.dirname(os.path.abspath(__file__))

# --- splits of 20 concepts over two ideas, from collapsed to even
split_points = testcase1_curve(20)
print("split    " + "  ".join(f"{m:>6}" for m in METRICS))
for p in split_points:
    print(f"{p.x:>6}   " + "  ".join(f"{p.scores[m]:6.3f}" for m in METRICS))

fig, ax = plt.subplots(figsize=(7, 4))
xs = [p.x for p in split_points]
for metric in METRICS:
    ax.plot(xs, [p.scores[metric] for p in split_points], marker="o", label=metric)
ax.set_xlabel("distribution of 20 concepts over two ideas")
ax.set_ylabel("scaled score")
ax.set_ylim(-0.05, 1.05)
ax.legend()
fig.tight_layout()
fig.savefig(os.path.join(HERE, "sensitivity_split.png"), dpi=120)
print("\nsaved sensitivity_split.png")

# --- even two-way splits with growing N: the unbiased index starts at 1
# for two distinct concepts and settles toward 0.5; the plug-in estimate
# is stuck at 0.5 from the start, the branch metrics decay to 0.
growth_points = testcase2_curve(range(2, 42, 2))
fig, ax = plt.subplots(figsize=(7, 4))
ns = [int(p.x) for p in growth_points]
for metric in METRICS:
    ax.plot(ns, [p.scores[metric] for p in growth_points], marker=".", label=metric)
ax.set_xlabel("number of concepts N (even split over two ideas)")
ax.set_ylabel("scaled score")
ax.axhline(0.5, color="gray", lw=0.5, ls="--")
ax.legend()
fig.tight_layout()
fig.savefig(os.path.join(HERE, "sensitivity_growth.png"), dpi=120)
print("saved sensitivity_growth.png")
