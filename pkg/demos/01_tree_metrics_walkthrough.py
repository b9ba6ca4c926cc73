"""
Scoring genealogy trees
=======================

Five concepts for pumping water, grouped by the physical principle and the
working principle they use. Two spaces share the same branch structure but
spread their concepts differently, which is exactly the situation where the
count-aware indices earn their keep.
"""

from variant import score_tree, tree_from_assignments

# concept -> (physical principle, working principle)
even_space = [
    ("centrifugal force", "volute pump"),
    ("centrifugal force", "axial pump"),
    ("positive displacement", "gear pump"),
    ("positive displacement", "piston pump"),
    ("positive displacement", "diaphragm pump"),
]

# same ideas, but four of five concepts lean on positive displacement
skewed_space = [
    ("centrifugal force", "volute pump"),
    ("positive displacement", "gear pump"),
    ("positive displacement", "piston pump"),
    ("positive displacement", "diaphragm pump"),
    ("positive displacement", "peristaltic pump"),
]

levels = [(1, 10.0), (2, 6.0)]  # conventional weights for the two levels

for name, assignments in (("even", even_space), ("skewed", skewed_space)):
    tree = tree_from_assignments(assignments, levels)
    print(f"--- {name} space: counts {sorted(tree.counts_at(1))} at the top level")
    for metric in ("svs", "nm", "ihi", "hhid", "gsid"):
        score = score_tree(tree, metric)
        per_level = ", ".join(f"L{a}={v:.3f}" for a, v in sorted(score.per_level.items()))
        print(f"{metric:>5}: overall {score.overall:.4f}   ({per_level})")
    print()

# svs and nm land on identical scores for both spaces; only the
# concentration-based indices notice that the skewed space explores the
# top-level ideas less evenly.
