"""
Assessing a concept space from construct texts
==============================================

Four ways of boiling water, each described at seven levels of abstraction.
The pipeline turns the per-level texts into pairwise distances and
aggregates them into per-concept, per-level and overall variety scores.

Uses the offline hashed bag-of-words encoder; point a
ServiceEmbeddingClient at a sentence-embedding service for
production-quality distances.
"""

import os

from variant import (
    HashedBowEncoder,
    LEVELS,
    assess,
    default_weights,
    level_boxplot,
)
from variant.spaceio import import_space

HERE = os.path.dirname(os.path.abspath(__file__))
space = import_space(os.path.join(HERE, "..", "data", "boil_water.csv"))
print(f"space {space.space_id!r}: {len(space)} concepts")
for c in space.concepts:
    print(f"  {c.concept_id}: {c.name}")

result = assess(space, HashedBowEncoder(), default_weights())

print(f"\noverall variety: {result.overall:.3f}\n")
print("per level:")
for lvl in LEVELS:
    bar = "#" * round(40 * result.per_level[lvl])
    print(f"  {lvl.column:>12} {result.per_level[lvl]:6.3f} {bar}")

print("\nper concept (weighted over levels):")
for cid, name, score in zip(result.concept_ids, result.concept_names, result.per_concept):
    print(f"  {name:>22} {score:6.3f}")

# the level-wise box stats point at which concept stands apart where
print("\nlevel outliers (concepts far from the rest of the space):")
for stats in level_boxplot(result.per_concept_per_level, result.concept_ids):
    for cid, value in stats.outliers:
        name = result.concept_names[result.concept_ids.index(cid)]
        print(f"  {stats.level.column}: {name} at {value:.3f}")
