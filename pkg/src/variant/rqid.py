"""Distance-based variety scores and their weighted aggregation.

The per-level space score is the mean pairwise distance
``sum(d_ij) / (N*(N-1))`` — an unbiased quadratic-entropy estimate that
collapses to the count-based unbiased index when distances are binary.
Level scores, per-concept scores and the pairwise matrix itself aggregate
across levels by the same weighted mean, so the three routes to the
overall score (aggregate the level scores, average the per-concept
scores, or average the weighted matrix off-diagonal) agree identically.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .distance import DEFAULT_SEPARATOR, DistanceMatrix, as_array, build_level_matrix
from .embedding import EmbeddingProvider
from .errors import ShapeMismatch, TooFewConcepts, ZeroWeightSum
from .levels import LEVELS, AbstractionLevel, LevelWeights
from .spaces import ConceptSpace

__all__ = [
    "concept_variety",
    "level_variety",
    "weighted_concept_variety",
    "space_variety",
    "weighted_distance_matrix",
    "AssessmentResult",
    "assess",
]


def concept_variety(matrix: "DistanceMatrix | np.ndarray", i: int) -> float:
    """Average distance of concept ``i`` from the other N-1 concepts."""
    d = as_array(matrix)
    n = d.shape[0]
    if n < 2:
        raise TooFewConcepts("concept variety needs N >= 2")
    return float(d[i].sum() / (n - 1))


def level_variety(matrix: "DistanceMatrix | np.ndarray") -> float:
    """Mean pairwise distance over all ordered pairs: the level's score."""
    d = as_array(matrix)
    n = d.shape[0]
    if n < 2:
        raise TooFewConcepts("level variety needs N >= 2")
    return float(d.sum() / (n * (n - 1)))


def _weighted_mean(values: Mapping[AbstractionLevel, float], weights: LevelWeights) -> float:
    total_w = sum(weights[lvl] for lvl in values)
    if total_w <= 0:
        raise ZeroWeightSum("weights over the scored levels sum to zero")
    return sum(weights[lvl] * v for lvl, v in values.items()) / total_w


def weighted_concept_variety(
    per_level: Mapping[AbstractionLevel | int | str, float], weights: LevelWeights
) -> float:
    """Weighted mean of one concept's per-level scores."""
    values = {AbstractionLevel.coerce(k): float(v) for k, v in per_level.items()}
    return _weighted_mean(values, weights)


def space_variety(
    per_level: Mapping[AbstractionLevel | int | str, float], weights: LevelWeights
) -> float:
    """Weighted mean of the space's per-level scores: the overall score."""
    values = {AbstractionLevel.coerce(k): float(v) for k, v in per_level.items()}
    return _weighted_mean(values, weights)


def weighted_distance_matrix(
    matrices: Mapping[AbstractionLevel | int | str, "DistanceMatrix | np.ndarray"],
    weights: LevelWeights,
) -> DistanceMatrix:
    """Per-pair weighted mean of the level matrices.

    Zero-weight levels contribute nothing and are excluded from the
    denominator, so ablating a level never requires recomputation.
    """
    if not matrices:
        raise ShapeMismatch("no level matrices to aggregate")
    keyed = {AbstractionLevel.coerce(k): as_array(m) for k, m in matrices.items()}
    shapes = {m.shape for m in keyed.values()}
    if len(shapes) != 1:
        raise ShapeMismatch(f"level matrices disagree on shape: {sorted(shapes)}")
    total_w = sum(weights[lvl] for lvl in keyed)
    if total_w <= 0:
        raise ZeroWeightSum("weights over the aggregated levels sum to zero")
    acc = np.zeros(shapes.pop())
    for lvl, m in keyed.items():
        acc += weights[lvl] * m
    return DistanceMatrix("weighted", acc / total_w)


@dataclass(frozen=True)
class AssessmentResult:
    """Everything one assessment produces.

    ``per_concept_per_level[level]`` is aligned with ``concept_ids``; the
    overall score equals both the mean of ``per_concept`` and the
    off-diagonal mean of ``weighted_matrix``.
    """

    space_id: str
    concept_ids: tuple[int, ...]
    concept_names: tuple[str, ...]
    per_concept_per_level: dict[AbstractionLevel, tuple[float, ...]]
    per_level: dict[AbstractionLevel, float]
    per_concept: tuple[float, ...]
    overall: float
    weighted_matrix: DistanceMatrix
    weights_used: LevelWeights
    provider_id: str
    level_matrices: dict[AbstractionLevel, DistanceMatrix] = field(repr=False, default_factory=dict)


def assess(
    space: ConceptSpace,
    provider: EmbeddingProvider,
    weights: LevelWeights,
    separator: str = DEFAULT_SEPARATOR,
    concurrency: int = 1,
) -> AssessmentResult:
    """Run the whole pipeline: texts -> vectors -> level matrices -> scores.

    ``concurrency`` bounds how many level batches are in flight at once;
    results are identical regardless of schedule.
    """
    n = len(space)
    if n < 2:
        raise TooFewConcepts("an assessment needs at least two concepts")

    def one_level(level: AbstractionLevel) -> DistanceMatrix:
        return build_level_matrix(space, level, provider, separator)

    if concurrency > 1:
        with ThreadPoolExecutor(max_workers=concurrency) as pool:
            matrices = dict(zip(LEVELS, pool.map(one_level, LEVELS)))
    else:
        matrices = {level: one_level(level) for level in LEVELS}

    per_concept_per_level = {
        level: tuple(concept_variety(m, i) for i in range(n))
        for level, m in matrices.items()
    }
    per_level = {level: level_variety(m) for level, m in matrices.items()}
    per_concept = tuple(
        weighted_concept_variety(
            {level: per_concept_per_level[level][i] for level in LEVELS}, weights
        )
        for i in range(n)
    )
    overall = space_variety(per_level, weights)
    weighted = weighted_distance_matrix(matrices, weights)
    return AssessmentResult(
        space_id=space.space_id,
        concept_ids=space.concept_ids,
        concept_names=tuple(c.name for c in space.concepts),
        per_concept_per_level=per_concept_per_level,
        per_level=per_level,
        per_concept=per_concept,
        overall=overall,
        weighted_matrix=weighted,
        weights_used=weights,
        provider_id=provider.provider_id,
        level_matrices=matrices,
    )
