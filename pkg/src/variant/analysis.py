"""Sensitivity curves, score distributions, and concept grouping.

The two curve generators reproduce the canonical stress tests for
count-based variety metrics: varying the split of N concepts over two
ideas, and varying N on a perfectly even split. Box-plot statistics,
k-medoids partitioning, and average-linkage hierarchical merging all
operate on the per-concept scores and matrices produced elsewhere; nothing
here re-derives a metric.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .distance import DistanceMatrix, as_array
from .errors import BadK, TooFewConcepts
from .levels import AbstractionLevel
from .treemetrics import METRICS, score_tree
from .trees import GenealogyTree, IdeaNode, TreeLevel

__all__ = [
    "CurvePoint",
    "BoxPlotStats",
    "Dendrogram",
    "testcase1_curve",
    "testcase2_curve",
    "level_boxplot",
    "cluster",
    "dendrogram",
]


@dataclass(frozen=True)
class CurvePoint:
    """Scaled scores of every metric at one x position of a curve."""

    x: str
    scores: dict[str, float]


def _two_node_tree(counts: Sequence[int]) -> GenealogyTree:
    positive = [int(c) for c in counts if c > 0]
    nodes = [IdeaNode(1, f"idea-{i + 1}", c) for i, c in enumerate(positive)]
    return GenealogyTree.single([TreeLevel(1, 1.0)], nodes)


def _scaled_scores(counts: Sequence[int]) -> dict[str, float]:
    tree = _two_node_tree(counts)
    return {
        metric: score_tree(tree, metric, weights="tree").scaled_per_level[1]
        for metric in METRICS
    }


def testcase1_curve(
    n: int, splits: Sequence[tuple[int, int]] | None = None
) -> list[CurvePoint]:
    """Scores across distributions of ``n`` concepts over two ideas.

    Defaults to the splits 0/n, 1/n-1, ..., n/2 / n/2. Branch-count
    metrics stay flat on every split with both sides populated, while the
    distribution-aware metrics fall as the split skews.
    """
    if n < 2:
        raise TooFewConcepts("the split curve needs N >= 2")
    if splits is None:
        splits = [(a, n - a) for a in range(0, n // 2 + 1)]
    points = []
    for a, b in splits:
        if a + b != n or a < 0 or b < 0:
            raise ValueError(f"split {a}/{b} does not partition {n}")
        points.append(CurvePoint(f"{a}/{b}", _scaled_scores((a, b))))
    return points


def testcase2_curve(n_range: Sequence[int]) -> list[CurvePoint]:
    """Scores on a perfectly even two-way split as N grows.

    Two concepts with distinct ideas should score 1; as N grows the score
    should settle at 0.5, the chance that two random concepts differ. The
    unbiased index is the only one that does both.
    """
    points = []
    for n in n_range:
        if n < 2 or n % 2:
            raise ValueError(f"even-split curve needs even N >= 2, got {n}")
        points.append(CurvePoint(str(n), _scaled_scores((n // 2, n // 2))))
    return points


@dataclass(frozen=True)
class BoxPlotStats:
    """Five-number summary of per-concept scores at one level.

    Quartiles use linear interpolation; whiskers reach the most extreme
    scores still within 1.5*IQR of the quartiles; anything beyond is an
    outlier, reported with its concept id.
    """

    level: AbstractionLevel
    median: float
    q1: float
    q3: float
    whisker_low: float
    whisker_high: float
    mean: float
    outliers: tuple[tuple[int, float], ...]


def level_boxplot(
    per_level_scores: Mapping[AbstractionLevel | int | str, Sequence[float]],
    concept_ids: Sequence[int],
) -> list[BoxPlotStats]:
    """Box-plot statistics per abstraction level.

    The mean equals the level's variety score, since that score is defined
    as the average of the per-concept values.
    """
    stats = []
    for key, scores in per_level_scores.items():
        level = AbstractionLevel.coerce(key)
        values = np.asarray(list(scores), dtype=float)
        if values.size != len(concept_ids):
            raise ValueError(
                f"{values.size} scores for {len(concept_ids)} concepts at {level.column}"
            )
        q1, median, q3 = np.percentile(values, [25, 50, 75])
        iqr = q3 - q1
        lo_fence, hi_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
        inside = values[(values >= lo_fence) & (values <= hi_fence)]
        outliers = tuple(
            (int(cid), float(v))
            for cid, v in zip(concept_ids, values)
            if v < lo_fence or v > hi_fence
        )
        stats.append(
            BoxPlotStats(
                level=level,
                median=float(median),
                q1=float(q1),
                q3=float(q3),
                whisker_low=float(inside.min()) if inside.size else float(q1),
                whisker_high=float(inside.max()) if inside.size else float(q3),
                mean=float(values.mean()),
                outliers=outliers,
            )
        )
    return stats


def _pam_assign(d: np.ndarray, medoids: Sequence[int]) -> tuple[np.ndarray, float]:
    cols = d[:, list(medoids)]
    nearest = cols.argmin(axis=1)  # ties go to the first (lowest-index) medoid
    return nearest, float(cols[np.arange(len(d)), nearest].sum())


def cluster(
    matrix: "DistanceMatrix | np.ndarray",
    k: int,
    method: str = "medoids",
    seed: int = 0,
) -> list[int]:
    """Partition concepts into ``k`` groups from their pairwise distances.

    The default works directly on the matrix: medoids are seeded greedily
    (lowest-index concept first, then repeatedly the concept farthest from
    its nearest medoid) and refined by best-improvement swaps until no swap
    lowers the total distance to the nearest medoid. Deterministic, no RNG.

    ``method="mds"`` instead embeds the matrix by classical
    multidimensional scaling and runs standard mean-update iterations in
    that coordinate space, seeded by the same greedy rule; ``seed`` is
    reserved for that path's tie handling.
    """
    d = as_array(matrix)
    n = d.shape[0]
    if not 1 <= k <= n:
        raise BadK(f"k must be in 1..{n}, got {k}")
    if method == "medoids":
        labels = _kmedoids(d, k)
    elif method == "mds":
        labels = _mds_kmeans(d, k, seed)
    else:
        raise ValueError(f"unknown clustering method {method!r}")
    return labels


def _greedy_seeds(d: np.ndarray, k: int) -> list[int]:
    medoids = [0]
    while len(medoids) < k:
        nearest = d[:, medoids].min(axis=1)
        nearest[medoids] = -1.0
        farthest = int(nearest.argmax())  # argmax ties -> lowest index
        medoids.append(farthest)
    return medoids


def _kmedoids(d: np.ndarray, k: int) -> list[int]:
    n = d.shape[0]
    medoids = _greedy_seeds(d, k)
    _, cost = _pam_assign(d, medoids)
    improved = True
    while improved:
        improved = False
        best = (cost, None, None)
        for mi, m in enumerate(medoids):
            for candidate in range(n):
                if candidate in medoids:
                    continue
                trial = medoids.copy()
                trial[mi] = candidate
                _, trial_cost = _pam_assign(d, trial)
                if trial_cost < best[0] - 1e-15:
                    best = (trial_cost, mi, candidate)
        if best[1] is not None:
            medoids[best[1]] = best[2]
            cost = best[0]
            improved = True
    order = sorted(medoids)
    assign, _ = _pam_assign(d, order)
    return [int(a) for a in assign]


def _classical_mds(d: np.ndarray) -> np.ndarray:
    n = d.shape[0]
    sq = d**2
    j = np.eye(n) - np.ones((n, n)) / n
    b = -0.5 * j @ sq @ j
    eigvals, eigvecs = np.linalg.eigh(b)
    keep = eigvals > 1e-12
    return eigvecs[:, keep] * np.sqrt(eigvals[keep])


def _mds_kmeans(d: np.ndarray, k: int, seed: int, iters: int = 100) -> list[int]:
    points = _classical_mds(d)
    if points.shape[1] == 0:  # all distances zero
        return [i if i < k else k - 1 for i in range(d.shape[0])] if k > 1 else [0] * d.shape[0]
    centers = points[_greedy_seeds(d, k)]
    labels = np.full(len(points), -1, dtype=int)
    for _step in range(iters):
        dist = np.linalg.norm(points[:, None, :] - centers[None, :, :], axis=2)
        new_labels = dist.argmin(axis=1)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            group = points[labels == c]
            if len(group):
                centers[c] = group.mean(axis=0)
    # renumber clusters by their lowest member index for determinism
    remap: dict[int, int] = {}
    for lab in labels:
        if lab not in remap:
            remap[lab] = len(remap)
    return [remap[int(l)] for l in labels]


@dataclass(frozen=True)
class Dendrogram:
    """Agglomerative merge tree over concepts.

    ``merges[m] = (a, b, height)`` joins nodes ``a`` and ``b``; indices
    below N refer to leaves (positions in ``leaves``), N+m refers to the
    m-th merge. Average linkage makes the heights non-decreasing.
    """

    leaves: tuple[int, ...]
    merges: tuple[tuple[int, int, float], ...]

    @property
    def heights(self) -> tuple[float, ...]:
        return tuple(h for _, _, h in self.merges)


def dendrogram(matrix: "DistanceMatrix | np.ndarray", concept_ids: Sequence[int] | None = None) -> Dendrogram:
    """Average-linkage hierarchical merging of the distance matrix.

    Cluster pairs are compared by the mean of their cross-pair distances;
    ties are broken toward the pair containing the lowest concept index.
    """
    d = as_array(matrix)
    n = d.shape[0]
    if n < 2:
        raise TooFewConcepts("a dendrogram needs at least two concepts")
    if concept_ids is None:
        concept_ids = list(range(1, n + 1))

    members: dict[int, list[int]] = {i: [i] for i in range(n)}  # node id -> leaf rows
    active = list(range(n))
    merges: list[tuple[int, int, float]] = []
    next_id = n
    while len(active) > 1:
        best_key: tuple[float, int, int] | None = None
        best_pair = (0, 0)
        for ai in range(len(active)):
            for bi in range(ai + 1, len(active)):
                a, b = active[ai], active[bi]
                rows, cols = members[a], members[b]
                height = float(d[np.ix_(rows, cols)].mean())
                key = (height, min(min(rows), min(cols)), min(a, b))
                if best_key is None or key < best_key:
                    best_key, best_pair = key, (a, b)
        height = best_key[0]
        a, b = min(best_pair), max(best_pair)
        members[next_id] = sorted(members[a] + members[b])
        active = [x for x in active if x not in (a, b)] + [next_id]
        merges.append((a, b, height))
        next_id += 1
    return Dendrogram(tuple(int(c) for c in concept_ids), tuple(merges))
