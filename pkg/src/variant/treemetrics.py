"""Variety metrics computed on genealogy trees.

Five metrics share the tree representation:

* ``svs`` scores the number of branches per level, weighted by level and
  normalized by the largest achievable score; a level with a single branch
  contributes nothing.
* ``nm`` counts branch differentiations (branches minus one, per node)
  instead of branches, optionally normalized by N-1.
* ``ihi`` replaces the branch count with the inverse of the concentration
  index ``H = sum((n_i/N)^2)``, giving per-level scores sensitive to how
  evenly concepts spread over ideas.
* ``hhid`` is ``1 - sum(n_i^2)/N^2``, the plug-in estimate of the
  probability that two randomly drawn concepts use different ideas.
* ``gsid`` replaces that plug-in estimate with the unbiased one,
  ``1 - sum(n_i*(n_i-1))/(N*(N-1))``, which is exact for finite samples
  (it reaches 1 for two singleton groups where hhid stalls at 0.5).

Count arithmetic stays in exact integers until the single final division.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import CountMismatch, EmptyTree, TooFewConcepts, UnknownLevel, ZeroWeightSum
from .trees import GenealogyTree

__all__ = [
    "METRICS",
    "SVS_WEIGHTS",
    "NM_WEIGHTS",
    "TreeMetricScore",
    "shah_variety",
    "nelson_variety",
    "ihi_level",
    "ihi_overall",
    "hhid_level",
    "gsid_level",
    "scale_to_unit",
    "score_tree",
]

METRICS = ("svs", "nm", "ihi", "hhid", "gsid")

# conventional level weights, applied by position in the tree's level list
SVS_WEIGHTS = (10.0, 6.0, 3.0, 1.0)
NM_WEIGHTS = (10.0, 5.0, 2.0, 1.0)


@dataclass(frozen=True)
class TreeMetricScore:
    """Per-level and aggregate scores for one metric on one tree."""

    metric: str
    per_level: dict[int, float]
    overall: float | None
    scaled_per_level: dict[int, float]


def _resolve_tree_weights(
    tree: GenealogyTree,
    weights: "Mapping[int, float] | str | None",
    preset: Sequence[float],
) -> dict[int, float]:
    """Weight per level alpha: explicit mapping, the tree's own weights
    ("tree"), or the metric's conventional preset applied by position."""
    if isinstance(weights, Mapping):
        try:
            return {l.alpha: float(weights[l.alpha]) for l in tree.levels}
        except KeyError as missing:
            raise UnknownLevel(f"no weight given for level {missing}") from None
    if weights == "tree":
        return {l.alpha: l.weight for l in tree.levels}
    if weights is None:
        if len(tree.levels) > len(preset):
            raise ValueError(
                f"tree has {len(tree.levels)} levels but the default preset"
                f" covers {len(preset)}; pass weights explicitly"
            )
        return {l.alpha: preset[i] for i, l in enumerate(tree.levels)}
    raise ValueError(f"bad weights argument {weights!r}")


def _positive_counts(tree: GenealogyTree, alpha: int, function: int) -> list[int]:
    return [c for c in tree.counts_at(alpha, function) if c > 0]


def shah_variety(
    tree: GenealogyTree, weights: "Mapping[int, float] | str | None" = None
) -> float:
    """Branch-count variety on a 0-10 scale.

    Per function, each level contributes its weight times its branch count,
    zero when only one branch exists; the total is divided by N (the score
    a space earns when every concept branches at the top level).
    """
    if not tree.levels:
        raise EmptyTree("tree has no levels")
    w = _resolve_tree_weights(tree, weights, SVS_WEIGHTS)
    n = tree.n_concepts
    if n < 1:
        raise TooFewConcepts("tree describes no concepts")
    total = 0.0
    for j, f in enumerate(tree.function_weights):
        acc = 0.0
        for level in tree.levels:
            beta = len(_positive_counts(tree, level.alpha, j))
            if beta > 1:
                acc += w[level.alpha] * beta
        total += f * (acc / n)
    return total


def _nelson_numerator(tree: GenealogyTree, w: Mapping[int, float], j: int) -> float:
    first = tree.levels[0].alpha
    beta_1 = len(_positive_counts(tree, first, j))
    acc = w[first] * (beta_1 - 1)
    for level in tree.levels[1:]:
        diffs = 0
        for parent in tree.nodes_at_prev(level.alpha, j):
            children = [
                c for c in tree.children_of(parent, j) if c.count > 0
            ]
            if len(children) > 1:
                diffs += len(children) - 1
        acc += w[level.alpha] * diffs
    return acc


def nelson_variety(
    tree: GenealogyTree,
    normalized: bool = True,
    weights: "Mapping[int, float] | str | None" = None,
) -> float:
    """Differentiation-count variety.

    The top level contributes branches-minus-one; every deeper level
    contributes, per parent node, its child count minus one (single-child
    nodes differentiate nothing). ``normalized`` divides by N-1, the
    maximum possible number of differentiations.
    """
    if not tree.levels:
        raise EmptyTree("tree has no levels")
    w = _resolve_tree_weights(tree, weights, NM_WEIGHTS)
    n = tree.n_concepts
    if normalized and n < 2:
        raise TooFewConcepts("normalized differentiation score needs N >= 2")
    total = 0.0
    for j, f in enumerate(tree.function_weights):
        numerator = _nelson_numerator(tree, w, j)
        total += f * (numerator / (n - 1) if normalized else numerator)
    return total


def ihi_level(
    tree: GenealogyTree,
    alpha: int,
    weights: "Mapping[int, float] | str | None" = None,
) -> float:
    """Inverse-concentration variety at one level: ``w * 1/(N*H)``.

    Always positive, even when every concept shares one idea (where it
    yields w/N rather than zero).
    """
    if alpha not in tree.alphas:
        raise UnknownLevel(f"tree has no level {alpha}")
    w = _resolve_tree_weights(tree, weights, SVS_WEIGHTS)
    n = tree.n_concepts
    if n < 1:
        raise TooFewConcepts("tree describes no concepts")
    score = 0.0
    for j, f in enumerate(tree.function_weights):
        counts = tree.counts_at(alpha, j)
        sum_sq = sum(c * c for c in counts)  # H = sum_sq / N^2
        score += f * (n / sum_sq)
    return w[alpha] * score


def ihi_overall(per_level: Mapping[int, float], weights: Mapping[int, float]) -> float:
    """Weighted average of per-level inverse-concentration scores.

    Sums only over the levels present in ``per_level``; the result lands
    in [0, 1] because each per-level score is at most its weight.
    """
    if not per_level:
        raise EmptyTree("no per-level scores to aggregate")
    weight_sum = sum(weights[alpha] for alpha in per_level)
    if weight_sum <= 0:
        raise ZeroWeightSum("aggregation weights sum to zero")
    return sum(per_level.values()) / weight_sum


def hhid_level(counts: Sequence[int], n: int) -> float:
    """Plug-in two-draws-differ probability: ``1 - sum(n_i^2)/N^2``.

    Biased for finite N; an even two-way split scores exactly 0.5 for
    every N, including N=2.
    """
    if n < 1:
        raise TooFewConcepts("need at least one concept")
    counts = [int(c) for c in counts]
    if sum(counts) != n:
        raise CountMismatch(f"counts sum to {sum(counts)}, expected {n}")
    return 1.0 - sum(c * c for c in counts) / (n * n)


def gsid_level(counts: Sequence[int], n: int) -> float:
    """Unbiased two-draws-differ probability:
    ``1 - sum(n_i*(n_i-1))/(N*(N-1))``.

    Sampling without replacement makes this exact for finite spaces: two
    concepts with distinct ideas score 1, and for fixed proportions the
    value converges to the plug-in estimate as N grows.
    """
    if n < 2:
        raise TooFewConcepts("unbiased estimate needs N >= 2")
    counts = [int(c) for c in counts]
    if sum(counts) != n:
        raise CountMismatch(f"counts sum to {sum(counts)}, expected {n}")
    return 1.0 - sum(c * (c - 1) for c in counts) / (n * (n - 1))


def scale_to_unit(metric: str, score: float, weight: float = 1.0) -> float:
    """Map a per-level score onto [0, 1] by dividing out the level weight.

    ``svs``, ``nm`` and ``ihi`` carry their level weight as a factor;
    ``hhid`` and ``gsid`` already live in [0, 1] and pass through.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    if metric in ("hhid", "gsid"):
        return score
    if weight <= 0:
        raise ValueError("level weight must be positive to scale")
    return score / weight


def _per_level_scores(
    tree: GenealogyTree,
    metric: str,
    weights: "Mapping[int, float] | str | None",
    normalized: bool,
) -> tuple[dict[int, float], dict[int, float]]:
    n = tree.n_concepts
    per_level: dict[int, float] = {}
    w: dict[int, float] = {}
    if metric == "svs":
        w = _resolve_tree_weights(tree, weights, SVS_WEIGHTS)
        for j, f in enumerate(tree.function_weights):
            for level in tree.levels:
                beta = len(_positive_counts(tree, level.alpha, j))
                contrib = w[level.alpha] * beta / n if beta > 1 else 0.0
                per_level[level.alpha] = per_level.get(level.alpha, 0.0) + f * contrib
    elif metric == "nm":
        w = _resolve_tree_weights(tree, weights, NM_WEIGHTS)
        divisor = n - 1 if normalized else 1
        if normalized and n < 2:
            raise TooFewConcepts("normalized differentiation score needs N >= 2")
        for j, f in enumerate(tree.function_weights):
            first = tree.levels[0].alpha
            beta_1 = len(_positive_counts(tree, first, j))
            per_level[first] = per_level.get(first, 0.0) + f * w[first] * (
                beta_1 - 1
            ) / divisor
            for level in tree.levels[1:]:
                diffs = 0
                for parent in tree.nodes_at_prev(level.alpha, j):
                    children = [c for c in tree.children_of(parent, j) if c.count > 0]
                    if len(children) > 1:
                        diffs += len(children) - 1
                per_level[level.alpha] = per_level.get(level.alpha, 0.0) + f * w[
                    level.alpha
                ] * diffs / divisor
    elif metric == "ihi":
        w = _resolve_tree_weights(tree, weights, SVS_WEIGHTS)
        for level in tree.levels:
            per_level[level.alpha] = ihi_level(tree, level.alpha, weights)
    elif metric in ("hhid", "gsid"):
        fn = hhid_level if metric == "hhid" else gsid_level
        w = {l.alpha: 1.0 for l in tree.levels}
        for level in tree.levels:
            value = 0.0
            for j, f in enumerate(tree.function_weights):
                value += f * fn(tree.counts_at(level.alpha, j), n)
            per_level[level.alpha] = value
    else:
        raise ValueError(f"unknown metric {metric!r}")
    scaled = {a: scale_to_unit(metric, v, w[a]) for a, v in per_level.items()}
    return per_level, scaled


def score_tree(
    tree: GenealogyTree,
    metric: str,
    weights: "Mapping[int, float] | str | None" = None,
    normalized: bool = True,
) -> TreeMetricScore:
    """Evaluate one metric on a tree, per level plus an aggregate.

    The aggregate follows each metric's own convention: summed level
    contributions for ``svs``/``nm``, the weighted per-level average for
    ``ihi``, and the level-weighted mean for ``hhid``/``gsid``.
    """
    if not tree.levels:
        raise EmptyTree("tree has no levels")
    per_level, scaled = _per_level_scores(tree, metric, weights, normalized)
    if metric == "svs":
        overall = shah_variety(tree, weights)
    elif metric == "nm":
        overall = nelson_variety(tree, normalized, weights)
    elif metric == "ihi":
        w = _resolve_tree_weights(tree, weights, SVS_WEIGHTS)
        overall = ihi_overall(per_level, w)
    else:
        # equal-importance mean over levels keeps the [0,1] range
        overall = sum(per_level.values()) / len(per_level)
    return TreeMetricScore(metric, per_level, overall, scaled)
