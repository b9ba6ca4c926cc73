"""Genealogy trees: concepts grouped by shared ideas, level by level.

A tree carries its own level scheme, so the classic four-level layout
(physical principle, working principle, embodiment, detail) and the
seven-level scheme coexist. Trees for several design functions can be
combined with normalized function weights; a tree built for one function
has a single weight of 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import CountMismatch, InconsistentHierarchy

__all__ = ["TreeLevel", "IdeaNode", "GenealogyTree", "tree_from_assignments"]


@dataclass(frozen=True)
class TreeLevel:
    """A level descriptor: its index and its aggregation weight."""

    alpha: int
    weight: float


@dataclass(frozen=True)
class IdeaNode:
    """A distinct idea at one level, with the number of concepts using it."""

    level: int
    label: str
    count: int
    parent: str | None = None


@dataclass(frozen=True)
class GenealogyTree:
    """One tree per design function, all sharing a level scheme.

    ``nodes_by_function[j]`` holds every node of function j's tree, flat;
    ``function_weights`` are normalized to sum to 1 on construction.
    """

    levels: tuple[TreeLevel, ...]
    nodes_by_function: tuple[tuple[IdeaNode, ...], ...]
    function_weights: tuple[float, ...]

    def __post_init__(self):
        levels = tuple(self.levels)
        functions = tuple(tuple(nodes) for nodes in self.nodes_by_function)
        raw = [float(f) for f in self.function_weights]
        if len(raw) != len(functions):
            raise ValueError(
                f"{len(raw)} function weights for {len(functions)} function trees"
            )
        if any(f < 0 for f in raw):
            raise ValueError("function weights must be non-negative")
        total = sum(raw)
        if total <= 0:
            raise ValueError("function weights must sum to a positive value")
        alphas = [l.alpha for l in levels]
        if alphas != sorted(alphas) or len(set(alphas)) != len(alphas):
            raise ValueError(f"level indices must strictly increase, got {alphas}")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "nodes_by_function", functions)
        object.__setattr__(self, "function_weights", tuple(f / total for f in raw))
        self._check_consistency()

    @classmethod
    def single(
        cls,
        levels: Sequence[TreeLevel | tuple[int, float]],
        nodes: Sequence[IdeaNode],
    ) -> "GenealogyTree":
        """A tree for a single function (weight 1)."""
        lv = tuple(l if isinstance(l, TreeLevel) else TreeLevel(*l) for l in levels)
        return cls(lv, (tuple(nodes),), (1.0,))

    @classmethod
    def combine(
        cls, trees: Sequence["GenealogyTree"], function_weights: Sequence[float]
    ) -> "GenealogyTree":
        """Merge single-function trees into one multi-function tree.

        All trees must share the level scheme and describe the same number
        of concepts.
        """
        if not trees:
            raise ValueError("no trees to combine")
        levels = trees[0].levels
        for t in trees[1:]:
            if t.levels != levels:
                raise ValueError("function trees use different level schemes")
            if t.n_concepts != trees[0].n_concepts:
                raise CountMismatch(
                    "function trees describe different numbers of concepts"
                )
        nodes = tuple(t.nodes_by_function[0] for t in trees)
        return cls(levels, nodes, tuple(function_weights))

    @property
    def n_functions(self) -> int:
        return len(self.nodes_by_function)

    @property
    def alphas(self) -> tuple[int, ...]:
        return tuple(l.alpha for l in self.levels)

    @property
    def n_concepts(self) -> int:
        first = self.levels[0].alpha if self.levels else 0
        return sum(n.count for n in self.nodes_at(first)) if self.levels else 0

    def weight(self, alpha: int) -> float:
        for level in self.levels:
            if level.alpha == alpha:
                return level.weight
        raise KeyError(alpha)

    def nodes_at(self, alpha: int, function: int = 0) -> tuple[IdeaNode, ...]:
        return tuple(n for n in self.nodes_by_function[function] if n.level == alpha)

    def counts_at(self, alpha: int, function: int = 0) -> tuple[int, ...]:
        return tuple(n.count for n in self.nodes_at(alpha, function))

    def nodes_at_prev(self, alpha: int, function: int = 0) -> tuple[IdeaNode, ...]:
        """Nodes at the level immediately above ``alpha`` in this tree's order."""
        alphas = self.alphas
        idx = alphas.index(alpha)
        if idx == 0:
            return ()
        return self.nodes_at(alphas[idx - 1], function)

    def children_of(self, node: IdeaNode, function: int = 0) -> tuple[IdeaNode, ...]:
        next_alphas = [a for a in self.alphas if a > node.level]
        if not next_alphas:
            return ()
        return tuple(
            n
            for n in self.nodes_at(min(next_alphas), function)
            if n.parent == node.label
        )

    def _check_consistency(self) -> None:
        # every level of every function tree must account for the same N
        n_ref: int | None = None
        for j, nodes in enumerate(self.nodes_by_function):
            for level in self.levels:
                total = sum(n.count for n in nodes if n.level == level.alpha)
                if n_ref is None:
                    n_ref = total
                elif total != n_ref:
                    raise CountMismatch(
                        f"function {j} level {level.alpha} counts sum to {total},"
                        f" expected {n_ref}"
                    )
        for j in range(self.n_functions):
            for pos, level in enumerate(self.levels):
                if pos > 0:
                    parent_labels = {
                        n.label for n in self.nodes_at(self.levels[pos - 1].alpha, j)
                    }
                    for node in self.nodes_at(level.alpha, j):
                        if node.parent not in parent_labels:
                            raise InconsistentHierarchy(
                                f"node {node.label!r} at level {level.alpha} names"
                                f" parent {node.parent!r}, which is not a node at the"
                                f" previous level"
                            )
            for level in self.levels[:-1]:
                for node in self.nodes_at(level.alpha, j):
                    children = self.children_of(node, j)
                    if children and sum(c.count for c in children) != node.count:
                        raise InconsistentHierarchy(
                            f"node {node.label!r} count {node.count} does not match"
                            f" its children's total {sum(c.count for c in children)}"
                        )


def tree_from_assignments(
    assignments: Sequence[Sequence[str]] | Mapping[int, Sequence[str]],
    levels: Sequence[TreeLevel | tuple[int, float]],
) -> GenealogyTree:
    """Build a single-function tree from per-concept idea labels.

    ``assignments`` holds one label per level for every concept, ordered as
    ``levels``. Node counts are the number of concepts carrying each label,
    so they sum to N at every level by construction.

    Raises InconsistentHierarchy when one label appears under two distinct
    parent labels.
    """
    if isinstance(assignments, Mapping):
        rows = [assignments[k] for k in sorted(assignments)]
    else:
        rows = list(assignments)
    level_specs = [l if isinstance(l, TreeLevel) else TreeLevel(*l) for l in levels]
    if not rows:
        raise ValueError("no concept assignments given")
    for row in rows:
        if len(row) != len(level_specs):
            raise ValueError(
                f"expected {len(level_specs)} labels per concept, got {len(row)}"
            )

    nodes: list[IdeaNode] = []
    for depth, spec in enumerate(level_specs):
        counts: dict[str, int] = {}
        parents: dict[str, str | None] = {}
        for row in rows:
            label = row[depth]
            parent = row[depth - 1] if depth > 0 else None
            if label in parents and parents[label] != parent:
                raise InconsistentHierarchy(
                    f"label {label!r} at level {spec.alpha} appears under both"
                    f" {parents[label]!r} and {parent!r}"
                )
            parents.setdefault(label, parent)
            counts[label] = counts.get(label, 0) + 1
        nodes.extend(
            IdeaNode(spec.alpha, label, counts[label], parents[label])
            for label in counts  # first-appearance order
        )
    return GenealogyTree.single(level_specs, nodes)
