"""Pairwise concept distances from construct texts.

Per abstraction level, each concept's instance texts are concatenated into
one string, encoded as a vector, and compared with every other concept by
cosine distance. The result is a symmetric, zero-diagonal matrix with all
entries in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .embedding import EmbeddingProvider
from .errors import ShapeMismatch, TooFewConcepts, ZeroVector
from .levels import AbstractionLevel
from .spaces import Concept, ConceptSpace

__all__ = [
    "DEFAULT_SEPARATOR",
    "LevelText",
    "DistanceMatrix",
    "concat_level_text",
    "cosine_distance",
    "build_level_matrix",
]

DEFAULT_SEPARATOR = ". "


@dataclass(frozen=True)
class LevelText:
    """The joined construct text of one concept at one level."""

    concept_id: int
    level: AbstractionLevel
    text: str


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric zero-diagonal matrix of pairwise distances in [0, 1].

    ``level`` names the abstraction level, or "weighted" for the
    level-aggregated matrix. The underlying array is frozen.
    """

    level: str
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ShapeMismatch(f"distance matrix must be square, got {values.shape}")
        if not np.allclose(values, values.T, rtol=0, atol=0):
            raise ShapeMismatch("distance matrix must be symmetric")
        if np.any(np.diag(values) != 0):
            raise ShapeMismatch("distance matrix diagonal must be zero")
        if values.size and (values.min() < 0 or values.max() > 1):
            raise ShapeMismatch("distances must lie in [0, 1]")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]


def as_array(matrix: "DistanceMatrix | np.ndarray") -> np.ndarray:
    """Accept either a DistanceMatrix or a bare square array."""
    if isinstance(matrix, DistanceMatrix):
        return matrix.values
    arr = np.asarray(matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {arr.shape}")
    return arr


def concat_level_text(
    concept: Concept,
    level: AbstractionLevel | int | str,
    separator: str = DEFAULT_SEPARATOR,
) -> LevelText:
    """Join a concept's instance texts at one level, in instance order.

    Empty construct texts are skipped so the separator never dangles.
    """
    level = AbstractionLevel.coerce(level)
    parts = [inst.text(level) for inst in concept.instances]
    text = separator.join(p for p in parts if p.strip())
    return LevelText(concept.concept_id, level, text)


def cosine_distance(a: np.ndarray, b: np.ndarray) -> float:
    """One minus cosine similarity, clamped into [0, 1].

    Similarity is floored at zero first: anti-aligned sentence vectors
    count as maximally distant, never more. Raises ZeroVector for a
    zero-norm input, which signals provider failure (empty texts are
    handled before vectors are compared).
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape:
        raise ShapeMismatch(f"vector dimensions differ: {a.shape[0]} vs {b.shape[0]}")
    norm_a = np.linalg.norm(a)
    norm_b = np.linalg.norm(b)
    if norm_a == 0 or norm_b == 0:
        raise ZeroVector("cannot take cosine distance of a zero vector")
    sim = float(np.dot(a, b) / (norm_a * norm_b))
    return min(max(1.0 - max(sim, 0.0), 0.0), 1.0)


def build_level_matrix(
    space: ConceptSpace,
    level: AbstractionLevel | int | str,
    provider: EmbeddingProvider,
    separator: str = DEFAULT_SEPARATOR,
) -> DistanceMatrix:
    """Pairwise distance matrix for one abstraction level.

    All non-empty level texts go to the provider in a single batch; the
    matrix is then assembled from the cached vectors. Identical texts are
    exactly distance 0. An empty text is treated as maximally uninformative:
    distance 0 to another empty text, 1 to any non-empty one.
    """
    level = AbstractionLevel.coerce(level)
    n = len(space)
    if n < 2:
        raise TooFewConcepts("a distance matrix needs at least two concepts")
    texts = [concat_level_text(c, level, separator).text for c in space.concepts]
    keys = [(c.concept_id, level) for c in space.concepts]

    filled = [i for i, t in enumerate(texts) if t.strip()]
    vectors: dict[int, np.ndarray] = {}
    if filled:
        batch = provider.embed_batch(
            [texts[i] for i in filled], keys=[keys[i] for i in filled]
        )
        for row, i in enumerate(filled):
            vec = np.asarray(batch[row], dtype=float)
            if np.linalg.norm(vec) == 0:
                raise ZeroVector(
                    f"provider {provider.provider_id} returned a zero vector for"
                    f" concept {space.concepts[i].concept_id} at level {level.column}"
                )
            vectors[i] = vec

    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            empty_i = i not in vectors
            empty_j = j not in vectors
            if empty_i and empty_j:
                d = 0.0
            elif empty_i or empty_j:
                d = 1.0
            elif texts[i] == texts[j]:
                d = 0.0
            else:
                d = cosine_distance(vectors[i], vectors[j])
            out[i, j] = out[j, i] = d
    return DistanceMatrix(level.column, out)
