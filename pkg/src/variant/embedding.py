"""Pluggable text-to-vector providers.

Three interchangeable implementations sit behind one ``embed_batch``
surface: a deterministic hashed bag-of-words encoder for offline and test
use, an HTTP client for external embedding services, and a loader for
vectors precomputed elsewhere and stored in a CSV keyed by
(concept_id, level). Every provider must be deterministic: the same text
(or key) always yields the same vector under one configuration.
"""

from __future__ import annotations

import csv
import hashlib
import re
from typing import Protocol, Sequence, runtime_checkable

import httpx
import numpy as np

from .errors import MissingPrecomputedVector, ProviderUnavailable
from .levels import AbstractionLevel

__all__ = [
    "EmbeddingProvider",
    "HashedBowEncoder",
    "ServiceEmbeddingClient",
    "PrecomputedVectors",
    "make_provider",
]

Key = tuple[int, AbstractionLevel]


@runtime_checkable
class EmbeddingProvider(Protocol):
    """Anything that turns a batch of texts into equal-length vectors.

    ``keys`` carries the (concept_id, level) identity of each text; the
    precomputed loader requires it, the other providers ignore it.
    """

    provider_id: str

    def embed_batch(
        self, texts: Sequence[str], keys: Sequence[Key] | None = None
    ) -> np.ndarray: ...


_TOKEN_RE = re.compile(r"[^0-9a-z]+")


class HashedBowEncoder:
    """Deterministic offline encoder: lowercase, split on non-alphanumerics,
    hash each token into one of ``dim`` buckets, count, L2-normalize.

    Token hashing uses a keyed blake2s digest so vectors are identical
    across processes and platforms. Empty text maps to the zero vector.
    """

    def __init__(self, dim: int = 384, seed: int = 0):
        self.dim = dim
        self.seed = seed
        self._key = seed.to_bytes(8, "little", signed=True)
        self.provider_id = f"hash:d{dim}s{seed}"

    def _bucket(self, token: str) -> int:
        digest = hashlib.blake2s(token.encode("utf-8"), digest_size=8, key=self._key)
        return int.from_bytes(digest.digest(), "little") % self.dim

    def embed_batch(
        self, texts: Sequence[str], keys: Sequence[Key] | None = None
    ) -> np.ndarray:
        out = np.zeros((len(texts), self.dim))
        for row, text in enumerate(texts):
            for token in _TOKEN_RE.split(text.lower()):
                if token:
                    out[row, self._bucket(token)] += 1.0
            norm = np.linalg.norm(out[row])
            if norm > 0:
                out[row] /= norm
        return out


class ServiceEmbeddingClient:
    """Client for an external embedding service speaking a small JSON
    protocol: request ``{"model": ..., "input": [...]}``, response
    ``{"vectors": [[...], ...]}`` with vectors in request order.

    All texts go out in a single batch request. Any transport failure or
    malformed response surfaces as ProviderUnavailable carrying the
    service's diagnostic.
    """

    def __init__(
        self,
        url: str,
        model: str,
        token: str | None = None,
        timeout: float = 30.0,
        transport: httpx.BaseTransport | None = None,
    ):
        self.url = url
        self.model = model
        self.token = token
        self.timeout = timeout
        self._transport = transport
        self.provider_id = f"service:{model}"

    def embed_batch(
        self, texts: Sequence[str], keys: Sequence[Key] | None = None
    ) -> np.ndarray:
        headers = {}
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"
        payload = {"model": self.model, "input": list(texts)}
        try:
            with httpx.Client(transport=self._transport, timeout=self.timeout) as client:
                response = client.post(self.url, json=payload, headers=headers)
                response.raise_for_status()
                body = response.json()
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"embedding service at {self.url}: {exc}") from exc
        vectors = body.get("vectors") if isinstance(body, dict) else None
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise ProviderUnavailable(
                f"embedding service at {self.url} returned a malformed response"
                f" ({len(vectors) if isinstance(vectors, list) else 'no'} vectors"
                f" for {len(texts)} inputs)"
            )
        try:
            matrix = np.asarray(vectors, dtype=float)
        except ValueError as exc:
            raise ProviderUnavailable(
                f"embedding service at {self.url} returned ragged vectors"
            ) from exc
        if matrix.ndim != 2:
            raise ProviderUnavailable(
                f"embedding service at {self.url} returned vectors of uneven length"
            )
        return matrix


class PrecomputedVectors:
    """Vectors computed offline and stored per (concept_id, level).

    File format: CSV with header ``concept_id,level,v0,v1,...``; the level
    column accepts either the numeric index or the column name.
    """

    def __init__(self, vectors: dict[Key, np.ndarray], source: str = "memory"):
        if not vectors:
            raise ValueError("no precomputed vectors given")
        dims = {v.shape[0] for v in vectors.values()}
        if len(dims) != 1:
            raise ValueError(f"mixed vector dimensions {sorted(dims)}")
        self.dim = dims.pop()
        self._vectors = vectors
        self.provider_id = f"precomputed:{source}"

    @classmethod
    def load(cls, path: str) -> "PrecomputedVectors":
        vectors: dict[Key, np.ndarray] = {}
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if not header or header[:2] != ["concept_id", "level"]:
                raise ValueError(
                    f"{path}: expected header starting 'concept_id,level', got {header}"
                )
            for row in reader:
                if not row:
                    continue
                key = (int(row[0]), AbstractionLevel.coerce(_maybe_int(row[1])))
                vectors[key] = np.asarray([float(x) for x in row[2:]])
        return cls(vectors, source=path)

    def embed_batch(
        self, texts: Sequence[str], keys: Sequence[Key] | None = None
    ) -> np.ndarray:
        if keys is None:
            raise MissingPrecomputedVector(
                "precomputed vectors are keyed by (concept_id, level); no keys given"
            )
        rows = []
        for key in keys:
            key = (int(key[0]), AbstractionLevel.coerce(key[1]))
            if key not in self._vectors:
                raise MissingPrecomputedVector(
                    f"no stored vector for concept {key[0]} at level {key[1].column}"
                )
            rows.append(self._vectors[key])
        return np.vstack(rows) if rows else np.zeros((0, self.dim))


def _maybe_int(value: str):
    try:
        return int(value)
    except ValueError:
        return value


def make_provider(name: str, params: dict | None = None) -> EmbeddingProvider:
    """Instantiate a provider from its config name and parameters."""
    params = dict(params or {})
    if name == "hash":
        return HashedBowEncoder(
            dim=int(params.get("dim", 384)), seed=int(params.get("seed", 0))
        )
    if name == "service":
        missing = [k for k in ("url", "model") if not params.get(k)]
        if missing:
            raise ValueError(f"service provider needs {', '.join(missing)}")
        return ServiceEmbeddingClient(
            url=params["url"],
            model=params["model"],
            token=params.get("token"),
            timeout=float(params.get("timeout", 30.0)),
        )
    if name == "precomputed":
        if not params.get("path"):
            raise ValueError("precomputed provider needs a path")
        return PrecomputedVectors.load(params["path"])
    raise ValueError(f"unknown provider {name!r}; expected hash, service or precomputed")
