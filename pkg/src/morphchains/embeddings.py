"""Word-vector loading and the cosine-similarity signal.

Vectors come from the plain-text format emitted by common embedding
trainers: an optional ``vocab_count dimension`` header line followed by
``word v1 v2 ... vd`` lines.  Strings without a vector (and zero vectors,
for which cosine is undefined) fall back to a fixed out-of-vocabulary
cosine, -0.5 by default.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError

OOV_COSINE = -0.5


@dataclass
class EmbeddingTable:
    dimension: int
    vectors: dict[str, np.ndarray] = field(default_factory=dict)
    oov_cosine: float = OOV_COSINE

    def __contains__(self, word: str) -> bool:
        return word in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)


def _is_header(tokens: list[str]) -> bool:
    if len(tokens) != 2:
        return False
    try:
        int(tokens[0]), int(tokens[1])
    except ValueError:
        return False
    return True


def load_vectors(path: str, oov_cosine: float = OOV_COSINE) -> EmbeddingTable:
    """Parse a text embedding file; dimension is inferred when headerless."""
    vectors: dict[str, np.ndarray] = {}
    dimension = None
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            tokens = raw.split()
            if not tokens:
                continue
            if lineno == 1 and _is_header(tokens):
                dimension = int(tokens[1])
                if dimension < 1:
                    raise ParseError(path, lineno, f"dimension must be positive, got {dimension}")
                continue
            word, components = tokens[0], tokens[1:]
            if dimension is None:
                dimension = len(components)
                if dimension < 1:
                    raise ParseError(path, lineno, "vector line has no components")
            if len(components) != dimension:
                raise ParseError(
                    path, lineno,
                    f"expected {dimension} components, got {len(components)}",
                )
            try:
                vec = np.array([float(c) for c in components], dtype=np.float64)
            except ValueError:
                raise ParseError(path, lineno, "non-numeric vector component") from None
            vectors[word] = vec
    if dimension is None:
        raise ParseError(path, 1, "no vectors found")
    return EmbeddingTable(dimension=dimension, vectors=vectors, oov_cosine=oov_cosine)


def cosine_similarity(table: EmbeddingTable, a: str, b: str) -> float:
    """Cosine between the vectors of two words; total function.

    Returns ``table.oov_cosine`` when either word has no vector or a
    zero-norm vector.
    """
    va = table.vectors.get(a)
    vb = table.vectors.get(b)
    if va is None or vb is None:
        return table.oov_cosine
    norm_a = np.linalg.norm(va)
    norm_b = np.linalg.norm(vb)
    if norm_a == 0.0 or norm_b == 0.0:
        return table.oov_cosine
    return float(np.dot(va, vb) / (norm_a * norm_b))
