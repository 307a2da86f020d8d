"""Fuzzy positional proximity: influence kernels, local relevance, NEAR, scoring.

An occurrence of a term spreads influence to nearby positions through a
bounded symmetric kernel.  The local relevance of a term at position x is
the strongest influence any of its occurrences exerts there; queries combine
those per-position values with min (AND), max (OR) and a width-narrowed min
(NEAR).  A document's score is the positional sum over 0..N-1, and its
similarity is that sum divided by N, which keeps it in [0, 1].
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .posindex import PositionalDocument, positions_of
from .querylang import And, Near, Or, QueryNode, Term

__all__ = [
    "KERNEL_SHAPES",
    "InfluenceKernel",
    "DocQueryScore",
    "influence",
    "local_relevance",
    "term_profile",
    "near_doc_relevance",
    "near_boolean",
    "eval_query_at",
    "query_profile",
    "score",
    "similarity",
    "score_document",
]

KERNEL_SHAPES = ("triangular", "rectangular", "gaussian", "hanning")


@dataclass(frozen=True)
class InfluenceKernel:
    """Symmetric influence function with bounded support (zero for |x| >= k).

    All shapes peak at 1 for offset 0 and decay monotonically with distance;
    the gaussian uses sigma = k/3 and is truncated to keep the support bounded.
    """

    shape: str = "triangular"
    k: int = 5

    def __post_init__(self):
        if self.shape not in KERNEL_SHAPES:
            raise ValueError(f"unknown kernel shape {self.shape!r}, expected one of {KERNEL_SHAPES}")
        if self.k < 1:
            raise ValueError(f"kernel width must be >= 1, got {self.k}")

    def with_width(self, k: int) -> "InfluenceKernel":
        return InfluenceKernel(self.shape, k)

    def at(self, offset) -> float:
        """Kernel value at one offset.

        Scalar math is the single source of truth for kernel values: the
        semantic-neighborhood filter downstream compares values that can sit
        exactly on its band boundary, so every code path must produce
        bit-identical numbers.
        """
        d = abs(float(offset))
        k = float(self.k)
        if self.shape == "triangular":
            return max((k - d) / k, 0.0)
        if d >= k:
            return 0.0
        if self.shape == "rectangular":
            return 1.0
        if self.shape == "hanning":
            return 0.5 * (1.0 + math.cos(math.pi * d / k))
        sigma = k / 3.0
        return math.exp(-(d * d) / (2.0 * sigma * sigma))

    def profile(self, offsets) -> np.ndarray:
        """Kernel values at the given offsets, as one float64 array.

        Bit-identical to ``at`` per element (same expressions, scalar math).
        """
        distances = np.abs(np.asarray(offsets, dtype=np.float64)).tolist()
        k = float(self.k)
        if self.shape == "triangular":
            values = [max((k - d) / k, 0.0) for d in distances]
        elif self.shape == "rectangular":
            values = [1.0 if d < k else 0.0 for d in distances]
        elif self.shape == "hanning":
            values = [
                0.5 * (1.0 + math.cos(math.pi * d / k)) if d < k else 0.0 for d in distances
            ]
        else:
            sigma = k / 3.0
            denominator = 2.0 * sigma * sigma
            values = [math.exp(-(d * d) / denominator) if d < k else 0.0 for d in distances]
        return np.array(values, dtype=np.float64)


def influence(kernel: InfluenceKernel, offset) -> float:
    """Influence of an occurrence on a position ``offset`` steps away."""
    return kernel.at(offset)


def _nearest_distance(positions: list[int], x: int) -> int | None:
    """Distance from x to the nearest of the sorted ``positions`` (None if empty)."""
    if not positions:
        return None
    i = bisect_left(positions, x)
    best = None
    if i < len(positions):
        best = positions[i] - x
    if i > 0:
        left = x - positions[i - 1]
        best = left if best is None else min(best, left)
    return best


def local_relevance(doc: PositionalDocument, term: str, x: int, kernel: InfluenceKernel) -> float:
    """Strongest influence any occurrence of ``term`` exerts at position x.

    Equals the kernel value at the nearest occurrence because all shapes are
    non-increasing in distance.  x may lie outside the document; absent terms
    give 0 everywhere.
    """
    distance = _nearest_distance(positions_of(doc, term), x)
    return 0.0 if distance is None else kernel.at(distance)


def term_profile(doc: PositionalDocument, term: str, kernel: InfluenceKernel) -> np.ndarray:
    """local_relevance of ``term`` at every in-document position, as one array."""
    n = doc.n
    occurrences = positions_of(doc, term)
    if n == 0 or not occurrences:
        return np.zeros(n, dtype=np.float64)
    occ = np.asarray(occurrences, dtype=np.int64)
    xs = np.arange(n, dtype=np.int64)
    right = np.searchsorted(occ, xs)
    left = np.clip(right - 1, 0, len(occ) - 1)
    right = np.clip(right, 0, len(occ) - 1)
    distance = np.minimum(np.abs(xs - occ[left]), np.abs(xs - occ[right]))
    return kernel.profile(distance)


def _min_gap(doc: PositionalDocument, term_a: str, term_b: str) -> int | None:
    """Smallest |i - j| over occurrence pairs of the two terms (None if either is absent)."""
    pa = positions_of(doc, term_a)
    pb = positions_of(doc, term_b)
    if not pa or not pb:
        return None
    if len(pa) > len(pb):
        pa, pb = pb, pa
    best: int | None = None
    for i in pa:
        d = _nearest_distance(pb, i)
        if best is None or d < best:
            best = d
    return best


def near_doc_relevance(doc: PositionalDocument, term_a: str, term_b: str, k: int) -> float:
    """Document-level fuzzy NEAR: triangular falloff of the closest occurrence pair.

    Always uses the triangular form regardless of any scoring kernel.  For
    distinct terms the two occurrences cannot coincide, so the value tops
    out at (k-1)/k.
    """
    if k < 1:
        raise ValueError(f"NEAR width must be >= 1, got {k}")
    gap = _min_gap(doc, term_a, term_b)
    if gap is None:
        return 0.0
    return max((k - gap) / k, 0.0)


def near_boolean(doc: PositionalDocument, term_a: str, term_b: str, k: int) -> bool:
    """Classic boolean NEAR: some occurrence pair lies strictly under k positions apart."""
    if k < 1:
        raise ValueError(f"NEAR width must be >= 1, got {k}")
    gap = _min_gap(doc, term_a, term_b)
    return gap is not None and gap < k


def eval_query_at(doc: PositionalDocument, node: QueryNode, x: int, kernel: InfluenceKernel) -> float:
    """Positional relevance of a query tree at position x.

    AND is min, OR is max; NEAR/k' is min over its two terms evaluated with
    the same kernel shape narrowed to width k'.
    """
    if isinstance(node, Term):
        return local_relevance(doc, node.stem, x, kernel)
    if isinstance(node, And):
        return min(eval_query_at(doc, node.left, x, kernel), eval_query_at(doc, node.right, x, kernel))
    if isinstance(node, Or):
        return max(eval_query_at(doc, node.left, x, kernel), eval_query_at(doc, node.right, x, kernel))
    if isinstance(node, Near):
        narrowed = kernel.with_width(node.k)
        return min(
            local_relevance(doc, node.left.stem, x, narrowed),
            local_relevance(doc, node.right.stem, x, narrowed),
        )
    raise TypeError(f"not a query node: {node!r}")


def query_profile(doc: PositionalDocument, node: QueryNode, kernel: InfluenceKernel) -> np.ndarray:
    """eval_query_at over all in-document positions, as one array."""
    if isinstance(node, Term):
        return term_profile(doc, node.stem, kernel)
    if isinstance(node, And):
        return np.minimum(query_profile(doc, node.left, kernel), query_profile(doc, node.right, kernel))
    if isinstance(node, Or):
        return np.maximum(query_profile(doc, node.left, kernel), query_profile(doc, node.right, kernel))
    if isinstance(node, Near):
        narrowed = kernel.with_width(node.k)
        return np.minimum(
            term_profile(doc, node.left.stem, narrowed),
            term_profile(doc, node.right.stem, narrowed),
        )
    raise TypeError(f"not a query node: {node!r}")


def score(doc: PositionalDocument, node: QueryNode, kernel: InfluenceKernel) -> float:
    """Sum of the query's positional relevance over positions 0..N-1."""
    return float(query_profile(doc, node, kernel).sum())


def similarity(doc: PositionalDocument, node: QueryNode, kernel: InfluenceKernel) -> float:
    """Length-normalized score in [0, 1]; empty documents score 0."""
    n = doc.n
    if n == 0:
        return 0.0
    return score(doc, node, kernel) / n


@dataclass(frozen=True)
class DocQueryScore:
    """A document's raw positional score and its [0, 1] similarity for one query."""

    doc_id: str
    raw_score: float
    similarity: float


def score_document(doc: PositionalDocument, node: QueryNode, kernel: InfluenceKernel) -> DocQueryScore:
    """Score and similarity in one pass (similarity = raw / N, 0 for empty docs)."""
    raw = score(doc, node, kernel)
    return DocQueryScore(
        doc_id=doc.doc_id,
        raw_score=raw,
        similarity=raw / doc.n if doc.n else 0.0,
    )
