"""Sliding-window RBF boost on top of the positional relevance model.

Around each position x, the relevance values of the neighboring positions
(up to ``kf`` on each side) form a small sample with mean mu and population
standard deviation sigma.  Neighbors inside the one-sigma band (scaled by a
configurable multiplier) count as the semantic neighborhood of x; each kept
neighbor adds its value weighted by a Gaussian density centered at mu.  The
boosted relevance is the base value plus that sum, clamped to 1 by default
so downstream scoring keeps its [0, 1] range.

Neighbor values come in two flavors:

- ``focal`` (default): a neighbor position's relevance with respect to the
  focal term's own occurrences, i.e. how deep inside the term's influence
  zone the neighbor sits.
- ``self``: the neighbor term's relevance at its own position.  Since every
  kernel peaks at 1 on an occurrence, these are identically 1 and the window
  statistics collapse; this literal variant is kept for comparison only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .posindex import PositionalDocument
from .proxcore import InfluenceKernel, local_relevance, term_profile
from .querylang import And, Near, Or, QueryNode, Term

__all__ = [
    "NEIGHBOR_MODES",
    "RbfConfig",
    "WindowStats",
    "window_neighbor_relevances",
    "window_stats",
    "gaussian_rbf",
    "semantic_neighbors",
    "rbf_local_relevance",
    "rbf_term_profile",
    "rbf_eval_query_at",
    "rbf_query_profile",
    "rbf_score",
    "rbf_similarity",
]

NEIGHBOR_MODES = ("focal", "self")

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class RbfConfig:
    """Window size, base kernel and thresholding for the RBF boost."""

    kernel: InfluenceKernel
    kf: int = 5
    threshold_scale: float = 1.0
    clamp_output: bool = True
    neighbor_mode: str = "focal"

    def __post_init__(self):
        if self.kf < 1:
            raise ValueError(f"window size kf must be >= 1, got {self.kf}")
        if self.threshold_scale < 0.0:
            raise ValueError(f"threshold_scale must be >= 0, got {self.threshold_scale}")
        if self.neighbor_mode not in NEIGHBOR_MODES:
            raise ValueError(
                f"unknown neighbor_mode {self.neighbor_mode!r}, expected one of {NEIGHBOR_MODES}"
            )

    def with_kernel(self, kernel: InfluenceKernel) -> "RbfConfig":
        return replace(self, kernel=kernel)


@dataclass(frozen=True)
class WindowStats:
    """Mean and population standard deviation of a window's relevance values."""

    mu: float = 0.0
    sigma: float = 0.0
    count: int = 0


def window_stats(values) -> WindowStats:
    """Stats of a value list; empty windows give (0, 0, 0), singletons sigma 0."""
    vs = list(values)
    n = len(vs)
    if n == 0:
        return WindowStats()
    mu = sum(vs) / n
    sigma = math.sqrt(sum((v - mu) ** 2 for v in vs) / n)
    return WindowStats(mu=mu, sigma=sigma, count=n)


def window_neighbor_relevances(
    doc: PositionalDocument,
    x: int,
    cfg: RbfConfig,
    term: str | None = None,
) -> list[tuple[int, float]]:
    """(position, relevance) for every window neighbor of x, boundaries clipped.

    The window spans [x-kf, x+kf] intersected with the document, excluding x
    itself.  ``term`` names the focal term and is required in focal mode.
    """
    n = doc.n
    if not 0 <= x < n:
        raise ValueError(f"position {x} outside document of length {n}")
    if cfg.neighbor_mode == "focal" and term is None:
        raise ValueError("focal neighbor mode needs the focal term")
    lo = max(0, x - cfg.kf)
    hi = min(n - 1, x + cfg.kf)
    out: list[tuple[int, float]] = []
    for i in range(lo, hi + 1):
        if i == x:
            continue
        if cfg.neighbor_mode == "focal":
            value = local_relevance(doc, term, i, cfg.kernel)
        else:
            value = local_relevance(doc, doc.stems[i], i, cfg.kernel)
        out.append((i, value))
    return out


def gaussian_rbf(value: float, stats: WindowStats) -> float:
    """Gaussian density of ``value`` under the window's (mu, sigma).

    A degenerate window (sigma 0) acts as a point mass: 1 at mu, else 0.
    """
    if stats.sigma == 0.0:
        return 1.0 if value == stats.mu else 0.0
    z = (value - stats.mu) / stats.sigma
    return math.exp(-0.5 * z * z) / (stats.sigma * _SQRT_TWO_PI)


def semantic_neighbors(
    neighbors: list[tuple[int, float]],
    stats: WindowStats,
    scale: float = 1.0,
) -> list[tuple[int, float]]:
    """Neighbors whose value lies within ``scale`` standard deviations of the mean.

    With sigma 0 the band is the single point mu, so a constant window keeps
    everything.
    """
    band = scale * stats.sigma
    return [(i, v) for i, v in neighbors if abs(v - stats.mu) <= band]


def rbf_local_relevance(doc: PositionalDocument, term: str, x: int, cfg: RbfConfig) -> float:
    """Window-boosted relevance of ``term`` at position x.

    base + sum over the semantic neighborhood of value * gaussian_rbf(value),
    clamped to 1 when the config asks for it.
    """
    base = local_relevance(doc, term, x, cfg.kernel)
    neighbors = window_neighbor_relevances(doc, x, cfg, term)
    stats = window_stats(v for _, v in neighbors)
    boost = 0.0
    for _, value in semantic_neighbors(neighbors, stats, cfg.threshold_scale):
        boost += value * gaussian_rbf(value, stats)
    raw = base + boost
    if cfg.clamp_output:
        return min(raw, 1.0)
    return raw


def _neighbor_values(doc: PositionalDocument, term: str, cfg: RbfConfig, base: np.ndarray) -> list[float]:
    if cfg.neighbor_mode == "focal":
        return base.tolist()
    return [local_relevance(doc, doc.stems[i], i, cfg.kernel) for i in range(doc.n)]


def rbf_term_profile(doc: PositionalDocument, term: str, cfg: RbfConfig) -> np.ndarray:
    """rbf_local_relevance of ``term`` at every position, as one array."""
    base = term_profile(doc, term, cfg.kernel)
    n = doc.n
    if n == 0:
        return base
    values = _neighbor_values(doc, term, cfg, base)
    kf = cfg.kf
    scale = cfg.threshold_scale
    clamp = cfg.clamp_output
    out = np.empty(n, dtype=np.float64)
    for x in range(n):
        lo = max(0, x - kf)
        hi = min(n, x + kf + 1)
        window = values[lo:x] + values[x + 1 : hi]
        stats = window_stats(window)
        band = scale * stats.sigma
        boost = 0.0
        for v in window:
            if abs(v - stats.mu) <= band:
                boost += v * gaussian_rbf(v, stats)
        raw = base[x] + boost
        out[x] = min(raw, 1.0) if clamp else raw
    return out


def rbf_eval_query_at(doc: PositionalDocument, node: QueryNode, x: int, cfg: RbfConfig) -> float:
    """Positional query relevance with every term boosted by its window."""
    if isinstance(node, Term):
        return rbf_local_relevance(doc, node.stem, x, cfg)
    if isinstance(node, And):
        return min(rbf_eval_query_at(doc, node.left, x, cfg), rbf_eval_query_at(doc, node.right, x, cfg))
    if isinstance(node, Or):
        return max(rbf_eval_query_at(doc, node.left, x, cfg), rbf_eval_query_at(doc, node.right, x, cfg))
    if isinstance(node, Near):
        narrowed = cfg.with_kernel(cfg.kernel.with_width(node.k))
        return min(
            rbf_local_relevance(doc, node.left.stem, x, narrowed),
            rbf_local_relevance(doc, node.right.stem, x, narrowed),
        )
    raise TypeError(f"not a query node: {node!r}")


def rbf_query_profile(doc: PositionalDocument, node: QueryNode, cfg: RbfConfig) -> np.ndarray:
    """rbf_eval_query_at over all positions, as one array."""
    if isinstance(node, Term):
        return rbf_term_profile(doc, node.stem, cfg)
    if isinstance(node, And):
        return np.minimum(rbf_query_profile(doc, node.left, cfg), rbf_query_profile(doc, node.right, cfg))
    if isinstance(node, Or):
        return np.maximum(rbf_query_profile(doc, node.left, cfg), rbf_query_profile(doc, node.right, cfg))
    if isinstance(node, Near):
        narrowed = cfg.with_kernel(cfg.kernel.with_width(node.k))
        return np.minimum(
            rbf_term_profile(doc, node.left.stem, narrowed),
            rbf_term_profile(doc, node.right.stem, narrowed),
        )
    raise TypeError(f"not a query node: {node!r}")


def rbf_score(doc: PositionalDocument, node: QueryNode, cfg: RbfConfig) -> float:
    """Positional sum of the boosted query relevance."""
    return float(rbf_query_profile(doc, node, cfg).sum())


def rbf_similarity(doc: PositionalDocument, node: QueryNode, cfg: RbfConfig) -> float:
    """Length-normalized boosted score; stays in [0, 1] while clamping is on."""
    n = doc.n
    if n == 0:
        return 0.0
    return rbf_score(doc, node, cfg) / n
