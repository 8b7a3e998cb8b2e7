"""Seeded Lloyd k-means used to shrink the data before hierarchical clustering."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dissimilarity import as_features
from .exceptions import BeliefHCError, TooFewObjects
from .hac import Partition

__all__ = ["KMeansConfig", "KMeansResult", "kmeans", "kmeans_fit"]


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    max_iters: int = 100
    tol: float = 1e-9
    seed: int = 42

    def __post_init__(self):
        if self.k < 1:
            raise BeliefHCError(f"k must be >= 1, got {self.k}")
        if self.max_iters < 1:
            raise BeliefHCError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.tol < 0:
            raise BeliefHCError(f"tol must be >= 0, got {self.tol}")


@dataclass(frozen=True)
class KMeansResult:
    partition: Partition
    centers: np.ndarray
    objectives: tuple[float, ...]  # within-cluster SS after each assignment
    n_iter: int


def _assign(x, centers):
    d2 = ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    # argmin takes the lowest center index on ties
    labels = d2.argmin(axis=1)
    return labels, d2[np.arange(len(x)), labels]


def _repair_empty(x, centers, labels, d2):
    k = len(centers)
    for c in range(k):
        if np.any(labels == c):
            continue
        # steal the worst-fitted point from a cluster that can spare it
        counts = np.bincount(labels, minlength=k)
        order = np.argsort(-d2, kind="stable")
        far = next(i for i in order if counts[labels[i]] > 1)
        labels[far] = c
        d2[far] = 0.0
        centers[c] = x[far]
    return labels, d2


def kmeans_fit(data, cfg: KMeansConfig) -> KMeansResult:
    x = as_features(data)
    n = x.shape[0]
    if n < cfg.k:
        raise TooFewObjects(f"cannot form {cfg.k} clusters from {n} objects")
    rng = np.random.default_rng(cfg.seed)
    centers = x[rng.choice(n, size=cfg.k, replace=False)].copy()
    objectives = []
    it = 0
    for it in range(1, cfg.max_iters + 1):
        labels, d2 = _assign(x, centers)
        labels, d2 = _repair_empty(x, centers, labels, d2)
        objectives.append(float(((x - centers[labels]) ** 2).sum()))
        new = np.array([x[labels == c].mean(axis=0) for c in range(cfg.k)])
        shift = float(np.sqrt(((new - centers) ** 2).sum(axis=1)).max())
        centers = new
        if shift <= cfg.tol:
            break
    labels, _ = _assign(x, centers)
    labels, _ = _repair_empty(x, centers, labels, _)
    final = float(((x - centers[labels]) ** 2).sum())
    if final < objectives[-1]:
        objectives.append(final)
    groups = {c: tuple(np.flatnonzero(labels == c)) for c in range(cfg.k)}
    return KMeansResult(Partition(n, groups).relabeled(), centers, tuple(objectives), it)


def kmeans(data, cfg: KMeansConfig) -> Partition:
    """Partition into exactly ``cfg.k`` nonempty clusters."""
    return kmeans_fit(data, cfg).partition
