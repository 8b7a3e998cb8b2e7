"""Pair-counting agreement between a clustering and a reference partition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import SizeMismatch
from .hac import Partition

__all__ = ["PairCounts", "pair_counts", "metrics", "evaluate"]


@dataclass(frozen=True)
class PairCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def _labels(p) -> np.ndarray:
    if isinstance(p, Partition):
        return p.cluster_of
    _, inv = np.unique(np.asarray(p), return_inverse=True)
    return inv


def _pairs(counts: np.ndarray) -> int:
    counts = counts.astype(np.int64)
    return int((counts * (counts - 1) // 2).sum())


def pair_counts(predicted, truth) -> PairCounts:
    """Count object pairs by (same predicted cluster, same true cluster).

    Either argument may be a :class:`Partition` or a label sequence.
    """
    a, b = _labels(predicted), _labels(truth)
    if a.shape != b.shape:
        raise SizeMismatch(f"{a.size} predicted labels vs {b.size} true labels")
    n = a.size
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max(initial=-1) + 1, bi.max(initial=-1) + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)
    tp = _pairs(table)
    same_pred = _pairs(table.sum(axis=1))
    same_true = _pairs(table.sum(axis=0))
    total = n * (n - 1) // 2
    fp = same_pred - tp
    fn = same_true - tp
    return PairCounts(tp, fp, fn, total - tp - fp - fn)


def metrics(counts: PairCounts) -> tuple[float, float, float]:
    """(precision, recall, Rand index); empty denominators count as perfect."""
    precision = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp else 1.0
    recall = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn else 1.0
    rand = (counts.tp + counts.tn) / counts.total if counts.total else 1.0
    return precision, recall, rand


def evaluate(predicted, truth) -> tuple[float, float, float]:
    return metrics(pair_counts(predicted, truth))
