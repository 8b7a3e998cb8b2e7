"""Point distances and cluster linkage distances."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .exceptions import BeliefHCError, DimensionMismatch, MissingSummaries

__all__ = [
    "Linkage",
    "ClusterSummary",
    "as_features",
    "euclidean_matrix",
    "linkage_distance",
    "merge_summaries",
]


class Linkage(str, Enum):
    SINGLE = "single"
    COMPLETE = "complete"
    AVERAGE = "average"
    WARD = "ward"

    @classmethod
    def parse(cls, value) -> "Linkage":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise BeliefHCError(
                f"unknown linkage {value!r}; expected one of {[k.value for k in cls]}"
            ) from None


@dataclass(frozen=True)
class ClusterSummary:
    """Center (feature mean) and size of a cluster, needed by Ward."""

    center: np.ndarray
    size: int


def as_features(data) -> np.ndarray:
    """Feature matrix of a Dataset, or of anything array-like, as 2-D floats."""
    feats = getattr(data, "features", data)
    if isinstance(feats, np.ndarray):
        x = feats
    else:
        rows = [list(r) if np.ndim(r) else [r] for r in feats]
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DimensionMismatch(f"rows have differing widths {sorted(widths)}")
        x = np.asarray(rows, dtype=float)
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or x.shape[1] < 1:
        raise DimensionMismatch(f"expected an n x d matrix, got shape {x.shape}")
    return x


def euclidean_matrix(data) -> np.ndarray:
    """Symmetric matrix of Euclidean distances with an exact zero diagonal.

    The result is read-only.
    """
    x = as_features(data)
    diff = x[:, None, :] - x[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)
    d.setflags(write=False)
    return d


def linkage_distance(
    link,
    members_a: Sequence[int],
    members_b: Sequence[int],
    base: np.ndarray,
    summaries: tuple[ClusterSummary, ClusterSummary] | None = None,
) -> float:
    """Distance between two disjoint clusters given as object index lists.

    Ward uses ``summaries`` (one per cluster) and returns the increase in
    within-cluster inertia, ``na*nb/(na+nb) * |ca - cb|**2``.
    """
    link = Linkage.parse(link)
    if not len(members_a) or not len(members_b):
        raise BeliefHCError("clusters must be nonempty")
    if link is Linkage.WARD:
        if summaries is None:
            raise MissingSummaries("ward linkage needs cluster centers and sizes")
        sa, sb = summaries
        diff = np.asarray(sa.center, dtype=float) - np.asarray(sb.center, dtype=float)
        return float(sa.size * sb.size / (sa.size + sb.size) * np.dot(diff, diff))
    block = base[np.ix_(list(members_a), list(members_b))]
    if link is Linkage.SINGLE:
        return float(block.min())
    if link is Linkage.COMPLETE:
        return float(block.max())
    return float(block.mean())


def merge_summaries(a: ClusterSummary, b: ClusterSummary) -> ClusterSummary:
    n = a.size + b.size
    center = (a.size * np.asarray(a.center) + b.size * np.asarray(b.center)) / n
    return ClusterSummary(center, n)
