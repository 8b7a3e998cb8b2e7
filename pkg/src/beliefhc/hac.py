"""Classical agglomerative clustering and the shared tree/partition types."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .dissimilarity import (
    ClusterSummary,
    Linkage,
    as_features,
    euclidean_matrix,
    linkage_distance,
    merge_summaries,
)
from .exceptions import BeliefHCError, InvalidK, TooFewObjects

__all__ = [
    "Partition",
    "Merge",
    "Dendrogram",
    "hac_cluster",
    "cut",
    "cophenetic",
    "pick_pair",
]

INDEX_KINDS = ("distance", "betp_raw", "betp_monotone")


@dataclass(frozen=True)
class Partition:
    """Hard assignment of objects ``0..n-1`` to disjoint nonempty clusters."""

    n: int
    clusters: Mapping[int, tuple[int, ...]]

    def __post_init__(self):
        clusters = {int(k): tuple(sorted(int(x) for x in v)) for k, v in self.clusters.items()}
        seen = [x for members in clusters.values() for x in members]
        if any(not members for members in clusters.values()):
            raise BeliefHCError("clusters must be nonempty")
        if sorted(seen) != list(range(self.n)):
            raise BeliefHCError("clusters do not partition 0..n-1")
        object.__setattr__(self, "clusters", dict(sorted(clusters.items())))

    @classmethod
    def from_labels(cls, labels: Iterable[Hashable]) -> "Partition":
        """Group objects by label; ids follow the order of first appearance."""
        ids: dict[Hashable, int] = {}
        groups: dict[int, list[int]] = {}
        n = 0
        for i, lab in enumerate(labels):
            cid = ids.setdefault(lab, len(ids))
            groups.setdefault(cid, []).append(i)
            n = i + 1
        return cls(n, groups)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(n, {i: (i,) for i in range(n)})

    def __len__(self) -> int:
        return len(self.clusters)

    @property
    def cluster_of(self) -> np.ndarray:
        out = np.empty(self.n, dtype=int)
        for cid, members in self.clusters.items():
            out[list(members)] = cid
        return out

    def canonical(self) -> frozenset:
        """Label-free view, for comparing partitions."""
        return frozenset(frozenset(m) for m in self.clusters.values())

    def relabeled(self) -> "Partition":
        """Same grouping with ids 0..K-1 ordered by smallest member."""
        groups = sorted(self.clusters.values(), key=lambda m: m[0])
        return Partition(self.n, dict(enumerate(groups)))


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    index: float
    node: int


@dataclass(frozen=True)
class Dendrogram:
    """Ordered merge trace.

    Leaves are numbered ``0..n_leaves-1`` and internal nodes ``n_leaves..``
    in merge order. ``leaves`` lists the objects under each leaf when the
    tree was grown from a pre-clustering; ``None`` means one object per leaf.
    """

    n_leaves: int
    merges: tuple[Merge, ...]
    index_kind: str = "distance"
    leaves: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "merges", tuple(self.merges))
        if self.index_kind not in INDEX_KINDS:
            raise BeliefHCError(f"unknown index kind {self.index_kind!r}")
        if len(self.merges) > self.n_leaves - 1:
            raise BeliefHCError("too many merges")
        used: set[int] = set()
        for step, m in enumerate(self.merges):
            if m.node != self.n_leaves + step:
                raise BeliefHCError(f"merge {step} creates node {m.node}, expected {self.n_leaves + step}")
            for child in (m.left, m.right):
                if child in used or not 0 <= child < m.node:
                    raise BeliefHCError(f"node {child} cannot be merged at step {step}")
                used.add(child)
        if self.leaves is not None:
            object.__setattr__(self, "leaves", tuple(tuple(int(x) for x in g) for g in self.leaves))
            if len(self.leaves) != self.n_leaves:
                raise BeliefHCError("leaves must list one member group per leaf")

    @property
    def heights(self) -> np.ndarray:
        return np.array([m.index for m in self.merges], dtype=float)

    @property
    def n_objects(self) -> int:
        if self.leaves is None:
            return self.n_leaves
        return sum(len(g) for g in self.leaves)

    def leaf_members(self, leaf: int) -> tuple[int, ...]:
        return (leaf,) if self.leaves is None else self.leaves[leaf]

    def node_leaves(self) -> dict[int, tuple[int, ...]]:
        """Leaves under every node, leaves first, left subtree before right."""
        out = {i: (i,) for i in range(self.n_leaves)}
        for m in self.merges:
            out[m.node] = out[m.left] + out[m.right]
        return out


def pick_pair(scores: Mapping[tuple[int, int], float], maximize: bool = False) -> tuple[int, int]:
    """Best-scoring pair; near-equal scores go to the lexicographically smallest pair."""
    if not scores:
        raise BeliefHCError("no candidate pairs")
    values = np.fromiter(scores.values(), dtype=float, count=len(scores))
    best = values.max() if maximize else values.min()
    tol = 1e-12 * max(1.0, abs(best))
    keys = list(scores)
    if maximize:
        tied = [k for k, v in zip(keys, values) if v >= best - tol]
    else:
        tied = [k for k, v in zip(keys, values) if v <= best + tol]
    return min(tied)


class ClusterState:
    """Active clusters with incrementally maintained linkage distances."""

    def __init__(self, groups: Sequence[Sequence[int]], base: np.ndarray, features: np.ndarray, link):
        self.link = Linkage.parse(link)
        self.base = base
        self.features = features
        self.members: dict[int, tuple[int, ...]] = {i: tuple(g) for i, g in enumerate(groups)}
        self.summaries: dict[int, ClusterSummary] = {
            i: ClusterSummary(features[list(g)].mean(axis=0), len(g)) for i, g in self.members.items()
        }
        self.next_id = len(self.members)
        self.dist: dict[tuple[int, int], float] = {}
        ids = sorted(self.members)
        for p, a in enumerate(ids):
            for b in ids[p + 1:]:
                self.dist[a, b] = self._linkage(a, b)

    def _linkage(self, a: int, b: int) -> float:
        return linkage_distance(
            self.link, self.members[a], self.members[b], self.base,
            (self.summaries[a], self.summaries[b]),
        )

    @property
    def ids(self) -> list[int]:
        return sorted(self.members)

    def distance(self, a: int, b: int) -> float:
        if a == b:
            return 0.0
        return self.dist[min(a, b), max(a, b)]

    def merge(self, a: int, b: int) -> int:
        new = self.next_id
        self.next_id += 1
        self.members[new] = self.members.pop(a) + self.members.pop(b)
        self.summaries[new] = merge_summaries(self.summaries.pop(a), self.summaries.pop(b))
        self.dist = {k: v for k, v in self.dist.items() if a not in k and b not in k}
        for other in self.members:
            if other != new:
                self.dist[other, new] = self._linkage(other, new)
        return new


def _initial_groups(n: int, initial: Partition | None) -> tuple[list[tuple[int, ...]], bool]:
    if initial is None:
        return [(i,) for i in range(n)], True
    if initial.n != n:
        raise BeliefHCError(f"initial partition covers {initial.n} objects, data has {n}")
    groups = list(initial.clusters.values())
    return groups, all(len(g) == 1 for g in groups) and [g[0] for g in groups] == list(range(n))


def hac_cluster(data, link="single", initial: Partition | None = None) -> Dendrogram:
    """Agglomerate the closest pair of clusters until one remains.

    With ``initial`` the leaves are the given clusters (in id order) instead
    of single objects. Heights are the linkage values at each merge.
    """
    x = as_features(data)
    n = x.shape[0]
    if n < 2:
        raise TooFewObjects("need at least two objects")
    groups, trivial = _initial_groups(n, initial)
    if len(groups) < 2:
        raise TooFewObjects("need at least two initial clusters")
    state = ClusterState(groups, euclidean_matrix(x), x, link)
    merges = []
    while len(state.members) > 1:
        a, b = pick_pair(state.dist)
        h = state.dist[a, b]
        node = state.merge(a, b)
        merges.append(Merge(a, b, h, node))
    return Dendrogram(len(groups), tuple(merges), "distance", None if trivial else tuple(groups))


def cut(dendrogram: Dendrogram, k: int) -> Partition:
    """Partition of the objects present when ``k`` clusters remained."""
    L = dendrogram.n_leaves
    lowest = L - len(dendrogram.merges)
    if not isinstance(k, (int, np.integer)) or not max(1, lowest) <= k <= L:
        raise InvalidK(f"k={k!r} outside [{max(1, lowest)}, {L}]")
    groups: dict[int, tuple[int, ...]] = {i: dendrogram.leaf_members(i) for i in range(L)}
    for m in dendrogram.merges[: L - k]:
        groups[m.node] = groups.pop(m.left) + groups.pop(m.right)
    return Partition(dendrogram.n_objects, dict(enumerate(groups.values()))).relabeled()


def cophenetic(dendrogram: Dendrogram) -> np.ndarray:
    """Object-by-object matrix of the index at which two objects first share a cluster."""
    n = dendrogram.n_objects
    out = np.zeros((n, n))
    objs = {i: list(dendrogram.leaf_members(i)) for i in range(dendrogram.n_leaves)}
    for m in dendrogram.merges:
        left, right = objs.pop(m.left), objs.pop(m.right)
        out[np.ix_(left, right)] = m.index
        out[np.ix_(right, left)] = m.index
        objs[m.node] = left + right
    return out
