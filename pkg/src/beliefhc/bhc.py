"""Belief hierarchical clustering.

Every item (object or cluster) gets a mass function over the *other*
items: the closer another item is, the more mass goes to it, and the rest
stays on the whole frame. The pair whose mutual pignistic probabilities
have the largest product is merged, and the sum of those two
probabilities indexes the merge in the dendrogram.

Two ways of building cluster-level masses are provided:

* variant ``"A"`` applies the object formula to a classical linkage
  distance between clusters;
* variant ``"B"`` lets every object of a cluster vote with a mass whose
  singleton masses are products over the members of each candidate
  cluster, then fuses the votes with Dempster's rule.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from . import belief
from .belief import Frame, MassFunction, dempster_combine, pignistic
from .dissimilarity import Linkage, as_features, euclidean_matrix
from .exceptions import BeliefHCError, SingleCluster, TooFewObjects, TotalConflict
from .hac import ClusterState, Dendrogram, Merge, Partition, _initial_groups, pick_pair

__all__ = [
    "MassParams",
    "MergeStep",
    "MergeTrace",
    "object_mass",
    "select_object_pair",
    "cluster_mass_variant_a",
    "cluster_mass_variant_b",
    "select_cluster_pair",
    "bhc_cluster",
]


@dataclass(frozen=True)
class MassParams:
    """Mass construction parameters.

    ``alpha`` caps the mass any single neighbour can receive; ``gamma``
    sets how fast it decays with squared distance. ``gamma="auto"`` uses
    the inverse median of the nonzero squared distances between the items
    being clustered, so the masses do not depend on the unit of the data.
    """

    alpha: float = 0.95
    gamma: float | str = "auto"

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise BeliefHCError(f"alpha must be in (0, 1], got {self.alpha!r}")
        if isinstance(self.gamma, str):
            if self.gamma != "auto":
                raise BeliefHCError(f"gamma must be positive or 'auto', got {self.gamma!r}")
        elif not self.gamma > 0.0 or not math.isfinite(self.gamma):
            raise BeliefHCError(f"gamma must be positive, got {self.gamma!r}")

    def resolve(self, sq_dists) -> "MassParams":
        """Copy with a numeric gamma, estimated from ``sq_dists`` if needed."""
        if not isinstance(self.gamma, str):
            return self
        return replace(self, gamma=auto_gamma(sq_dists))


def auto_gamma(sq_dists) -> float:
    v = np.asarray(sq_dists, dtype=float)
    if v.ndim == 2:
        v = v[np.triu_indices(v.shape[0], 1)]
    v = v[v > 0]
    if v.size == 0:
        return 1.0
    with np.errstate(over="ignore"):
        gamma = float(1.0 / np.median(v))
    # subnormal medians from near-duplicate points
    return gamma if math.isfinite(gamma) else sys.float_info.max


@dataclass(frozen=True)
class MergeStep:
    cluster_a: int
    cluster_b: int
    betp_a_of_b: float
    betp_b_of_a: float
    product: float
    raw_index: float
    monotone_index: float


@dataclass(frozen=True)
class MergeTrace:
    steps: tuple[MergeStep, ...]
    gamma: float = float("nan")

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    @property
    def raw_index(self) -> np.ndarray:
        return np.array([s.raw_index for s in self.steps])

    @property
    def monotone_index(self) -> np.ndarray:
        return np.array([s.monotone_index for s in self.steps])

    def pairs(self) -> list[tuple[int, int]]:
        return [(s.cluster_a, s.cluster_b) for s in self.steps]


def _simple_mass(ids: Sequence[int], values: np.ndarray) -> MassFunction:
    """Singleton masses on ``ids`` plus remainder on the frame.

    When the singleton masses sum past 1 they are rescaled to sum to 1 and
    the frame gets nothing.
    """
    frame = Frame(ids)
    values = np.asarray(values, dtype=float)
    total = float(values.sum())
    if total > 1.0:
        values = values / total
        rest = 0.0
    else:
        rest = 1.0 - total
    focal: dict[int, float] = {}
    for k, v in enumerate(values):
        focal[1 << k] = focal.get(1 << k, 0.0) + float(v)
    focal[frame.full] = focal.get(frame.full, 0.0) + rest
    return belief._prune(frame, focal)


def object_mass(i: int, dist: np.ndarray, params: MassParams = MassParams()) -> MassFunction:
    """Mass of object ``i`` over all other objects, from a distance matrix."""
    dist = np.asarray(dist, dtype=float)
    n = dist.shape[0]
    if n < 2:
        raise TooFewObjects("need at least two objects")
    sq = dist**2
    params = params.resolve(sq)
    others = [j for j in range(n) if j != i]
    return _simple_mass(others, params.alpha * np.exp(-params.gamma * sq[i, others]))


def select_cluster_pair(masses: Mapping[int, MassFunction]) -> tuple[int, int, float, float]:
    """Pair maximizing the product of mutual pignistic probabilities.

    ``masses[c]`` must be defined on a frame listing the other cluster ids.
    Returns ``(a, b, BetP_a(b), BetP_b(a))`` with ``a < b``.
    """
    if len(masses) < 2:
        raise SingleCluster("need at least two clusters")
    betp = {c: pignistic(m) for c, m in masses.items()}
    ids = sorted(masses)
    scores = {}
    for p, a in enumerate(ids):
        for b in ids[p + 1:]:
            scores[a, b] = betp[a][b] * betp[b][a]
    a, b = pick_pair(scores, maximize=True)
    return a, b, betp[a][b], betp[b][a]


def select_object_pair(data, params: MassParams = MassParams()) -> tuple[int, int]:
    """Pair of objects maximizing ``BetP_i(x_j) * BetP_j(x_i)``."""
    dist = euclidean_matrix(data)
    n = dist.shape[0]
    if n < 2:
        raise TooFewObjects("need at least two objects")
    params = params.resolve(dist**2)
    a, b, _, _ = select_cluster_pair({i: object_mass(i, dist, params) for i in range(n)})
    return a, b


def _masses_variant_a(state: ClusterState, params: MassParams) -> dict[int, MassFunction]:
    ids = state.ids
    out = {}
    for c in ids:
        others = [o for o in ids if o != c]
        d = np.array([state.distance(c, o) for o in others])
        out[c] = _simple_mass(others, params.alpha * np.exp(-params.gamma * d**2))
    return out


def cluster_mass_variant_a(
    i: int, partition: Partition, data, link="single", params: MassParams = MassParams()
) -> MassFunction:
    """Mass of cluster ``i`` over the other clusters, from linkage distances.

    With ``gamma="auto"`` the squared linkage distances between the
    clusters of ``partition`` calibrate gamma.
    """
    if len(partition) < 2:
        raise SingleCluster("need at least two clusters")
    x = as_features(data)
    ids = list(partition.clusters)
    state = ClusterState([partition.clusters[c] for c in ids], euclidean_matrix(x), x, link)
    params = params.resolve(np.array(list(state.dist.values())) ** 2)
    pos = ids.index(i)
    others = [k for k in range(len(ids)) if k != pos]
    d = np.array([state.distance(pos, k) for k in others])
    return _simple_mass([ids[k] for k in others], params.alpha * np.exp(-params.gamma * d**2))


def _member_log_masses(rows: Sequence[int], groups: Sequence[Sequence[int]], sq: np.ndarray, params: MassParams) -> np.ndarray:
    """log of prod_{x in group} alpha*exp(-gamma*d2(row, x)), one column per group."""
    log_alpha = math.log(params.alpha)
    out = np.empty((len(rows), len(groups)))
    for k, g in enumerate(groups):
        out[:, k] = len(g) * log_alpha - params.gamma * sq[np.ix_(rows, g)].sum(axis=1)
    return out


def _combine_simple_logs(logs: np.ndarray) -> tuple[np.ndarray, float]:
    """Dempster-combine the simple masses given row-wise as log singleton masses.

    Each row is one source with singleton masses ``exp(logs[r])`` (rescaled
    when they overflow 1) and the remainder on the frame. All sources
    share the same singleton-only focal structure, so the conjunctive
    result has a closed form: a singleton keeps the mass of every way of
    choosing it or the frame in each source, at least once it.
    Returns normalized singleton masses and the frame mass.
    """
    s = np.exp(logs)
    totals = s.sum(axis=1)
    over = totals > 1.0
    s[over] /= totals[over, None]
    omega = np.where(over, 0.0, 1.0 - totals)
    omega = np.clip(omega, 0.0, 1.0)
    if np.all(omega > 0):
        # ratios relative to the all-frame product keep tiny masses accurate
        delta = np.log1p(s / omega[:, None]).sum(axis=0)
        top = delta.max() if delta.size else 0.0
        if top > 700:
            single = np.exp(delta - top)
            frame_mass = 0.0
        else:
            single = np.expm1(delta)
            frame_mass = 1.0
    else:
        with np.errstate(divide="ignore"):
            log_a = np.log(s + omega[:, None]).sum(axis=0)
        top = log_a.max()
        if not np.isfinite(top):
            raise TotalConflict("member masses of the cluster are in total conflict")
        single = np.exp(log_a - top)
        frame_mass = 0.0
    total = single.sum() + frame_mass
    if not total > 0 or not np.isfinite(total):
        raise TotalConflict("member masses of the cluster are in total conflict")
    return single / total, frame_mass / total


def _masses_variant_b(
    members: Mapping[int, tuple[int, ...]], sq: np.ndarray, params: MassParams
) -> dict[int, MassFunction]:
    ids = sorted(members)
    out = {}
    for c in ids:
        others = [o for o in ids if o != c]
        logs = _member_log_masses(members[c], [members[o] for o in others], sq, params)
        single, frame_mass = _combine_simple_logs(logs)
        frame = Frame(others)
        focal: dict[int, float] = {}
        for k, v in enumerate(single):
            focal[1 << k] = focal.get(1 << k, 0.0) + float(v)
        focal[frame.full] = focal.get(frame.full, 0.0) + frame_mass
        out[c] = belief._prune(frame, focal)
    return out


def member_masses_variant_b(
    k: int, partition: Partition, dist: np.ndarray, params: MassParams = MassParams()
) -> list[MassFunction]:
    """One mass per object of cluster ``k``, before fusion."""
    if len(partition) < 2:
        raise SingleCluster("need at least two clusters")
    sq = np.asarray(dist, dtype=float) ** 2
    params = params.resolve(sq)
    others = [c for c in partition.clusters if c != k]
    logs = _member_log_masses(partition.clusters[k], [partition.clusters[c] for c in others], sq, params)
    return [_simple_mass(others, np.exp(row)) for row in logs]


def cluster_mass_variant_b(
    k: int, partition: Partition, dist: np.ndarray, params: MassParams = MassParams(),
    sequential: bool = False,
) -> MassFunction:
    """Fused mass of cluster ``k`` over the other clusters.

    Each member votes with a mass whose singleton on another cluster is
    the product of ``alpha*exp(-gamma*d2)`` over that cluster's objects;
    the votes are combined with Dempster's rule. ``sequential=True`` folds
    them pairwise through :func:`dempster_combine` instead of the closed
    form. With ``gamma="auto"`` all nonzero squared object distances
    calibrate gamma.
    """
    if len(partition) < 2:
        raise SingleCluster("need at least two clusters")
    sq = np.asarray(dist, dtype=float) ** 2
    params = params.resolve(sq)
    if sequential:
        votes = member_masses_variant_b(k, partition, dist, params)
        fused = votes[0]
        for m in votes[1:]:
            fused = dempster_combine(fused, m)
        return fused
    return _masses_variant_b(partition.clusters, sq, params)[k]


def _parse_variant(variant) -> str:
    v = str(variant).upper().removeprefix("BHC-")
    if v not in ("A", "B"):
        raise BeliefHCError(f"unknown variant {variant!r}; expected 'A' or 'B'")
    return v


def bhc_cluster(
    data,
    params: MassParams = MassParams(),
    variant="A",
    link="single",
    initial: Partition | None = None,
    index_kind: str = "betp_monotone",
) -> tuple[Dendrogram, MergeTrace]:
    """Grow a BetP-indexed dendrogram.

    Starting from single objects (or from the clusters of ``initial``),
    every step builds one mass per current cluster, merges the pair with
    the largest product of mutual pignistic probabilities and records the
    sum of the two as the raw merge index. ``index_kind`` selects whether
    the dendrogram carries the raw sums or their running maximum.

    ``link`` is only used by variant ``"A"``.
    """
    variant = _parse_variant(variant)
    if index_kind not in ("betp_monotone", "betp_raw"):
        raise BeliefHCError(f"unsupported index kind {index_kind!r}")
    x = as_features(data)
    n = x.shape[0]
    if n < 2:
        raise TooFewObjects("need at least two objects")
    groups, trivial = _initial_groups(n, initial)
    if len(groups) < 2:
        raise TooFewObjects("need at least two initial clusters")
    base = euclidean_matrix(x)
    sq = base**2

    state = None
    if variant == "A":
        state = ClusterState(groups, base, x, Linkage.parse(link))
        cluster_params = params.resolve(np.array(list(state.dist.values())) ** 2)
    else:
        cluster_params = params.resolve(sq)
    object_params = params.resolve(sq)
    members = {i: tuple(g) for i, g in enumerate(groups)}
    next_id = len(groups)

    steps: list[MergeStep] = []
    merges: list[Merge] = []
    running = -math.inf
    while len(members) > 1:
        if trivial and not steps:
            masses = {i: object_mass(i, base, object_params) for i in range(n)}
        elif variant == "A":
            masses = _masses_variant_a(state, cluster_params)
        else:
            masses = _masses_variant_b(members, sq, cluster_params)
        a, b, pa, pb = select_cluster_pair(masses)
        raw = pa + pb
        running = max(running, raw)
        steps.append(MergeStep(a, b, pa, pb, pa * pb, raw, running))
        if state is not None:
            node = state.merge(a, b)
        else:
            node = next_id
        next_id = node + 1
        members[node] = members.pop(a) + members.pop(b)
        merges.append(Merge(a, b, running if index_kind == "betp_monotone" else raw, node))

    dendro = Dendrogram(len(groups), tuple(merges), index_kind, None if trivial else tuple(groups))
    return dendro, MergeTrace(tuple(steps), float(cluster_params.gamma))
