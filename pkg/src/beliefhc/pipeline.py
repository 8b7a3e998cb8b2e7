"""End-to-end runs: optional k-means, hierarchical clustering, cut, evaluation."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

from .bhc import MassParams, MergeTrace, bhc_cluster
from .datasets import Dataset
from .dissimilarity import Linkage
from .evaluation import evaluate
from .exceptions import BeliefHCError, InvalidK
from .hac import Dendrogram, Partition, cut, hac_cluster
from .precluster import KMeansConfig, kmeans

__all__ = [
    "ALGORITHMS",
    "RunConfig",
    "RunResult",
    "run_pipeline",
    "reproduce",
    "closest_matches",
    "grid_configs",
    "REFERENCE",
]

ALGORITHMS = ("hac", "bhc-a", "bhc-b")

# Published (precision, recall, RI) per final cluster count, K_init = 13.
REFERENCE = {
    "iris": {
        "bhc": {2: (0.5951, 1.0000, 0.7763), 3: (0.8011, 0.8438, 0.8797), 4: (0.9506, 0.8275, 0.9291),
                5: (0.8523, 0.6063, 0.8360), 6: (0.9433, 0.5524, 0.8419)},
        "hac": {2: (0.5951, 1.0000, 0.7763), 3: (0.6079, 0.9282, 0.7795), 4: (0.8183, 0.7230, 0.8561),
                5: (0.8523, 0.6063, 0.8360), 6: (0.8916, 0.5818, 0.8392)},
    },
    "voting": {
        "bhc": {2: (0.3873, 0.8177, 0.5146), 3: (0.7313, 0.8190, 0.8415), 4: (0.8701, 0.6833, 0.8623),
                5: (0.8670, 0.6103, 0.8411), 6: (0.9731, 0.6005, 0.8632)},
        # the F_c=2 row duplicates the Iris numbers and is not trusted
        "hac": {3: (0.6288, 0.8759, 0.7892), 4: (0.7887, 0.7091, 0.8419),
                5: (0.7551, 0.6729, 0.8207), 6: (0.8526, 0.6014, 0.8347)},
    },
}


@dataclass(frozen=True)
class RunConfig:
    algorithm: str = "bhc-a"
    linkage: str = "single"
    alpha: float = 0.95
    gamma: float | str = "auto"
    k_init: int | None = None
    f_c: tuple[int, ...] = ()
    seed: int = 42
    standardize: bool = False
    index_kind: str = "betp_monotone"

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise BeliefHCError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        object.__setattr__(self, "linkage", Linkage.parse(self.linkage).value)
        fc = self.f_c
        if fc is None:
            fc = ()
        elif isinstance(fc, int):
            fc = (fc,)
        object.__setattr__(self, "f_c", tuple(int(k) for k in fc))
        if self.k_init is not None and self.k_init < 2:
            raise BeliefHCError("k_init must be at least 2")
        MassParams(self.alpha, self.gamma)

    @property
    def family(self) -> str:
        return "hac" if self.algorithm == "hac" else "bhc"


@dataclass
class RunResult:
    config: RunConfig
    dendrogram: Dendrogram
    trace: MergeTrace | None = None
    initial: Partition | None = None
    partitions: dict[int, Partition] = field(default_factory=dict)
    rows: list[dict] = field(default_factory=list)

    @property
    def partition(self) -> Partition | None:
        if len(self.partitions) == 1:
            return next(iter(self.partitions.values()))
        return None


def run_pipeline(cfg: RunConfig, data: Dataset, dataset_name: str = "") -> RunResult:
    """Pre-cluster, cluster, cut at every requested ``f_c`` and score against labels."""
    n = data.n
    for k in cfg.f_c:
        if not 1 <= k <= n:
            raise InvalidK(f"f_c={k} outside [1, {n}]")
    if cfg.standardize:
        data = data.standardized()
    initial = None
    if cfg.k_init is not None:
        initial = kmeans(data, KMeansConfig(cfg.k_init, seed=cfg.seed))
    if cfg.algorithm == "hac":
        dendro, trace = hac_cluster(data, cfg.linkage, initial), None
    else:
        dendro, trace = bhc_cluster(
            data, MassParams(cfg.alpha, cfg.gamma), cfg.algorithm[-1].upper(), cfg.linkage,
            initial, cfg.index_kind,
        )
    result = RunResult(cfg, dendro, trace, initial)
    for k in cfg.f_c:
        part = cut(dendro, k)
        result.partitions[k] = part
        if data.labels is not None:
            p, r, ri = evaluate(part, data.truth())
            result.rows.append({
                "dataset": dataset_name,
                "algorithm": cfg.algorithm,
                "linkage": cfg.linkage if cfg.algorithm != "bhc-b" else "",
                "k_init": cfg.k_init,
                "seed": cfg.seed,
                "f_c": k,
                "precision": p,
                "recall": r,
                "rand_index": ri,
            })
    return result


def grid_configs(
    k_inits: Sequence[int] = (13,),
    seeds: Sequence[int] = range(10),
    linkages: Sequence[str] = tuple(l.value for l in Linkage),
    f_cs: Sequence[int] = (2, 3, 4, 5, 6),
    alpha: float = 0.95,
    gamma: float | str = "auto",
    standardize: bool = False,
) -> list[RunConfig]:
    configs = []
    for k_init, seed in itertools.product(k_inits, seeds):
        common = dict(k_init=k_init, seed=seed, f_c=tuple(f_cs), alpha=alpha, gamma=gamma, standardize=standardize)
        for link in linkages:
            configs.append(RunConfig("hac", link, **common))
        for link in linkages:
            configs.append(RunConfig("bhc-a", link, **common))
        configs.append(RunConfig("bhc-b", "single", **common))
    return configs


def _rows(args) -> list[dict]:
    cfg, data, name = args
    return run_pipeline(cfg, data, name).rows


def reproduce(data: Dataset, dataset_name: str, configs: Sequence[RunConfig], jobs: int = 1) -> list[dict]:
    """Metric rows for every config, in config order."""
    tasks = [(cfg, data, dataset_name) for cfg in configs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_rows, tasks))
    else:
        chunks = [_rows(t) for t in tasks]
    return [row for chunk in chunks for row in chunk]


def closest_matches(rows: Sequence[dict], dataset_name: str) -> list[dict]:
    """For each family and f_c, the grid row closest to the reference values.

    Distance is the largest absolute difference over precision, recall and RI.
    """
    ref = REFERENCE.get(dataset_name)
    if ref is None:
        return []
    out = []
    for family in ("bhc", "hac"):
        for f_c, target in sorted(ref[family].items()):
            cands = [
                r for r in rows
                if r["f_c"] == f_c and (r["algorithm"] == "hac") == (family == "hac")
            ]
            if not cands:
                continue
            best = min(
                cands,
                key=lambda r: max(abs(r["precision"] - target[0]), abs(r["recall"] - target[1]),
                                  abs(r["rand_index"] - target[2])),
            )
            dev = max(abs(best["precision"] - target[0]), abs(best["recall"] - target[1]),
                      abs(best["rand_index"] - target[2]))
            out.append({
                "family": family, "f_c": f_c,
                "ref_precision": target[0], "ref_recall": target[1], "ref_rand_index": target[2],
                "algorithm": best["algorithm"], "linkage": best["linkage"], "seed": best["seed"],
                "precision": best["precision"], "recall": best["recall"], "rand_index": best["rand_index"],
                "max_abs_dev": dev,
            })
    return out
