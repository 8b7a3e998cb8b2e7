"""Agglomerative clustering of uncertain data with belief functions.

The main entry points are :func:`bhc_cluster` (belief hierarchical
clustering), :func:`hac_cluster` (the classical baseline), :func:`cut`
and :func:`evaluate`.
"""

from .belief import (
    Frame,
    MassFunction,
    PignisticDistribution,
    conjunctive_combine,
    dempster_combine,
    make_simple_mass,
    pignistic,
    vacuous_mass,
)
from .bhc import (
    MassParams,
    MergeTrace,
    bhc_cluster,
    cluster_mass_variant_a,
    cluster_mass_variant_b,
    object_mass,
    select_cluster_pair,
    select_object_pair,
)
from .datasets import Dataset, load_csv, load_dataset, load_diamond, load_iris, load_voting
from .dissimilarity import ClusterSummary, Linkage, euclidean_matrix, linkage_distance
from .evaluation import PairCounts, evaluate, metrics, pair_counts
from .exceptions import *  # noqa: F401,F403
from .export import load_dendrogram, plot_dendrogram, save_dendrogram
from .hac import Dendrogram, Merge, Partition, cophenetic, cut, hac_cluster
from .pipeline import RunConfig, run_pipeline
from .precluster import KMeansConfig, kmeans

__version__ = "0.1.0"
