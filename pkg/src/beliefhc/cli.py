"""Command-line interface: ``beliefhc {cluster,eval,plot,reproduce}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import datasets
from .datasets import Dataset, load_csv
from .dissimilarity import Linkage
from .evaluation import evaluate
from .exceptions import BeliefHCError
from .export import (
    metrics_csv,
    partition_csv,
    plot_dendrogram,
    read_partition_csv,
    save_dendrogram,
    load_dendrogram,
)
from .pipeline import ALGORITHMS, RunConfig, closest_matches, grid_configs, reproduce, run_pipeline

REPORT_HEADER = (
    "family", "f_c", "ref_precision", "ref_recall", "ref_rand_index",
    "algorithm", "linkage", "seed", "precision", "recall", "rand_index", "max_abs_dev",
)


def int_list(text: str) -> list[int]:
    """Parse ``"3"``, ``"2,4,6"`` or ``"2..6"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"no integers in {text!r}")
    return out


def gamma_value(text: str):
    if text == "auto":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"gamma must be a number or 'auto', not {text!r}") from None


def _add_data_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dataset", choices=["diamond", "iris", "voting"])
    src.add_argument("--csv", type=Path, help="CSV of numeric features")
    p.add_argument("--label-column", help="label column of --csv (header name or index)")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--data-dir", type=Path, help="where downloaded datasets are cached")


def _load(args) -> tuple[Dataset, str]:
    if args.csv is not None:
        label = args.label_column
        if label is not None and label.lstrip("-").isdigit():
            label = int(label)
        return load_csv(args.csv, label, args.delimiter), args.csv.stem
    if args.dataset == "diamond":
        return datasets.load_diamond(), "diamond"
    return datasets.load_dataset(args.dataset, data_dir=args.data_dir), args.dataset


def _add_mass_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=0.95)
    p.add_argument("--gamma", type=gamma_value, default="auto")
    p.add_argument("--standardize", action="store_true", help="z-score features first")


def cmd_cluster(args) -> int:
    data, name = _load(args)
    cfg = RunConfig(
        algorithm=args.algorithm,
        linkage=args.linkage,
        alpha=args.alpha,
        gamma=args.gamma,
        k_init=args.k_init,
        f_c=tuple(args.fc or ()),
        seed=args.seed,
        standardize=args.standardize,
        index_kind="betp_raw" if args.raw_index else "betp_monotone",
    )
    result = run_pipeline(cfg, data, name)
    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    names = data.names if result.dendrogram.leaves is None else None
    suffix = "json" if args.format == "json" else "nwk"
    (out / f"dendrogram.{suffix}").write_bytes(
        save_dendrogram(result.dendrogram, result.trace, args.format, names if args.format == "newick" else None)
    )
    if args.format != "json":
        (out / "dendrogram.json").write_bytes(save_dendrogram(result.dendrogram, result.trace, "json"))
    if args.plot:
        plot_dendrogram(result.dendrogram, out / "dendrogram.svg", names)
    for k, part in result.partitions.items():
        (out / f"partition_fc{k}.csv").write_text(partition_csv(part))
    if result.initial is not None:
        (out / "initial_partition.csv").write_text(partition_csv(result.initial))
    if result.rows:
        table = metrics_csv(result.rows)
        (out / "metrics.csv").write_text(table)
        sys.stdout.write(table)
    return 0


def cmd_eval(args) -> int:
    pred = read_partition_csv(args.pred.read_text())
    if args.truth is not None:
        truth = read_partition_csv(args.truth.read_text())
    else:
        data, _ = _load(args)
        truth = data.truth()
    p, r, ri = evaluate(pred, truth)
    table = metrics_csv([{"precision": p, "recall": r, "rand_index": ri}], ("precision", "recall", "rand_index"))
    if args.out:
        args.out.write_text(table)
    sys.stdout.write(table)
    return 0


def cmd_plot(args) -> int:
    dendro = load_dendrogram(args.dendrogram.read_bytes())
    plot_dendrogram(dendro, args.out)
    return 0


def cmd_reproduce(args) -> int:
    names = ["iris", "voting"] if args.dataset == "all" else [args.dataset]
    args.out.mkdir(parents=True, exist_ok=True)
    status = 0
    for name in names:
        try:
            data = datasets.load_dataset(name, data_dir=args.data_dir)
        except FileNotFoundError as exc:
            print(f"error: {name}: {exc}", file=sys.stderr)
            status = 1
            continue
        configs = grid_configs(
            k_inits=args.k_init, seeds=args.seeds, f_cs=args.fc,
            alpha=args.alpha, gamma=args.gamma, standardize=args.standardize,
        )
        rows = reproduce(data, name, configs, jobs=args.jobs)
        (args.out / f"{name}_grid.csv").write_text(metrics_csv(rows))
        report = metrics_csv(closest_matches(rows, name), REPORT_HEADER)
        (args.out / f"{name}_report.csv").write_text(report)
        print(f"# {name}: closest grid row per reference cell")
        sys.stdout.write(report)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beliefhc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster one dataset and write the dendrogram")
    _add_data_args(p)
    _add_mass_args(p)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="bhc-a")
    p.add_argument("--linkage", choices=[l.value for l in Linkage], default="single")
    p.add_argument("--k-init", type=int, help="k-means pre-clusters")
    p.add_argument("--fc", type=int_list, help="final cluster counts, e.g. 3 or 2..6")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--raw-index", action="store_true", help="index BHC merges by raw BetP sums")
    p.add_argument("--format", choices=["json", "newick"], default="json")
    p.add_argument("--plot", action="store_true", help="also write dendrogram.svg")
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("eval", help="precision, recall and Rand index of a partition CSV")
    p.add_argument("--pred", type=Path, required=True)
    truth = p.add_mutually_exclusive_group(required=True)
    truth.add_argument("--truth", type=Path, help="reference partition CSV")
    truth.add_argument("--dataset", choices=["diamond", "iris", "voting"])
    truth.add_argument("--csv", type=Path)
    p.add_argument("--label-column")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--data-dir", type=Path)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("plot", help="render a JSON dendrogram as SVG")
    p.add_argument("--dendrogram", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("reproduce", help="run the precision/recall/RI grid")
    p.add_argument("--dataset", choices=["iris", "voting", "all"], default="all")
    p.add_argument("--data-dir", type=Path)
    _add_mass_args(p)
    p.add_argument("--k-init", type=int_list, default=[13])
    p.add_argument("--seeds", type=int_list, default=list(range(10)))
    p.add_argument("--fc", type=int_list, default=[2, 3, 4, 5, 6])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BeliefHCError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
