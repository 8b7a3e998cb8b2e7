"""Serialization of dendrograms, partitions and metric tables, and SVG plots."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .bhc import MergeTrace
from .exceptions import BeliefHCError
from .hac import Dendrogram, Merge, Partition

__all__ = [
    "save_dendrogram",
    "load_dendrogram",
    "to_newick",
    "plot_dendrogram",
    "render_svg",
    "partition_csv",
    "metrics_csv",
    "METRICS_HEADER",
]

METRICS_HEADER = ("dataset", "algorithm", "linkage", "k_init", "seed", "f_c", "precision", "recall", "rand_index")


def _num(x: float) -> str:
    return format(float(x), ".12g")


def _to_dict(d: Dendrogram, trace: MergeTrace | None) -> dict:
    if trace is not None and len(trace) != len(d.merges):
        raise BeliefHCError("trace and dendrogram lengths differ")
    merges = []
    for step, m in enumerate(d.merges):
        item = {"left": m.left, "right": m.right, "index": m.index}
        if trace is not None:
            s = trace[step]
            item["raw_index"] = s.raw_index
            item["betp_factors"] = [s.betp_a_of_b, s.betp_b_of_a]
        merges.append(item)
    out = {"n_leaves": d.n_leaves, "index_kind": d.index_kind, "merges": merges}
    if d.leaves is not None:
        out["leaves"] = [list(g) for g in d.leaves]
    return out


def save_dendrogram(d: Dendrogram, trace: MergeTrace | None = None, format: str = "json", names=None) -> bytes:
    """Encode a dendrogram as JSON or Newick bytes.

    ``names`` optionally labels Newick leaves (one per leaf).
    """
    if format == "json":
        return (json.dumps(_to_dict(d, trace), indent=2, sort_keys=True) + "\n").encode()
    if format == "newick":
        return (to_newick(d, names) + "\n").encode()
    raise BeliefHCError(f"unknown dendrogram format {format!r}")


def load_dendrogram(data) -> Dendrogram:
    """Inverse of ``save_dendrogram(..., format="json")``."""
    if isinstance(data, (bytes, bytearray)):
        data = data.decode()
    obj = json.loads(data) if isinstance(data, str) else data
    n = int(obj["n_leaves"])
    merges = tuple(
        Merge(int(m["left"]), int(m["right"]), float(m["index"]), n + step)
        for step, m in enumerate(obj["merges"])
    )
    leaves = obj.get("leaves")
    return Dendrogram(n, merges, obj["index_kind"], None if leaves is None else tuple(map(tuple, leaves)))


def _display_heights(d: Dendrogram) -> dict[int, float]:
    """Node heights used for drawing: running maximum of the merge index."""
    h = {i: 0.0 for i in range(d.n_leaves)}
    running = 0.0
    for m in d.merges:
        running = max(running, m.index)
        h[m.node] = running
    return h


def _roots(d: Dendrogram) -> list[int]:
    children = {c for m in d.merges for c in (m.left, m.right)}
    return [i for i in range(d.n_leaves + len(d.merges)) if i not in children]


def to_newick(d: Dendrogram, names: Sequence[str] | None = None) -> str:
    """Newick string; node height is half its merge index."""
    if names is not None and len(names) != d.n_leaves:
        raise BeliefHCError("need one name per leaf")
    height = {k: v / 2.0 for k, v in _display_heights(d).items()}
    kids = {m.node: (m.left, m.right) for m in d.merges}

    def render(node: int) -> str:
        if node < d.n_leaves:
            return str(names[node]) if names is not None else str(node)
        parts = [f"{render(c)}:{_num(height[node] - height[c])}" for c in kids[node]]
        return "(" + ",".join(parts) + ")"

    roots = _roots(d)
    if len(roots) == 1:
        return render(roots[0]) + ";"
    return "(" + ",".join(render(r) for r in roots) + ");"


def leaf_order(d: Dendrogram) -> list[int]:
    order = []
    for r in _roots(d):
        order.extend(d.node_leaves()[r])
    return order


def render_svg(d: Dendrogram, names: Sequence[str] | None = None, width: int = 640, height: int = 400) -> str:
    """Deterministic SVG drawing of a dendrogram."""
    if names is not None and len(names) != d.n_leaves:
        raise BeliefHCError("need one name per leaf")
    left, right, top, bottom = 70.0, 20.0, 20.0, 50.0
    plot_w, plot_h = width - left - right, height - top - bottom
    h = _display_heights(d)
    hmax = max(h.values()) or 1.0
    order = leaf_order(d)
    step = plot_w / max(len(order), 1)
    x = {leaf: left + step * (k + 0.5) for k, leaf in enumerate(order)}

    def y(v: float) -> float:
        return top + plot_h * (1.0 - v / hmax)

    lines = []
    for m in d.merges:
        x[m.node] = 0.5 * (x[m.left] + x[m.right])
        yh = y(h[m.node])
        for c in (m.left, m.right):
            lines.append(f'<line x1="{x[c]:.2f}" y1="{y(h[c]):.2f}" x2="{x[c]:.2f}" y2="{yh:.2f}"/>')
        lines.append(f'<line x1="{x[m.left]:.2f}" y1="{yh:.2f}" x2="{x[m.right]:.2f}" y2="{yh:.2f}"/>')

    axis = [f'<line x1="{left:.2f}" y1="{top:.2f}" x2="{left:.2f}" y2="{top + plot_h:.2f}"/>']
    for t in np.linspace(0.0, hmax, 5):
        yt = y(t)
        axis.append(f'<line x1="{left - 4:.2f}" y1="{yt:.2f}" x2="{left:.2f}" y2="{yt:.2f}"/>')
        axis.append(f'<text x="{left - 6:.2f}" y="{yt + 4:.2f}" text-anchor="end">{t:.3g}</text>')
    label_y = top + plot_h / 2
    axis.append(
        f'<text x="16" y="{label_y:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {label_y:.2f})">{d.index_kind}</text>'
    )
    labels = [
        f'<text x="{x[leaf]:.2f}" y="{top + plot_h + 16:.2f}" text-anchor="middle">'
        f"{names[leaf] if names is not None else leaf}</text>"
        for leaf in order
    ]
    return "\n".join(
        [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
            '<g stroke="black" stroke-width="1.5" fill="none">',
            *lines,
            "</g>",
            '<g stroke="black" fill="black">',
            *axis,
            "</g>",
            '<g fill="black">',
            *labels,
            "</g>",
            "</svg>",
            "",
        ]
    )


def plot_dendrogram(d: Dendrogram, out_path, names: Sequence[str] | None = None) -> Path:
    out_path = Path(out_path)
    out_path.write_text(render_svg(d, names))
    return out_path


def partition_csv(p: Partition) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["object", "cluster"])
    for i, c in enumerate(p.cluster_of):
        w.writerow([i, int(c)])
    return buf.getvalue()


def read_partition_csv(text: str) -> Partition:
    rows = list(csv.reader(io.StringIO(text)))
    body = rows[1:] if rows and not rows[0][0].strip().lstrip("-").isdigit() else rows
    pairs = sorted((int(r[0]), r[1].strip()) for r in body if r)
    if [i for i, _ in pairs] != list(range(len(pairs))):
        raise BeliefHCError("partition CSV must list objects 0..n-1 exactly once")
    return Partition.from_labels(c for _, c in pairs)


def metrics_csv(rows: Iterable[dict], header: Sequence[str] = METRICS_HEADER) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_num(v) if isinstance(v, float) else ("" if v is None else v) for v in (r.get(k) for k in header)])
    return buf.getvalue()
