import json

import numpy as np
import pytest

from beliefhc.bhc import bhc_cluster
from beliefhc.datasets import load_diamond
from beliefhc.export import (
    load_dendrogram,
    partition_csv,
    plot_dendrogram,
    read_partition_csv,
    render_svg,
    save_dendrogram,
    to_newick,
)
from beliefhc.hac import Dendrogram, Merge, Partition, hac_cluster


def test_two_leaf_newick():
    d = Dendrogram(2, (Merge(0, 1, 3.0, 2),))
    assert save_dendrogram(d, format="newick") == b"(0:1.5,1:1.5);\n"


def test_newick_nested():
    d = hac_cluster([0.0, 1.0, 10.0])
    # heights are half the merge index: node 3 at 0.5, root at 4.5
    assert to_newick(d) == "(2:4.5,(0:0.5,1:0.5):4);"


def test_newick_names():
    d = Dendrogram(2, (Merge(0, 1, 2.0, 2),))
    assert to_newick(d, ["a", "b"]) == "(a:1,b:1);"


def test_json_round_trip():
    d = hac_cluster(np.random.default_rng(1).normal(size=(7, 2)), "average")
    assert load_dendrogram(save_dendrogram(d)) == d


def test_json_round_trip_with_leaves():
    init = Partition(5, {0: (0, 1), 1: (2, 3), 2: (4,)})
    d = hac_cluster([0.0, 0.1, 5.0, 5.2, 20.0], initial=init)
    assert load_dendrogram(save_dendrogram(d)) == d


def test_trace_fields():
    d, trace = bhc_cluster([0.0, 1.0, 3.0, 7.0, 7.5])
    obj = json.loads(save_dendrogram(d, trace))
    assert obj["index_kind"] == "betp_monotone"
    for m, s in zip(obj["merges"], trace):
        assert sum(m["betp_factors"]) == pytest.approx(m["raw_index"], abs=1e-12)
        assert m["index"] == s.monotone_index
    assert load_dendrogram(json.dumps(obj)) == d


def test_serialization_is_byte_stable():
    d, trace = bhc_cluster(load_diamond())
    assert save_dendrogram(d, trace) == save_dendrogram(d, trace)
    assert save_dendrogram(d, trace, "newick") == save_dendrogram(d, trace, "newick")


def test_svg_two_leaves():
    svg = render_svg(Dendrogram(2, (Merge(0, 1, 1.0, 2),)))
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    body = svg.split('<g stroke="black" stroke-width="1.5" fill="none">')[1].split("</g>")[0]
    lines = [l for l in body.splitlines() if l.startswith("<line")]
    # two risers and one horizontal bar
    assert len(lines) == 3
    assert ">distance</text>" in svg


def test_svg_deterministic(tmp_path):
    ds = load_diamond()
    d, _ = bhc_cluster(ds)
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    plot_dendrogram(d, a, ds.names)
    plot_dendrogram(d, b, ds.names)
    assert a.read_bytes() == b.read_bytes()


def test_svg_outlier_on_top():
    ds = load_diamond()
    d, _ = bhc_cluster(ds, variant="A", link="single")
    # the root merge draws the highest bar and involves leaf 11 directly
    assert 11 in (d.merges[-1].left, d.merges[-1].right)
    assert d.merges[-1].index == max(m.index for m in d.merges)
    svg = render_svg(d, ds.names)
    assert ">betp_monotone</text>" in svg


def test_partition_csv_round_trip():
    p = Partition.from_labels([2, 0, 2, 1])
    text = partition_csv(p)
    assert text.splitlines()[0] == "object,cluster"
    assert read_partition_csv(text).canonical() == p.canonical()
