"""Datasets: CSV ingestion, the bundled diamond fixture, Iris and Congressional Voting.

Both real datasets are looked up first in ``data_dir`` (default
``$BELIEFHC_DATA`` or ``~/.cache/beliefhc``). Failing that, Iris comes from
the copy bundled with scikit-learn and the voting records from the copy
shipped in ``beliefhc/data`` (checked against a pinned SHA-256). The last
resort is a download from the UCI repository. A downloaded file's SHA-256
is written next to it on first use and checked on every later load.

Voting records are encoded ``y -> 1``, ``n -> 0``, ``? -> 0.5``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import os
import urllib.request
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .exceptions import BeliefHCError, ParseError, RaggedRows
from .hac import Partition

__all__ = [
    "Dataset",
    "load_csv",
    "parse_csv",
    "load_diamond",
    "load_iris",
    "load_voting",
    "load_dataset",
    "fetch",
    "CATEGORICAL",
]

BUNDLED_VOTING_SHA256 = "c87c14110a5ba91d4a1e313ec7392824458152bf071fa5f5452340488337936e"

CATEGORICAL = {"y": 1.0, "n": 0.0, "?": 0.5}

SOURCES = {
    "iris": (
        "https://archive.ics.uci.edu/ml/machine-learning-databases/iris/iris.data",
        "iris.data",
    ),
    "voting": (
        "https://archive.ics.uci.edu/ml/machine-learning-databases/voting-records/house-votes-84.data",
        "house-votes-84.data",
    ),
}


@dataclass(frozen=True)
class Dataset:
    features: np.ndarray
    labels: np.ndarray | None = None
    names: tuple[str, ...] | None = None
    columns: tuple[str, ...] | None = None

    def __post_init__(self):
        f = np.asarray(self.features, dtype=float)
        if f.ndim != 2:
            raise BeliefHCError(f"features must be 2-D, got shape {f.shape}")
        object.__setattr__(self, "features", f)
        if self.labels is not None:
            labels = np.asarray(self.labels)
            if labels.shape != (f.shape[0],):
                raise BeliefHCError("labels must have one entry per object")
            object.__setattr__(self, "labels", labels)
        if self.names is not None and len(self.names) != f.shape[0]:
            raise BeliefHCError("names must have one entry per object")

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    def truth(self) -> Partition:
        if self.labels is None:
            raise BeliefHCError("dataset has no ground-truth labels")
        return Partition.from_labels(self.labels.tolist())

    def standardized(self) -> "Dataset":
        """Z-scored features; constant columns become zero."""
        f = self.features
        sd = f.std(axis=0)
        sd[sd == 0] = 1.0
        return replace(self, features=(f - f.mean(axis=0)) / sd)


def _cell(text: str) -> float:
    t = text.strip()
    if t.lower() in CATEGORICAL:
        return CATEGORICAL[t.lower()]
    return float(t)


def _is_value(text: str) -> bool:
    try:
        _cell(text)
        return True
    except ValueError:
        return False


def parse_csv(text: str, label_column=None, delimiter: str = ",", header: bool | None = None) -> Dataset:
    """Parse CSV text; see :func:`load_csv`."""
    rows = [r for r in csv.reader(io.StringIO(text), delimiter=delimiter) if any(c.strip() for c in r)]
    if not rows:
        raise ParseError("no data rows")
    width = len(rows[0])
    for lineno, r in enumerate(rows, start=1):
        if len(r) != width:
            raise RaggedRows(f"expected {width} columns, found {len(r)}", row=lineno)

    if isinstance(label_column, str):
        if header is False:
            raise BeliefHCError("a named label column needs a header row")
        names = [c.strip() for c in rows[0]]
        if label_column not in names:
            raise BeliefHCError(f"no column named {label_column!r} in header {names}")
        label_idx = names.index(label_column)
        header = True
    elif label_column is not None:
        label_idx = int(label_column) % width
    else:
        label_idx = None

    if header is None:
        header = not any(_is_value(c) for k, c in enumerate(rows[0]) if k != label_idx)
    if header:
        columns = tuple(c.strip() for c in rows[0])
        body = rows[1:]
        first = 2
    else:
        columns = tuple(f"x{k}" for k in range(width))
        body = rows
        first = 1
    if not body:
        raise ParseError("no data rows")

    feat_idx = [k for k in range(width) if k != label_idx]
    if not feat_idx:
        raise ParseError("no feature columns")
    feats = np.empty((len(body), len(feat_idx)))
    for r, row in enumerate(body):
        for c, k in enumerate(feat_idx):
            try:
                feats[r, c] = _cell(row[k])
            except ValueError:
                raise ParseError(f"non-numeric value {row[k]!r}", row=first + r, column=columns[k]) from None
    labels = None
    if label_idx is not None:
        labels = np.array([row[label_idx].strip() for row in body])
    return Dataset(feats, labels, None, tuple(columns[k] for k in feat_idx))


def load_csv(path, label_column=None, delimiter: str = ",", header: bool | None = None) -> Dataset:
    """Read a delimited file of numeric features.

    ``label_column`` (index or header name) becomes the ground truth.
    Cells ``y``/``n``/``?`` are read as 1/0/0.5. The header row is
    detected automatically unless ``header`` says otherwise.
    """
    return parse_csv(Path(path).read_text(), label_column, delimiter, header)


def load_diamond() -> Dataset:
    """Twelve 2-D points: two unit diamonds, a bridging point and an outlier.

    Objects 1-5 form the left diamond (centre = 5), object 6 sits midway
    between the groups, objects 7-11 form the right diamond (centre = 11)
    and object 12 is far above everything. Names are the 1-based object
    numbers. This is a stand-in with the same qualitative layout as the
    classic evidential-clustering diamond, not a copy of its coordinates.
    """
    text = resources.files("beliefhc").joinpath("data/diamond.csv").read_text()
    ds = parse_csv(text, label_column="group")
    rows = list(csv.reader(io.StringIO(text)))[1:]
    return replace(ds, features=ds.features[:, 1:], names=tuple(r[0] for r in rows), columns=ds.columns[1:])


def default_data_dir() -> Path:
    return Path(os.environ.get("BELIEFHC_DATA", Path.home() / ".cache" / "beliefhc"))


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _verify(path: Path) -> None:
    stamp = path.with_name(path.name + ".sha256")
    digest = _sha256(path)
    if stamp.exists():
        expected = stamp.read_text().split()[0]
        if expected != digest:
            raise BeliefHCError(f"checksum mismatch for {path}: {digest} != recorded {expected}")
    else:
        stamp.write_text(f"{digest}  {path.name}\n")


def fetch(name: str, data_dir=None, download: bool = True, timeout: float = 30.0) -> Path:
    """Local path of a raw UCI dataset file, downloading it if allowed."""
    if name not in SOURCES:
        raise BeliefHCError(f"unknown dataset {name!r}; known: {sorted(SOURCES)}")
    url, filename = SOURCES[name]
    root = Path(data_dir) if data_dir is not None else default_data_dir()
    path = root / filename
    if not path.exists():
        if not download:
            raise FileNotFoundError(path)
        root.mkdir(parents=True, exist_ok=True)
        try:
            with urllib.request.urlopen(url, timeout=timeout) as resp:
                payload = resp.read()
        except OSError as exc:
            raise FileNotFoundError(f"{filename} not in {root} and download failed: {exc}") from exc
        tmp = path.with_suffix(".part")
        tmp.write_bytes(payload)
        tmp.replace(path)
    _verify(path)
    return path


def _iris_from_sklearn() -> Dataset:
    from sklearn.datasets import load_iris as _sk

    bunch = _sk()
    species = np.asarray(bunch.target_names)[bunch.target]
    return Dataset(bunch.data, species, None, tuple(bunch.feature_names))


def load_iris(data_dir=None, download: bool = True) -> Dataset:
    """150 x 4 Iris measurements with species labels."""
    try:
        path = fetch("iris", data_dir, download=False)
    except FileNotFoundError:
        try:
            return _iris_from_sklearn()
        except ImportError:
            path = fetch("iris", data_dir, download=download)
    ds = load_csv(path, label_column=-1, header=False)
    return replace(ds, columns=("sepal_length", "sepal_width", "petal_length", "petal_width"))


def load_voting(data_dir=None, download: bool = True) -> Dataset:
    """435 x 16 House votes (1984) with party labels."""
    try:
        path = fetch("voting", data_dir, download=False)
    except FileNotFoundError:
        bundled = resources.files("beliefhc").joinpath("data/house-votes-84.data")
        if bundled.is_file():
            raw = bundled.read_bytes()
            if hashlib.sha256(raw).hexdigest() != BUNDLED_VOTING_SHA256:
                raise BeliefHCError("bundled house-votes-84.data failed its checksum")
            return parse_csv(raw.decode(), label_column=0, header=False)
        path = fetch("voting", data_dir, download=download)
    return load_csv(path, label_column=0, header=False)


def load_dataset(name: str, **kwargs) -> Dataset:
    loaders = {"diamond": load_diamond, "iris": load_iris, "voting": load_voting}
    if name not in loaders:
        raise BeliefHCError(f"unknown dataset {name!r}; known: {sorted(loaders)}")
    if name == "diamond":
        return load_diamond()
    return loaders[name](**kwargs)
