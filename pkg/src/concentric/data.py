"""Dataset ingestion, min-max normalization, class bookkeeping and sampling.

A Dataset is immutable after construction and safe to share between
threads.  Geometry and the classifiers consume the normalized values;
the raw values are kept for labels, tooltips and CSV round trips.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError

# First three classes follow the red/green/blue convention used throughout
# the plots; later classes draw from a fixed 12-color cycle.
CLASS_COLOR_CYCLE = (
    "#ff0000",
    "#00aa00",
    "#0000ff",
    "#ff9900",
    "#9900cc",
    "#00bbbb",
    "#cc0066",
    "#667700",
    "#0066cc",
    "#884400",
    "#444444",
    "#99cc00",
)

MISSING_TOKENS = ("", "NA", "?", "nan", "NaN")


@dataclass(frozen=True)
class AttributeMeta:
    name: str
    index: int
    raw_min: float
    raw_max: float

    def __post_init__(self):
        if self.raw_min > self.raw_max:
            raise DataError(f"attribute {self.name!r}: raw_min > raw_max")

    def normalize(self, raw: float) -> float:
        if self.raw_max > self.raw_min:
            return (raw - self.raw_min) / (self.raw_max - self.raw_min)
        return 0.5  # constant attribute: park every case mid-range

    def denormalize(self, norm: float) -> float:
        if self.raw_max > self.raw_min:
            return self.raw_min + norm * (self.raw_max - self.raw_min)
        return self.raw_min

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "index": self.index,
            "raw_min": self.raw_min,
            "raw_max": self.raw_max,
        }


@dataclass(frozen=True)
class Case:
    id: int
    raw: np.ndarray
    norm: np.ndarray
    label: str
    synthetic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "raw", _frozen_array(self.raw))
        object.__setattr__(self, "norm", _frozen_array(self.norm))
        if self.raw.shape != self.norm.shape:
            raise DataError(f"case {self.id}: raw/norm length mismatch")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "raw": [float(v) for v in self.raw],
            "norm": [float(v) for v in self.norm],
            "label": self.label,
            "synthetic": self.synthetic,
        }


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise DataError("case values must be a flat sequence")
    arr.setflags(write=False)
    return arr


class Dataset:
    """Labeled n-D cases plus attribute metadata and class colors."""

    def __init__(self, attributes, cases, class_order=None, colors=None):
        self.attributes = tuple(attributes)
        self.cases = tuple(cases)
        if not self.attributes:
            raise DataError("dataset needs at least one attribute")
        if not self.cases:
            raise DataError("dataset needs at least one case")
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise DataError("duplicate attribute names")
        if [a.index for a in self.attributes] != list(range(len(names))):
            raise DataError("attribute indices must form a contiguous 0..n-1 range")
        ids = [c.id for c in self.cases]
        if len(set(ids)) != len(ids):
            raise DataError("case ids must be unique")
        n = len(self.attributes)
        for c in self.cases:
            if len(c.raw) != n:
                raise DataError(f"case {c.id} has {len(c.raw)} values, expected {n}")

        seen = list(dict.fromkeys(c.label for c in self.cases))
        if class_order is not None:
            class_order = list(class_order)
            if set(class_order) != set(seen):
                raise DataError("class_order does not match case labels")
            self.classes = class_order
        else:
            self.classes = seen
        self.colors = dict(colors) if colors else {}
        for i, label in enumerate(self.classes):
            self.colors.setdefault(label, CLASS_COLOR_CYCLE[i % len(CLASS_COLOR_CYCLE)])

        self.norm_matrix = np.array([c.norm for c in self.cases])
        self.norm_matrix.setflags(write=False)
        self.raw_matrix = np.array([c.raw for c in self.cases])
        self.raw_matrix.setflags(write=False)
        self.labels = tuple(c.label for c in self.cases)
        self.ids = tuple(c.id for c in self.cases)
        self._by_id = {c.id: c for c in self.cases}
        self.dropped_rows = 0  # rows skipped by load_csv(drop_missing=True)

    @property
    def n_attrs(self) -> int:
        return len(self.attributes)

    @property
    def n_cases(self) -> int:
        return len(self.cases)

    def case(self, case_id: int) -> Case:
        try:
            return self._by_id[case_id]
        except KeyError:
            raise DataError(f"unknown case id {case_id}") from None

    def cases_of(self, label: str):
        if label not in self.classes:
            raise DataError(f"unknown class {label!r}")
        return [c for c in self.cases if c.label == label]

    def class_counts(self) -> dict:
        counts = {label: 0 for label in self.classes}
        for c in self.cases:
            counts[c.label] += 1
        return counts

    def denormalize(self, norm_values) -> np.ndarray:
        return np.array(
            [a.denormalize(v) for a, v in zip(self.attributes, norm_values)]
        )

    def to_dict(self) -> dict:
        return {
            "attributes": [a.to_dict() for a in self.attributes],
            "cases": [c.to_dict() for c in self.cases],
            "classes": [
                {"label": label, "color": self.colors[label], "count": count}
                for label, count in self.class_counts().items()
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Dataset":
        attrs = [AttributeMeta(**a) for a in doc["attributes"]]
        cases = [
            Case(
                id=c["id"],
                raw=c["raw"],
                norm=c["norm"],
                label=c["label"],
                synthetic=c.get("synthetic", False),
            )
            for c in doc["cases"]
        ]
        order = [c["label"] for c in doc["classes"]]
        colors = {c["label"]: c["color"] for c in doc["classes"]}
        return cls(attrs, cases, class_order=order, colors=colors)

    @classmethod
    def from_raw(cls, names, raw_matrix, labels, class_order=None) -> "Dataset":
        """Build a dataset from raw values, computing min-max normalization."""
        raw = np.asarray(raw_matrix, dtype=float)
        if raw.ndim != 2:
            raise DataError("raw_matrix must be 2-D")
        if raw.shape[0] != len(labels):
            raise DataError("one label per row required")
        if raw.shape[1] != len(names):
            raise DataError("one name per column required")
        attrs = [
            AttributeMeta(name, j, float(raw[:, j].min()), float(raw[:, j].max()))
            for j, name in enumerate(names)
        ]
        cases = []
        for i in range(raw.shape[0]):
            norm = [attrs[j].normalize(raw[i, j]) for j in range(len(names))]
            cases.append(Case(id=i, raw=raw[i], norm=norm, label=labels[i]))
        return cls(attrs, cases, class_order=class_order)


def load_csv(path, label_column, drop_missing: bool = False) -> Dataset:
    """Load a dataset from a header CSV file.

    label_column names (or 0-based-indexes) the class column; every other
    column must be numeric.  Cells matching one of the missing-value
    tokens either abort the load or, with drop_missing, drop the row.
    """
    if not os.path.exists(path):
        raise DataError(f"no such file: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        if isinstance(label_column, int) or (
            isinstance(label_column, str) and label_column.lstrip("-").isdigit()
        ):
            label_idx = int(label_column)
            if not 0 <= label_idx < len(header):
                raise DataError(f"label column index {label_idx} out of range")
        else:
            if label_column not in header:
                raise DataError(f"label column {label_column!r} not in header")
            label_idx = header.index(label_column)
        names = [h for i, h in enumerate(header) if i != label_idx]
        if len(set(names)) != len(names):
            raise DataError(f"{path}: duplicate attribute names")

        raw_rows, labels, dropped = [], [], 0
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise DataError(f"{path}: row {row_no} has {len(row)} cells, expected {len(header)}")
            values = []
            missing = False
            for i, cell in enumerate(row):
                if i == label_idx:
                    continue
                cell = cell.strip()
                if cell in MISSING_TOKENS:
                    if drop_missing:
                        missing = True
                        break
                    raise DataError(
                        f"{path}: missing value at row {row_no}, column {header[i]!r}"
                    )
                try:
                    value = float(cell)
                except ValueError:
                    raise DataError(
                        f"{path}: non-numeric cell {cell!r} at row {row_no}, column {header[i]!r}"
                    ) from None
                if not math.isfinite(value):
                    raise DataError(
                        f"{path}: non-finite value at row {row_no}, column {header[i]!r}"
                    )
                values.append(value)
            if missing:
                dropped += 1
                continue
            raw_rows.append(values)
            labels.append(row[label_idx].strip())
        if not raw_rows:
            raise DataError(f"{path}: no data rows")
    ds = Dataset.from_raw(names, np.array(raw_rows), labels)
    ds.dropped_rows = dropped
    return ds


def save_csv(dataset: Dataset, path, label_name: str = "label") -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([a.name for a in dataset.attributes] + [label_name])
        for c in dataset.cases:
            writer.writerow([repr(float(v)) for v in c.raw] + [c.label])


def _box_muller(rng: np.random.Generator, count: int) -> np.ndarray:
    """Standard-normal draws via the Box-Muller transform on PCG64 uniforms."""
    pairs = (count + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # (0, 1]: keeps the log finite
    u2 = rng.random(pairs)
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.empty(2 * pairs)
    z[0::2] = r * np.cos(2.0 * np.pi * u2)
    z[1::2] = r * np.sin(2.0 * np.pi * u2)
    return z[:count]


def gen_synthetic(n_cases_per_class, n_attrs, means, std, seed=0) -> Dataset:
    """Sample one normal-distributed class per entry of means.

    Every class draws n_cases_per_class cases of n_attrs i.i.d.
    normal(mean, std) values; the pooled sample is then min-max
    normalized.  The PCG64 + Box-Muller pipeline makes a seed reproduce
    bit-for-bit across platforms.
    """
    means = list(means)
    if not means:
        raise DataError("means must name at least one class")
    if n_cases_per_class < 1:
        raise DataError("n_cases_per_class must be >= 1")
    if n_attrs < 1:
        raise DataError("n_attrs must be >= 1")
    if std <= 0:
        raise DataError("std must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    rows, labels = [], []
    for ci, mean in enumerate(means):
        draws = _box_muller(rng, n_cases_per_class * n_attrs)
        block = mean + std * draws.reshape(n_cases_per_class, n_attrs)
        rows.append(block)
        labels.extend([f"class_{ci + 1}"] * n_cases_per_class)
    raw = np.vstack(rows)
    names = [f"x{j + 1}" for j in range(n_attrs)]
    return Dataset.from_raw(names, raw, labels)


def synth_mean(dataset: Dataset, label: str) -> Case:
    """Synthetic case holding the per-attribute mean of one class.

    The case is flagged synthetic and not inserted into the dataset; its
    id is one past the dataset's largest id.
    """
    members = dataset.cases_of(label)
    if not members:
        raise DataError(f"class {label!r} has no cases")
    raw = np.mean([c.raw for c in members], axis=0)
    norm = np.mean([c.norm for c in members], axis=0)
    return Case(
        id=max(dataset.ids) + 1,
        raw=raw,
        norm=norm,
        label=label,
        synthetic=True,
    )
