"""Occlusion removal: pure-node detection, line suppression, envelopes,
and the generalized decision tree built from envelope classifiers.

A node is a quantized position on one circle axis (B bins over the
normalized [0, 1] range).  A pure node holds cases of a single class;
an overlap node holds two or more classes.  Suppressing the connecting
lines of cases that sit entirely in well-populated pure nodes removes
most of the visual clutter while the marked nodes keep the information.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import DataError, DomainError
from .geometry import validate_axes, value_bin


@dataclass(frozen=True)
class NodeBin:
    axis_position: int
    bin_index: int
    case_ids: tuple
    classes: tuple
    purity: float

    @property
    def pure(self) -> bool:
        return len(self.classes) == 1

    @property
    def count(self) -> int:
        return len(self.case_ids)

    @property
    def majority(self) -> str:
        return self.classes[0]


def bin_nodes(dataset: Dataset, axes, bins: int = 100) -> list:
    """Bucket every case per axis; returns nonempty bins, pure and overlap."""
    if bins < 2:
        raise DomainError("bins must be >= 2")
    ordered = validate_axes(axes, require_monotone=False)
    out = []
    for axis in ordered:
        buckets: dict = {}
        for case in dataset.cases:
            b = value_bin(float(case.norm[axis.attr]), bins)
            buckets.setdefault(b, []).append(case)
        for b in sorted(buckets):
            members = buckets[b]
            counts: dict = {}
            for c in members:
                counts[c.label] = counts.get(c.label, 0) + 1
            ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
            out.append(
                NodeBin(
                    axis_position=axis.position,
                    bin_index=b,
                    case_ids=tuple(c.id for c in members),
                    classes=tuple(lab for lab, _ in ranked),
                    purity=ranked[0][1] / len(members),
                )
            )
    return out


def default_tau(dataset: Dataset) -> dict:
    """Per-class node threshold: max(2, 1% of the class size)."""
    return {
        label: max(2, math.ceil(0.01 * count))
        for label, count in dataset.class_counts().items()
    }


@dataclass
class ORResult:
    selected: list  # NodeBin, ordered by decreasing count
    suppressed_case_ids: list
    segments_before: int
    segments_after: int
    per_class: dict  # label -> (before, after)
    bins: int
    tau: dict

    def to_dict(self) -> dict:
        return {
            "selected": [
                {
                    "axis_position": n.axis_position,
                    "bin": n.bin_index,
                    "label": n.majority,
                    "count": n.count,
                }
                for n in self.selected
            ],
            "suppressed_case_ids": list(self.suppressed_case_ids),
            "segments_before": self.segments_before,
            "segments_after": self.segments_after,
            "per_class": {k: list(v) for k, v in self.per_class.items()},
            "bins": self.bins,
            "tau": dict(self.tau),
        }


def or_reduce(
    dataset: Dataset,
    axes,
    bins: int = 100,
    tau=None,
    closed: bool = False,
) -> ORResult:
    """Steps of the occlusion-removal pass over the current geometry.

    Pure nodes are counted and ordered, nodes clearing the threshold are
    selected and marked, and the connecting lines of a case are suppressed
    when every one of its vertices sits in a pure node and at least one
    sits in a selected node (a case with any overlap-node vertex never
    loses a segment).  tau may be a single count or a per-class mapping;
    the default is max(2, 1% of the class size).
    """
    ordered = validate_axes(axes, require_monotone=False)
    if tau is None:
        tau_map = default_tau(dataset)
    elif isinstance(tau, dict):
        tau_map = dict(tau)
    else:
        if int(tau) < 1:
            raise DomainError("tau must be >= 1")
        tau_map = {label: int(tau) for label in dataset.classes}

    nodes = bin_nodes(dataset, ordered, bins)
    pure = [n for n in nodes if n.pure]
    pure.sort(key=lambda n: (-n.count, n.axis_position, n.bin_index))
    selected = [n for n in pure if n.count >= tau_map[n.majority]]
    selected_keys = {(n.axis_position, n.bin_index) for n in selected}
    pure_keys = {(n.axis_position, n.bin_index) for n in pure}

    suppressed = []
    for case in dataset.cases:
        keys = [
            (axis.position, value_bin(float(case.norm[axis.attr]), bins))
            for axis in ordered
        ]
        if all(k in pure_keys for k in keys) and any(k in selected_keys for k in keys):
            suppressed.append(case.id)

    per_seg = len(ordered) if closed else len(ordered) - 1
    suppressed_set = set(suppressed)
    per_class: dict = {}
    for label in dataset.classes:
        members = dataset.cases_of(label)
        before = per_seg * len(members)
        kept = sum(1 for c in members if c.id not in suppressed_set)
        per_class[label] = (before, per_seg * kept)
    before = sum(b for b, _ in per_class.values())
    after = sum(a for _, a in per_class.values())
    return ORResult(
        selected=selected,
        suppressed_case_ids=suppressed,
        segments_before=before,
        segments_after=after,
        per_class=per_class,
        bins=bins,
        tau=tau_map,
    )


@dataclass(frozen=True)
class Envelope:
    label: str
    intervals: tuple  # one (lo, hi) per attribute, normalized units
    support: int
    env_id: str
    bins: int

    def contains(self, values) -> bool:
        values = np.asarray(getattr(values, "norm", values), dtype=float)
        if len(values) != len(self.intervals):
            raise DomainError("query dimensionality does not match the envelopes")
        for v, (lo, hi) in zip(values, self.intervals):
            inside = lo <= v < hi or (hi >= 1.0 and v == 1.0)
            if not inside:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "intervals": [[float(lo), float(hi)] for lo, hi in self.intervals],
            "support": self.support,
            "env_id": self.env_id,
            "bins": self.bins,
        }


def _envelope_at(dataset, ordered, label, bins, tau_map, case_pool):
    """Axis-aligned interval hull of the class's selected pure nodes.

    Selection is recomputed at the given bin count over case_pool; axes
    without a selected node stay unconstrained.
    """
    pool = [dataset.case(cid) for cid in case_pool]
    intervals = [[0.0, 1.0] for _ in range(dataset.n_attrs)]
    found = False
    for axis in ordered:
        buckets: dict = {}
        for case in pool:
            b = value_bin(float(case.norm[axis.attr]), bins)
            buckets.setdefault(b, []).append(case)
        sel_bins = []
        for b, members in buckets.items():
            labs = {c.label for c in members}
            if labs == {label} and len(members) >= tau_map[label]:
                sel_bins.append(b)
        if sel_bins:
            found = True
            intervals[axis.attr] = [min(sel_bins) / bins, (max(sel_bins) + 1) / bins]
    if not found:
        return None
    return tuple((lo, hi) for lo, hi in intervals)


def build_envelopes(
    dataset: Dataset,
    axes,
    bins: int = 100,
    tau=None,
    case_pool=None,
    max_refine: int = 3,
) -> list:
    """One axis-aligned band per class around its selected pure nodes.

    An envelope that still contains training cases of another class is
    rebuilt at doubled bin counts up to max_refine times, then dropped,
    so surviving envelopes are pure.  Envelopes are checked against the
    full dataset, supported by at least one case of their class.
    """
    ordered = validate_axes(axes, require_monotone=False)
    if tau is None:
        tau_map = default_tau(dataset)
    elif isinstance(tau, dict):
        tau_map = dict(tau)
    else:
        tau_map = {label: int(tau) for label in dataset.classes}
    if case_pool is None:
        case_pool = list(dataset.ids)

    envelopes = []
    for label in dataset.classes:
        env = None
        for refine in range(max_refine + 1):
            b = bins * (2**refine)
            intervals = _envelope_at(dataset, ordered, label, b, tau_map, case_pool)
            if intervals is None:
                break
            candidate = Envelope(
                label=label,
                intervals=intervals,
                support=0,
                env_id=f"{label}@{b}",
                bins=b,
            )
            impure = any(
                c.label != label and candidate.contains(c.norm)
                for c in dataset.cases
            )
            if not impure:
                support = sum(
                    1
                    for cid in case_pool
                    if dataset.case(cid).label == label
                    and candidate.contains(dataset.case(cid).norm)
                )
                if support >= 1:
                    env = Envelope(label, intervals, support, candidate.env_id, b)
                break
        if env is not None:
            envelopes.append(env)
    if not envelopes:
        return []
    return envelopes


OUTSIDE = "outside"


def envelope_classify(envelopes, values) -> str:
    """First envelope containing the query wins; none means outside."""
    for env in envelopes:
        if env.contains(values):
            return env.label
    return OUTSIDE


@dataclass
class DTLayer:
    iteration: int
    envelopes: list
    covered_ids: list

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "envelopes": [e.to_dict() for e in self.envelopes],
            "covered_ids": list(self.covered_ids),
        }


@dataclass
class GeneralizedDT:
    layers: list
    fallback_ids: list
    bins: int
    tau: dict

    def classify(self, values) -> str:
        for layer in self.layers:
            verdict = envelope_classify(layer.envelopes, values)
            if verdict != OUTSIDE:
                return verdict
        return OUTSIDE

    def to_dict(self) -> dict:
        return {
            "layers": [l.to_dict() for l in self.layers],
            "fallback_ids": list(self.fallback_ids),
            "bins": self.bins,
            "tau": dict(self.tau),
        }


def generalized_dt(
    dataset: Dataset,
    axes,
    bins: int = 100,
    tau=None,
    i_max: int = 50,
) -> GeneralizedDT:
    """Iterate select-pure-nodes / envelope / remove-covered into a tree.

    Each layer classifies the cases its envelopes capture; the shrinking
    remainder feeds the next layer until no envelope survives or the cap
    is reached.  Whatever remains becomes the fallback branch (natural
    k-NN territory).
    """
    ordered = validate_axes(axes, require_monotone=False)
    if tau is None:
        tau_map = default_tau(dataset)
    elif isinstance(tau, dict):
        tau_map = dict(tau)
    else:
        tau_map = {label: int(tau) for label in dataset.classes}

    remaining = list(dataset.ids)
    layers = []
    for iteration in range(1, i_max + 1):
        if not remaining:
            break
        envelopes = build_envelopes(
            dataset, ordered, bins=bins, tau=tau_map, case_pool=remaining
        )
        if not envelopes:
            break
        covered = [
            cid
            for cid in remaining
            if any(
                env.label == dataset.case(cid).label
                and env.contains(dataset.case(cid).norm)
                for env in envelopes
            )
        ]
        if not covered:
            break
        layers.append(DTLayer(iteration, envelopes, covered))
        covered_set = set(covered)
        remaining = [cid for cid in remaining if cid not in covered_set]
    return GeneralizedDT(layers=layers, fallback_ids=remaining, bins=bins, tau=tau_map)


def marked_node_glyphs(dataset: Dataset, axes, layout, result: ORResult) -> list:
    """Plot glyph descriptors for the selected pure nodes (bin centers)."""
    ordered = {a.position: a for a in validate_axes(axes, require_monotone=False)}
    glyphs = []
    for node in result.selected:
        axis = ordered[node.axis_position]
        center_value = (node.bin_index + 0.5) / result.bins
        theta = axis.theta_of(center_value)
        cx, cy = layout.axis_center(axis.position)
        radius = axis.radius * layout.axis_radius_scale(axis.position)
        glyphs.append(
            {
                "axis_position": node.axis_position,
                "bin": node.bin_index,
                "label": node.majority,
                "count": node.count,
                "point": [cx + radius * math.sin(theta), cy - radius * math.cos(theta)],
            }
        )
    return glyphs
