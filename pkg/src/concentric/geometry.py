"""Concentric-coordinates geometry: lossless case-to-polyline mapping.

Each attribute owns one circle axis.  A case's normalized value v lands
on its circle at the angle

    theta = rotation + direction * 2*pi*span * v

measured clockwise from the circle's north point, and the plane point is

    p = (cx + R*sin(theta), cy - R*cos(theta))

With that convention theta=0 sits above the center on screen and
positive theta advances clockwise, so the render module never flips an
axis.  Inversion divides the stored (unwrapped) angle back out, which is
what makes the plot lossless.

Axes marked arc_valued interpret the value as an arc length instead:
theta = rotation + direction * v / R.  The radius-straightening
construction produces such axes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from .data import Dataset
from .errors import DataError, DomainError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AxisConfig:
    attr: int
    position: int
    radius: float
    rotation: float = 0.0
    direction: int = 1
    span: float = 1.0
    arc_valued: bool = False

    def __post_init__(self):
        if self.radius <= 0:
            raise DomainError(f"axis {self.attr}: radius must be positive")
        if self.direction not in (1, -1):
            raise DomainError(f"axis {self.attr}: direction must be +1 or -1")
        if not 0.0 < self.span <= 1.0:
            raise DomainError(f"axis {self.attr}: span must be in (0, 1]")

    def theta_of(self, value: float) -> float:
        if self.arc_valued:
            return self.rotation + self.direction * value / self.radius
        return self.rotation + self.direction * TWO_PI * self.span * value

    def value_of(self, theta: float) -> float:
        if self.arc_valued:
            v = (theta - self.rotation) * self.direction * self.radius
        else:
            v = (theta - self.rotation) * self.direction / (TWO_PI * self.span)
        # Angles are stored unwrapped, so v is already the exact value up to
        # rounding; wrap only a genuinely out-of-range angle (e.g. after a
        # full-turn interactive drag).
        if 0.0 <= v <= 1.0:
            return v
        if abs(v) < 1e-9:
            return 0.0
        if abs(v - 1.0) < 1e-9:
            return 1.0
        if self.arc_valued:
            return v
        return v % 1.0

    def to_dict(self) -> dict:
        return {
            "attr": self.attr,
            "position": self.position,
            "radius": self.radius,
            "rotation": self.rotation,
            "direction": self.direction,
            "span": self.span,
            "arc_valued": self.arc_valued,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "AxisConfig":
        return cls(**doc)


@dataclass(frozen=True)
class PlotLayout:
    mode: str = "concentric"  # concentric | planar | stacked
    center: tuple = (0.0, 0.0)
    closed: bool = False
    axis_centers: tuple | None = None  # planar: one center per axis position
    z_step: float = 1.0  # stacked
    radius_factor: float = 1.0  # stacked: R scaled by factor**position

    def __post_init__(self):
        if self.mode not in ("concentric", "planar", "stacked"):
            raise DomainError(f"unknown layout mode {self.mode!r}")
        if self.mode == "stacked":
            if self.z_step <= 0:
                raise DomainError("stacked layout needs z_step > 0")
            if self.radius_factor <= 0:
                raise DomainError("stacked layout needs radius_factor > 0")

    def axis_center(self, position: int) -> tuple:
        if self.mode == "planar":
            if self.axis_centers is None or position >= len(self.axis_centers):
                raise DomainError("planar layout is missing an axis center")
            return tuple(self.axis_centers[position])
        return tuple(self.center)

    def axis_radius_scale(self, position: int) -> float:
        if self.mode == "stacked":
            return self.radius_factor**position
        return 1.0

    def axis_z(self, position: int):
        if self.mode == "stacked":
            return position * self.z_step
        return None

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "center": list(self.center),
            "closed": self.closed,
            "axis_centers": [list(c) for c in self.axis_centers]
            if self.axis_centers
            else None,
            "z_step": self.z_step,
            "radius_factor": self.radius_factor,
        }


@dataclass
class PolylineGeom:
    case_id: int
    label: str
    positions: np.ndarray  # axis position per vertex, ascending
    thetas: np.ndarray  # unwrapped angle per vertex
    points: np.ndarray  # (n, 2) plane points, or (n, 3) in stacked mode
    closed: bool = False
    width: float | None = None
    opacity: float | None = None
    highlight: bool = False
    suppressed: bool = False
    segment_styles: list | None = None  # per-segment (width, opacity)

    def to_dict(self) -> dict:
        return {
            "case": self.case_id,
            "label": self.label,
            "positions": [int(p) for p in self.positions],
            "thetas": [float(t) for t in self.thetas],
            "points": [[float(x) for x in pt] for pt in self.points],
            "closed": self.closed,
            "width": self.width,
            "opacity": self.opacity,
            "highlight": self.highlight,
            "suppressed": self.suppressed,
            "segment_styles": self.segment_styles,
        }


def default_axes(n_attrs: int, r0: float = 1.0, dr: float = 1.0, span: float = 1.0):
    """Equidistant rings, attribute 0 innermost."""
    return [
        AxisConfig(attr=i, position=i, radius=r0 + i * dr, span=span)
        for i in range(n_attrs)
    ]


def validate_axes(axes, require_monotone: bool = True) -> list:
    """Check the axis family invariants; returns axes sorted by position."""
    axes = list(axes)
    n = len(axes)
    if n == 0:
        raise DomainError("no axes")
    if sorted(a.position for a in axes) != list(range(n)):
        raise DomainError("axis positions must be a permutation of 0..n-1")
    if len({a.attr for a in axes}) != n:
        raise DomainError("axes must reference distinct attributes")
    ordered = sorted(axes, key=lambda a: a.position)
    if require_monotone and not any(a.arc_valued for a in axes):
        radii = [a.radius for a in ordered]
        if any(r2 <= r1 for r1, r2 in zip(radii, radii[1:])):
            raise DomainError("radii must increase strictly with position")
    return ordered


def _case_values(case) -> np.ndarray:
    values = getattr(case, "norm", case)
    return np.asarray(values, dtype=float)


def map_case(case, axes, layout: PlotLayout | None = None) -> PolylineGeom:
    """Map one case onto the circle axes; one vertex per axis."""
    layout = layout or PlotLayout()
    ordered = validate_axes(axes, require_monotone=layout.mode != "stacked")
    values = _case_values(case)
    dims = 3 if layout.mode == "stacked" else 2
    thetas = np.empty(len(ordered))
    points = np.empty((len(ordered), dims))
    for i, axis in enumerate(ordered):
        if axis.attr >= len(values):
            raise DomainError(f"axis refers to missing attribute {axis.attr}")
        theta = axis.theta_of(values[axis.attr])
        cx, cy = layout.axis_center(axis.position)
        radius = axis.radius * layout.axis_radius_scale(axis.position)
        thetas[i] = theta
        points[i, 0] = cx + radius * math.sin(theta)
        points[i, 1] = cy - radius * math.cos(theta)
        if dims == 3:
            points[i, 2] = layout.axis_z(axis.position)
    return PolylineGeom(
        case_id=getattr(case, "id", -1),
        label=getattr(case, "label", ""),
        positions=np.array([a.position for a in ordered]),
        thetas=thetas,
        points=points,
        closed=layout.closed,
    )


def invert_case(geom: PolylineGeom, axes) -> np.ndarray:
    """Recover normalized values from a mapped polyline (lossless)."""
    ordered = validate_axes(axes, require_monotone=False)
    out = np.full(max(a.attr for a in ordered) + 1, np.nan)
    for i, axis in enumerate(ordered):
        out[axis.attr] = axis.value_of(float(geom.thetas[i]))
    return out


def straighten_rotation(case, axes, target_theta: float = 0.0) -> list:
    """Rotate every circle so the case's vertices share target_theta.

    Returns new axes (input order preserved); all other cases re-map
    under the new rotations.
    """
    values = _case_values(case)
    new_axes = []
    for axis in axes:
        if axis.attr >= len(values):
            raise DomainError(f"axis refers to missing attribute {axis.attr}")
        if axis.arc_valued:
            delta = target_theta - axis.direction * values[axis.attr] / axis.radius
        else:
            delta = (
                target_theta
                - axis.direction * TWO_PI * axis.span * values[axis.attr]
            )
        new_axes.append(replace(axis, rotation=delta))
    return new_axes


def straighten_radius(case, axes, r1: float = 1.0, eps: float = 1e-6):
    """Re-derive radii so the case forms a radial straight line.

    The innermost value is read as an arc length subtending
    a1 = x1/r1 radians; every other radius becomes x_k/a1.  The returned
    axes are arc-valued with rotation 0 and clockwise direction, and the
    increasing-radii invariant is suspended for them (the construction
    does not guarantee monotone radii).  Returns (new_axes, a1).
    """
    if r1 <= 0:
        raise DomainError("r1 must be positive")
    ordered = validate_axes(axes, require_monotone=False)
    values = _case_values(case)
    xs = []
    for axis in ordered:
        if axis.attr >= len(values):
            raise DomainError(f"axis refers to missing attribute {axis.attr}")
        xs.append(float(values[axis.attr]))
    if any(x <= eps for x in xs):
        raise DomainError(
            "straighten-by-radius needs every value above "
            f"{eps}; use the rotation method for this case"
        )
    a1 = xs[0] / r1
    new_axes = []
    for axis, x in zip(ordered, xs):
        radius = r1 if axis.position == 0 else x / a1
        new_axes.append(
            replace(axis, radius=radius, rotation=0.0, direction=1, arc_valued=True)
        )
    return new_axes, a1


def scale_spans(axes, coefficients) -> list:
    """Spread or shrink the per-axis spans proportionally to coefficients.

    s_k = max(0.05, |a_k| / max|a_j|); a zero coefficient shrinks its axis
    to the 0.05 floor instead of collapsing it.
    """
    axes = list(axes)
    coefficients = [float(c) for c in coefficients]
    if len(coefficients) != len(axes):
        raise DomainError("one coefficient per axis required")
    peak = max(abs(c) for c in coefficients)
    if peak == 0:
        raise DomainError("all-zero coefficients")
    return [
        replace(axis, span=max(0.05, abs(c) / peak))
        for axis, c in zip(axes, coefficients)
    ]


# ---------------------------------------------------------------------------
# axis ordering


def gini_importance(values: np.ndarray, labels) -> float:
    """Impurity decrease of the best single-threshold split on one attribute."""
    values = np.asarray(values, dtype=float)
    labels = np.asarray(labels)
    n = len(values)

    def gini(mask):
        total = int(mask.sum())
        if total == 0:
            return 0.0
        _, counts = np.unique(labels[mask], return_counts=True)
        return 1.0 - float(((counts / total) ** 2).sum())

    parent = gini(np.ones(n, dtype=bool))
    order = np.argsort(values, kind="stable")
    sorted_vals = values[order]
    best = parent
    for i in range(n - 1):
        if sorted_vals[i] == sorted_vals[i + 1]:
            continue
        threshold = 0.5 * (sorted_vals[i] + sorted_vals[i + 1])
        left = values <= threshold
        weighted = (left.sum() / n) * gini(left) + ((~left).sum() / n) * gini(~left)
        best = min(best, weighted)
    return parent - best


def attribute_distances(dataset: Dataset) -> np.ndarray:
    """Pairwise (1 - |Pearson correlation|) distances between attributes."""
    X = dataset.raw_matrix
    n = X.shape[1]
    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            si, sj = X[:, i].std(), X[:, j].std()
            if si == 0 or sj == 0:
                d = 1.0  # constant attribute: treat as uncorrelated
            else:
                r = float(np.corrcoef(X[:, i], X[:, j])[0, 1])
                d = 1.0 - abs(r)
            dist[i, j] = dist[j, i] = d
    return dist


def _held_karp_path(dist: np.ndarray):
    """Exact minimum-weight open path over all nodes (n <= ~12)."""
    n = dist.shape[0]
    if n == 1:
        return [0]
    full = (1 << n) - 1
    dp = {}
    for j in range(n):
        dp[(1 << j, j)] = (0.0, None)
    for size in range(2, n + 1):
        for subset in itertools.combinations(range(n), size):
            mask = 0
            for j in subset:
                mask |= 1 << j
            for j in subset:
                prev_mask = mask ^ (1 << j)
                best = None
                for i in subset:
                    if i == j:
                        continue
                    entry = dp.get((prev_mask, i))
                    if entry is None:
                        continue
                    cost = entry[0] + dist[i, j]
                    if best is None or cost < best[0]:
                        best = (cost, i)
                if best is not None:
                    dp[(mask, j)] = best
    end = min(range(n), key=lambda j: (dp[(full, j)][0], j))
    path = [end]
    mask = full
    while dp[(mask, path[-1])][1] is not None:
        prev = dp[(mask, path[-1])][1]
        mask ^= 1 << path[-1]
        path.append(prev)
    path.reverse()
    return path


def _greedy_path(dist: np.ndarray):
    """Nearest-neighbor heuristic, best over all start nodes."""
    n = dist.shape[0]
    best = None
    for start in range(n):
        path = [start]
        remaining = set(range(n)) - {start}
        cost = 0.0
        while remaining:
            nxt = min(remaining, key=lambda j: (dist[path[-1], j], j))
            cost += dist[path[-1], nxt]
            remaining.remove(nxt)
            path.append(nxt)
        if best is None or cost < best[0]:
            best = (cost, path)
    return best[1]


def hamiltonian_order(dataset: Dataset) -> list:
    """Attribute order along the cheapest open path of pairwise distances."""
    dist = attribute_distances(dataset)
    n = dist.shape[0]
    path = _held_karp_path(dist) if n <= 10 else _greedy_path(dist)
    return min(path, list(reversed(path)))  # canonical orientation


def importance_order(dataset: Dataset) -> list:
    """Attributes sorted most-important first (decision-stump importance)."""
    scores = [
        (-gini_importance(dataset.norm_matrix[:, j], dataset.labels), j)
        for j in range(dataset.n_attrs)
    ]
    return [j for _, j in sorted(scores)]


def reorder_axes(axes, order=None, strategy: str = "manual", dataset=None) -> list:
    """Reassign ring positions; radii stay increasing with position.

    order (manual strategy) lists attribute indices innermost first.  The
    computed strategies need the dataset: "importance" puts the strongest
    single-attribute discriminator innermost, "hamiltonian" follows the
    cheapest open path under pairwise attribute distance.
    """
    ordered = validate_axes(axes, require_monotone=False)
    attrs = [a.attr for a in ordered]
    if strategy == "manual":
        if order is None:
            raise DomainError("manual reorder needs an explicit order")
        order = [int(i) for i in order]
        if sorted(order) != sorted(attrs):
            raise DomainError("order must be a permutation of the axis attributes")
    elif strategy in ("importance", "hamiltonian"):
        if dataset is None:
            raise DomainError(f"{strategy} reorder needs the dataset")
        order = importance_order(dataset) if strategy == "importance" else hamiltonian_order(dataset)
        order = [a for a in order if a in set(attrs)]
    else:
        raise DomainError(f"unknown reorder strategy {strategy!r}")

    radii = [a.radius for a in ordered]  # by position, ascending
    by_attr = {a.attr: a for a in ordered}
    return [
        replace(by_attr[attr], position=pos, radius=radii[pos])
        for pos, attr in enumerate(order)
    ]


# ---------------------------------------------------------------------------
# hulls, frequency styling, layout spreading


def convex_hull_2d(points: np.ndarray):
    """Monotone-chain hull; returns (vertices ccw, degenerate flag)."""
    pts = np.unique(np.asarray(points, dtype=float), axis=0)
    if len(pts) == 1:
        return pts, True
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(tuple(p))
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(tuple(p))
    hull = np.array(lower[:-1] + upper[:-1])
    return hull, len(hull) < 3


def class_hull(dataset: Dataset, label: str, axes, layout: PlotLayout | None = None):
    """2-D convex hull of every mapped vertex of one class's cases."""
    layout = layout or PlotLayout()
    if layout.mode == "stacked":
        raise DomainError("hulls need a 2-D layout (concentric or planar)")
    members = dataset.cases_of(label)
    points = np.vstack([map_case(c, axes, layout).points for c in members])
    return convex_hull_2d(points)


FREQ_WIDTH_MIN = 0.5
FREQ_WIDTH_MAX = 6.0
FREQ_OPACITY_MAX = 0.9
FREQ_OPACITY_MIN = 0.25


def value_bin(value: float, bins: int) -> int:
    return min(int(math.floor(bins * value)), bins - 1)


class FrequencyStyling:
    """Per-segment width/opacity derived from segment frequency.

    cases sharing the same (source bin, target bin) pair on consecutive
    axes count toward one segment; higher frequency draws wider and less
    opaque, lower frequency thinner and more opaque.
    """

    def __init__(self, counts: dict, bins: int, attr_pairs: list):
        self.counts = counts
        self.bins = bins
        self.attr_pairs = attr_pairs
        self.max_count = max(counts.values()) if counts else 1

    def style(self, frequency: int):
        if self.max_count <= 1:
            return FREQ_WIDTH_MIN, FREQ_OPACITY_MAX
        t = (frequency - 1) / (self.max_count - 1)
        width = FREQ_WIDTH_MIN + t * (FREQ_WIDTH_MAX - FREQ_WIDTH_MIN)
        opacity = FREQ_OPACITY_MAX - t * (FREQ_OPACITY_MAX - FREQ_OPACITY_MIN)
        return width, opacity

    def for_case(self, case) -> list:
        values = _case_values(case)
        out = []
        for pair_idx, (src_attr, dst_attr) in enumerate(self.attr_pairs):
            key = (
                pair_idx,
                value_bin(values[src_attr], self.bins),
                value_bin(values[dst_attr], self.bins),
            )
            out.append(self.style(self.counts[key]))
        return out


def frequency_style(dataset: Dataset, axes, bins: int = 20) -> FrequencyStyling:
    if bins < 1:
        raise DomainError("bins must be >= 1")
    ordered = validate_axes(axes, require_monotone=False)
    attr_pairs = [
        (ordered[i].attr, ordered[i + 1].attr) for i in range(len(ordered) - 1)
    ]
    counts: dict = {}
    for case in dataset.cases:
        for pair_idx, (src, dst) in enumerate(attr_pairs):
            key = (
                pair_idx,
                value_bin(case.norm[src], bins),
                value_bin(case.norm[dst], bins),
            )
            counts[key] = counts.get(key, 0) + 1
    return FrequencyStyling(counts, bins, attr_pairs)


def spread_layout(layout: PlotLayout, mode: str, n_axes: int | None = None, **params) -> PlotLayout:
    """Switch to a planar or stacked arrangement of the circle axes."""
    if mode == "planar":
        centers = params.get("centers")
        if centers is None:
            if n_axes is None:
                raise DomainError("planar spread needs n_axes or explicit centers")
            spacing = float(params.get("spacing", 5.0))
            if spacing <= 0:
                raise DomainError("spacing must be positive")
            cy = layout.center[1]
            centers = tuple((layout.center[0] + k * spacing, cy) for k in range(n_axes))
        return replace(
            layout, mode="planar", axis_centers=tuple(tuple(c) for c in centers)
        )
    if mode == "stacked":
        z_step = float(params.get("z_step", 1.0))
        factor = float(params.get("radius_factor", 1.0))
        return replace(
            layout, mode="stacked", z_step=z_step, radius_factor=factor,
            axis_centers=None,
        )
    if mode == "concentric":
        return replace(layout, mode="concentric", axis_centers=None)
    raise DomainError(f"unknown layout mode {mode!r}")


# ---------------------------------------------------------------------------
# geometry document (the JSON contract consumed by render, service and UI)

SCHEMA = "concentric-geometry/1"


def geometry_document(
    dataset: Dataset,
    axes,
    layout: PlotLayout | None = None,
    extra_cases=(),
    highlight_ids=(),
    frequency: FrequencyStyling | None = None,
    suppressed_ids=(),
    marked_nodes=None,
    envelopes=None,
    hull_labels=(),
    metrics=None,
) -> dict:
    layout = layout or PlotLayout()
    ordered = validate_axes(axes, require_monotone=layout.mode != "stacked")
    highlight_ids = set(highlight_ids)
    suppressed_ids = set(suppressed_ids)

    rings = []
    for axis in ordered:
        cx, cy = layout.axis_center(axis.position)
        rings.append(
            {
                "position": axis.position,
                "attr": axis.attr,
                "name": dataset.attributes[axis.attr].name,
                "center": [cx, cy],
                "radius": axis.radius * layout.axis_radius_scale(axis.position),
                "z": layout.axis_z(axis.position),
                "rotation": axis.rotation,
                "direction": axis.direction,
                "span": axis.span,
                "arc_valued": axis.arc_valued,
            }
        )

    polylines = []
    for case in list(dataset.cases) + list(extra_cases):
        geom = map_case(case, ordered, layout)
        geom.highlight = case.id in highlight_ids or case.synthetic
        geom.suppressed = case.id in suppressed_ids
        if frequency is not None:
            geom.segment_styles = [list(s) for s in frequency.for_case(case)]
        polylines.append(geom.to_dict())

    hulls = []
    for label in hull_labels:
        pts, degenerate = class_hull(dataset, label, ordered, layout)
        hulls.append(
            {
                "label": label,
                "points": [[float(x), float(y)] for x, y in pts],
                "degenerate": degenerate,
            }
        )

    doc = {
        "schema": SCHEMA,
        "layout": layout.to_dict(),
        "axes": [a.to_dict() for a in ordered],
        "rings": rings,
        "classes": [
            {"label": label, "color": dataset.colors[label]}
            for label in dataset.classes
        ],
        "polylines": polylines,
        "hulls": hulls,
        "marked_nodes": marked_nodes or [],
        "envelopes": envelopes or [],
        "metrics": metrics or {},
    }
    return doc
