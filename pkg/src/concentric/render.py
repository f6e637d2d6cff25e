"""Deterministic SVG / drawlist emission of concentric-coordinate geometry.

Rendering is a pure function of (geometry document, stylesheet,
viewport): identical inputs give byte-identical SVG.  The drawlist is
the same primitive stream as JSON, which the browser UI paints onto a
canvas; the SVG writer serializes it 1:1.  Geometry documents already
use screen orientation (north above the center, clockwise positive), so
no axis flip happens here.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .errors import DomainError

_HEX = re.compile(r"^#[0-9a-fA-F]{6}$")


@dataclass(frozen=True)
class StyleSheet:
    class_colors: dict = field(default_factory=dict)
    stroke_width: float = 1.2
    highlight_width: float = 2.4
    opacity: float = 0.85
    highlight_color: str = "#ffff00"
    background: str = "#ffffff"
    ring_color: str = "#8a8a8a"
    ring_width: float = 0.75
    vertex_radius: float = 0.045
    marked_node_scale: float = 3.0  # selected pure nodes draw as larger circles
    tick_length: float = 0.3
    fallback_color: str = "#777777"

    def __post_init__(self):
        for name, color in list(self.class_colors.items()) + [
            ("highlight", self.highlight_color),
            ("background", self.background),
            ("ring", self.ring_color),
        ]:
            if not _HEX.match(color):
                raise DomainError(f"{name}: colors must be 6-digit hex, got {color!r}")
        for name, width in (
            ("stroke_width", self.stroke_width),
            ("highlight_width", self.highlight_width),
            ("ring_width", self.ring_width),
        ):
            if width <= 0:
                raise DomainError(f"{name} must be positive")

    def color_of(self, label: str) -> str:
        return self.class_colors.get(label, self.fallback_color)


def style_from_document(doc: dict, **overrides) -> StyleSheet:
    colors = {c["label"]: c["color"] for c in doc.get("classes", [])}
    return StyleSheet(class_colors=colors, **overrides)


def _doc_points(doc: dict):
    for poly in doc["polylines"]:
        for pt in poly["points"]:
            yield pt[0], pt[1]
    for ring in doc["rings"]:
        cx, cy = ring["center"]
        r = ring["radius"]
        yield cx - r, cy - r
        yield cx + r, cy + r


def default_viewport(doc: dict, pad: float = 0.08):
    xs, ys = zip(*_doc_points(doc))
    min_x, max_x, min_y, max_y = min(xs), max(xs), min(ys), max(ys)
    w, h = max_x - min_x, max_y - min_y
    w = w or 1.0
    h = h or 1.0
    return (
        min_x - pad * w,
        min_y - pad * h,
        w * (1 + 2 * pad),
        h * (1 + 2 * pad),
    )


def _check_document(doc: dict) -> None:
    if not isinstance(doc, dict) or doc.get("schema") != "concentric-geometry/1":
        raise DomainError("not a concentric geometry document")
    for key in ("rings", "polylines", "classes", "layout"):
        if key not in doc:
            raise DomainError(f"geometry document is missing {key!r}")
    if doc["layout"]["mode"] == "stacked":
        raise DomainError("stacked layouts are export-only; render a 2-D mode")


def build_drawlist(doc: dict, style: StyleSheet | None = None, viewport=None) -> dict:
    """Resolve a geometry document into an ordered primitive stream."""
    _check_document(doc)
    style = style or style_from_document(doc)
    viewport = tuple(viewport) if viewport else default_viewport(doc)
    if viewport[2] <= 0 or viewport[3] <= 0:
        raise DomainError("empty viewport")
    prims = []
    prims.append({"kind": "rect", "role": "background", "fill": style.background})

    for ring in doc["rings"]:
        cx, cy = ring["center"]
        prims.append(
            {
                "kind": "circle",
                "role": "ring",
                "cx": cx,
                "cy": cy,
                "r": ring["radius"],
                "stroke": style.ring_color,
                "stroke_width": style.ring_width,
                "fill": None,
                "ref": ring["position"],
            }
        )
        # small tick marking the north point, the angular origin of the axis
        prims.append(
            {
                "kind": "line",
                "role": "north-tick",
                "x1": cx,
                "y1": cy - ring["radius"],
                "x2": cx,
                "y2": cy - ring["radius"] - style.tick_length * 0.5,
                "stroke": style.ring_color,
                "stroke_width": style.ring_width,
                "ref": ring["position"],
            }
        )

    ring_by_pos = {ring["position"]: ring for ring in doc["rings"]}
    for env in doc.get("envelopes", []):
        color = style.color_of(env["label"])
        for ring in doc["rings"]:
            lo, hi = env["intervals"][ring["attr"]]
            if (lo, hi) == (0.0, 1.0):
                continue
            prims.append(
                {
                    "kind": "arc",
                    "role": "envelope-band",
                    "cx": ring["center"][0],
                    "cy": ring["center"][1],
                    "r": ring["radius"],
                    "theta1": _ring_theta(ring, lo),
                    "theta2": _ring_theta(ring, hi),
                    "stroke": color,
                    "stroke_width": 4.0 * style.ring_width,
                    "opacity": 0.35,
                    "ref": env["env_id"],
                }
            )

    colors = {c["label"]: c["color"] for c in doc["classes"]}
    plain = [p for p in doc["polylines"] if not p["highlight"]]
    highlighted = [p for p in doc["polylines"] if p["highlight"]]
    for poly in sorted(plain, key=lambda p: p["case"]):
        _polyline_prims(prims, poly, colors.get(poly["label"], style.fallback_color), style)
    for hulls in doc.get("hulls", []):
        prims.append(
            {
                "kind": "polygon",
                "role": "hull",
                "points": hulls["points"],
                "stroke": style.color_of(hulls["label"]),
                "stroke_width": style.stroke_width,
                "fill": None,
                "opacity": 0.9,
                "ref": hulls["label"],
            }
        )
    for node in doc.get("marked_nodes", []):
        prims.append(
            {
                "kind": "circle",
                "role": "marked-node",
                "cx": node["point"][0],
                "cy": node["point"][1],
                "r": style.vertex_radius * style.marked_node_scale,
                "stroke": style.color_of(node["label"]),
                "stroke_width": style.ring_width,
                "fill": style.color_of(node["label"]),
                "opacity": 0.9,
                "ref": f"{node['axis_position']}:{node['bin']}",
            }
        )
    for poly in sorted(highlighted, key=lambda p: p["case"]):
        _polyline_prims(prims, poly, style.highlight_color, style, highlight=True)

    return {"viewport": list(viewport), "primitives": prims}


def _ring_theta(ring: dict, value: float) -> float:
    if ring.get("arc_valued"):
        return ring["rotation"] + ring["direction"] * value / ring["radius"]
    return ring["rotation"] + ring["direction"] * 2 * math.pi * ring["span"] * value


def _polyline_prims(prims, poly, color, style, highlight=False):
    if poly.get("suppressed"):
        return
    points = [[p[0], p[1]] for p in poly["points"]]
    closed = poly["closed"]
    width = poly.get("width") or (
        style.highlight_width if highlight else style.stroke_width
    )
    opacity = poly.get("opacity") or (1.0 if highlight else style.opacity)
    seg_styles = poly.get("segment_styles")
    if seg_styles:
        for i, (w, o) in enumerate(seg_styles):
            prims.append(
                {
                    "kind": "line",
                    "role": "case-segment",
                    "x1": points[i][0],
                    "y1": points[i][1],
                    "x2": points[i + 1][0],
                    "y2": points[i + 1][1],
                    "stroke": color,
                    "stroke_width": w,
                    "opacity": o,
                    "ref": poly["case"],
                }
            )
        if closed:
            w, o = seg_styles[-1]
            prims.append(
                {
                    "kind": "line",
                    "role": "case-segment",
                    "x1": points[-1][0],
                    "y1": points[-1][1],
                    "x2": points[0][0],
                    "y2": points[0][1],
                    "stroke": color,
                    "stroke_width": w,
                    "opacity": o,
                    "ref": poly["case"],
                }
            )
    else:
        path = points + [points[0]] if closed else points
        prims.append(
            {
                "kind": "polyline",
                "role": "case-line",
                "points": path,
                "stroke": color,
                "stroke_width": width,
                "opacity": opacity,
                "ref": poly["case"],
                "label": poly["label"],
            }
        )
    for pt in points:
        prims.append(
            {
                "kind": "circle",
                "role": "vertex-dot",
                "cx": pt[0],
                "cy": pt[1],
                "r": style.vertex_radius,
                "stroke": None,
                "stroke_width": 0.1,
                "fill": color,
                "opacity": opacity,
                "ref": poly["case"],
            }
        )


# ---------------------------------------------------------------------------
# SVG serialization


def _fmt(v: float) -> str:
    return f"{v:.6f}"


def _svg_element(prim: dict) -> str:
    kind = prim["kind"]
    stroke = prim.get("stroke")
    fill = prim.get("fill")
    parts = []
    if kind == "circle":
        parts.append(
            f'<circle class="{prim["role"]}" cx="{_fmt(prim["cx"])}" cy="{_fmt(prim["cy"])}" r="{_fmt(prim["r"])}"'
        )
    elif kind == "line":
        parts.append(
            f'<line class="{prim["role"]}" x1="{_fmt(prim["x1"])}" y1="{_fmt(prim["y1"])}" '
            f'x2="{_fmt(prim["x2"])}" y2="{_fmt(prim["y2"])}"'
        )
    elif kind == "polyline":
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in prim["points"])
        parts.append(f'<polyline class="{prim["role"]}" points="{pts}"')
    elif kind == "polygon":
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in prim["points"])
        parts.append(f'<polygon class="{prim["role"]}" points="{pts}"')
    elif kind == "arc":
        r = prim["r"]
        t1, t2 = prim["theta1"], prim["theta2"]
        x1 = prim["cx"] + r * math.sin(t1)
        y1 = prim["cy"] - r * math.cos(t1)
        x2 = prim["cx"] + r * math.sin(t2)
        y2 = prim["cy"] - r * math.cos(t2)
        large = 1 if abs(t2 - t1) > math.pi else 0
        sweep = 1 if t2 > t1 else 0
        parts.append(
            f'<path class="{prim["role"]}" d="M {_fmt(x1)} {_fmt(y1)} '
            f'A {_fmt(r)} {_fmt(r)} 0 {large} {sweep} {_fmt(x2)} {_fmt(y2)}"'
        )
    else:
        raise DomainError(f"unknown primitive kind {kind!r}")
    parts.append(f' stroke="{stroke}"' if stroke else ' stroke="none"')
    if prim.get("stroke_width") is not None:
        parts.append(f' stroke-width="{_fmt(prim["stroke_width"])}"')
    parts.append(f' fill="{fill}"' if fill else ' fill="none"')
    if prim.get("opacity") is not None:
        parts.append(f' opacity="{_fmt(prim["opacity"])}"')
    if prim.get("ref") is not None:
        parts.append(f' data-ref="{escape(str(prim["ref"]))}"')
    parts.append("/>")
    return "".join(parts)


def serialize_drawlist(drawlist: dict, pixels_per_unit: float = 90.0) -> bytes:
    vx, vy, vw, vh = drawlist["viewport"]
    width = max(1, round(vw * pixels_per_unit))
    height = max(1, round(vh * pixels_per_unit))
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="{_fmt(vx)} {_fmt(vy)} {_fmt(vw)} {_fmt(vh)}">',
    ]
    for prim in drawlist["primitives"]:
        if prim["kind"] == "rect":
            lines.append(
                f'<rect class="background" x="{_fmt(vx)}" y="{_fmt(vy)}" '
                f'width="{_fmt(vw)}" height="{_fmt(vh)}" fill="{prim["fill"]}"/>'
            )
        else:
            lines.append(_svg_element(prim))
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def render_svg(
    doc: dict,
    style: StyleSheet | None = None,
    viewport=None,
    pixels_per_unit: float = 90.0,
) -> bytes:
    """Serialize a geometry document to deterministic SVG 1.1 bytes."""
    return serialize_drawlist(build_drawlist(doc, style, viewport), pixels_per_unit)


def knn_validation_document(doc: dict, predictions: dict, focus_label=None) -> dict:
    """Attach correctness ticks: outward at the outermost vertex for a
    wrong prediction, inward for a correct one.

    predictions maps case id -> predicted label and must cover exactly
    the rendered cases.  With focus_label, other classes are suppressed.
    """
    case_ids = [p["case"] for p in doc["polylines"]]
    if set(predictions) != set(case_ids):
        raise DomainError("prediction/case count mismatch")
    out = dict(doc)
    out["polylines"] = [dict(p) for p in doc["polylines"]]
    ticks = []
    for poly in out["polylines"]:
        if focus_label is not None and poly["label"] != focus_label:
            poly["suppressed"] = True
            continue
        outer = poly["points"][-1]
        ox, oy = outer[0], outer[1]
        # radial direction measured from the outermost ring's center
        ring = max(doc["rings"], key=lambda r: r["position"])
        cx, cy = ring["center"]
        norm = math.hypot(ox - cx, oy - cy) or 1.0
        ux, uy = (ox - cx) / norm, (oy - cy) / norm
        correct = predictions[poly["case"]] == poly["label"]
        sign = -1.0 if correct else 1.0
        ticks.append(
            {
                "case": poly["case"],
                "correct": correct,
                "x1": ox,
                "y1": oy,
                "x2": ox + sign * 0.35 * ux,
                "y2": oy + sign * 0.35 * uy,
            }
        )
    out["validation_ticks"] = ticks
    return out


def render_knn_validation(
    doc: dict,
    predictions: dict,
    style: StyleSheet | None = None,
    viewport=None,
    focus_label=None,
) -> bytes:
    marked = knn_validation_document(doc, predictions, focus_label)
    style = style or style_from_document(doc)
    drawlist = build_drawlist(marked, style, viewport)
    for tick in marked["validation_ticks"]:
        drawlist["primitives"].append(
            {
                "kind": "line",
                "role": "knn-tick-correct" if tick["correct"] else "knn-tick-wrong",
                "x1": tick["x1"],
                "y1": tick["y1"],
                "x2": tick["x2"],
                "y2": tick["y2"],
                "stroke": "#000000",
                "stroke_width": style.stroke_width,
                "ref": tick["case"],
            }
        )
    return serialize_drawlist(drawlist)
