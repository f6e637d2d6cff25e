"""Tuning the axes: rotation, direction, order and span.

The same data can look very different after rotating a ring, reversing
its direction, reordering attributes (manually, by single-attribute
importance, or along the cheapest Hamiltonian path), or shrinking spans
proportional to classifier coefficients.  None of it loses information.
"""

from dataclasses import replace
from pathlib import Path

import numpy as np

from concentric import (
    default_axes,
    geometry_document,
    invert_case,
    load_csv,
    map_case,
    render_svg,
    reorder_axes,
    scale_spans,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

iris = load_csv(Path(__file__).parent.parent / "data" / "iris.csv", "species")
axes = default_axes(4)

rotated = [replace(a, rotation=0.4 * a.position) for a in axes]
reversed_axis = [a if a.position != 2 else replace(a, direction=-1) for a in axes]

by_importance = reorder_axes(axes, strategy="importance", dataset=iris)
print("importance order (innermost first):",
      [iris.attributes[a.attr].name for a in sorted(by_importance, key=lambda a: a.position)])

by_path = reorder_axes(axes, strategy="hamiltonian", dataset=iris)
print("hamiltonian order:",
      [iris.attributes[a.attr].name for a in sorted(by_path, key=lambda a: a.position)])

narrow = scale_spans(axes, [1.0, 0.4, 1.0, 0.2])
print("spans after scaling:", [a.span for a in narrow])

for name, config in (
    ("rotated", rotated),
    ("reversed_axis2", reversed_axis),
    ("importance_order", by_importance),
    ("scaled_spans", narrow),
):
    doc = geometry_document(iris, config)
    (OUT / f"iris_{name}.svg").write_bytes(render_svg(doc))
    case = iris.cases[17]
    err = np.abs(invert_case(map_case(case, config), config)[:4] - case.norm).max()
    print(f"{name}: wrote SVG, inversion error {err:.2e}")
