"""First contact: map the iris table onto concentric circle axes.

Each attribute owns one ring (attribute 0 innermost), each case becomes
a polyline with one vertex per ring, and the plot is lossless: the
normalized values come back exactly from the drawn angles.
"""

from pathlib import Path

import numpy as np

from concentric import (
    PlotLayout,
    default_axes,
    geometry_document,
    invert_case,
    load_csv,
    map_case,
    render_svg,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

iris = load_csv(Path(__file__).parent.parent / "data" / "iris.csv", "species")
axes = default_axes(iris.n_attrs)

case = iris.cases[0]
geom = map_case(case, axes)
print("case 0 angles (radians, clockwise from north):", np.round(geom.thetas, 3))
print("round trip error:", np.abs(invert_case(geom, axes) - case.norm).max())

for closed in (False, True):
    doc = geometry_document(iris, axes, PlotLayout(closed=closed))
    name = "iris_closed.svg" if closed else "iris_open.svg"
    (OUT / name).write_bytes(render_svg(doc))
    print("wrote", OUT / name)
