"""Higher-dimensional tables and the alternative layouts.

Equidistant rings keep a 9-D or 30-D table readable (pan/zoom is the
viewport's job, radii stay fixed in world space).  The planar layout
spreads the circles side by side; the stacked layout exports 3-D
coordinates (x, y, z) as JSON instead of rendering.
"""

import json
from pathlib import Path

from concentric import (
    PlotLayout,
    default_axes,
    geometry_document,
    load_csv,
    render_svg,
    spread_layout,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)
DATA = Path(__file__).parent.parent / "data"

wbc9 = load_csv(DATA / "wbc9.csv", "class", drop_missing=True)
print(f"wbc9: {wbc9.n_cases} complete cases, {wbc9.n_attrs} attributes")
axes9 = default_axes(wbc9.n_attrs)
(OUT / "wbc9.svg").write_bytes(
    render_svg(geometry_document(wbc9, axes9), viewport=(-10, -10, 20, 20))
)
print("wrote", OUT / "wbc9.svg")

wbc30 = load_csv(DATA / "wbc30.csv", "diagnosis")
axes30 = default_axes(wbc30.n_attrs)
(OUT / "wbc30.svg").write_bytes(render_svg(geometry_document(wbc30, axes30)))
print("wrote", OUT / "wbc30.svg", f"({wbc30.n_attrs} rings)")

iris = load_csv(DATA / "iris.csv", "species")
axes = default_axes(4)
planar = spread_layout(PlotLayout(), "planar", n_axes=4, spacing=9.0)
(OUT / "iris_planar.svg").write_bytes(
    render_svg(geometry_document(iris, axes, planar))
)
print("wrote", OUT / "iris_planar.svg")

stacked = spread_layout(PlotLayout(), "stacked", z_step=1.5, radius_factor=0.8)
doc = geometry_document(iris, axes, stacked)
(OUT / "iris_stacked.json").write_text(json.dumps(doc, indent=1))
first = doc["polylines"][0]["points"]
print("stacked export: first case vertices (x, y, z):")
for pt in first:
    print("  ", [round(v, 3) for v in pt])
