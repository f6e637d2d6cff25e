"""Straight-line constructions around the class mean.

A synthetic mean case summarizes a class; rotating every ring so that
case sits at one angle turns it into a radial line and makes outliers
pop out.  The alternative construction re-derives the radii from the
case's values (arc-length reading), which also yields a radial line.
"""

from pathlib import Path

import numpy as np

from concentric import (
    default_axes,
    geometry_document,
    load_csv,
    map_case,
    render_svg,
    straighten_radius,
    straighten_rotation,
    synth_mean,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

iris = load_csv(Path(__file__).parent.parent / "data" / "iris.csv", "species")
mean = synth_mean(iris, "setosa")
print("setosa mean (normalized):", np.round(mean.norm, 3))

axes = straighten_rotation(mean, default_axes(4), target_theta=0.0)
geom = map_case(mean, axes)
print("angles after rotation straightening:", np.round(geom.thetas, 12))

doc = geometry_document(iris, axes, extra_cases=[mean])
(OUT / "setosa_mean_straight.svg").write_bytes(render_svg(doc))
print("wrote", OUT / "setosa_mean_straight.svg")

radial_axes, a1 = straighten_radius(mean, default_axes(4), r1=1.0)
print("radius construction: a1 =", round(a1, 4),
      "radii =", [round(a.radius, 3) for a in radial_axes])
doc = geometry_document(iris, radial_axes, extra_cases=[mean])
(OUT / "setosa_mean_radial.svg").write_bytes(render_svg(doc))
print("wrote", OUT / "setosa_mean_radial.svg")
