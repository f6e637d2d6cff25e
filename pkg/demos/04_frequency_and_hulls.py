"""Frequency-weighted strokes and convex hulls per class.

Shared segments draw wider and more transparent, so dense bundles stop
hiding each other; hulls wrap each class's vertices for quick
between-class comparisons.
"""

from pathlib import Path

from concentric import (
    class_hull,
    default_axes,
    frequency_style,
    geometry_document,
    load_csv,
    render_svg,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

iris = load_csv(Path(__file__).parent.parent / "data" / "iris.csv", "species")
axes = default_axes(4)

styling = frequency_style(iris, axes, bins=12)
print("most shared segment occurs", styling.max_count, "times")
print("width/opacity for frequency 1:", styling.style(1))
print("width/opacity for the maximum:", styling.style(styling.max_count))

doc = geometry_document(iris, axes, frequency=styling)
(OUT / "iris_frequency.svg").write_bytes(render_svg(doc))
print("wrote", OUT / "iris_frequency.svg")

for label in iris.classes:
    hull, degenerate = class_hull(iris, label, axes)
    print(f"{label}: hull of {len(hull)} vertices, degenerate={degenerate}")

doc = geometry_document(iris, axes, hull_labels=iris.classes)
(OUT / "iris_hulls.svg").write_bytes(render_svg(doc))
print("wrote", OUT / "iris_hulls.svg")
