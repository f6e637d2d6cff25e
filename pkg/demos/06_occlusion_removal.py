"""Occlusion removal: marked pure nodes, suppressed lines, envelopes,
and the generalized decision tree grown from them.
"""

from pathlib import Path

from concentric import (
    PlotLayout,
    build_envelopes,
    default_axes,
    envelope_classify,
    generalized_dt,
    geometry_document,
    load_csv,
    or_reduce,
    render_svg,
)
from concentric.occlusion import marked_node_glyphs

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

iris = load_csv(Path(__file__).parent.parent / "data" / "iris.csv", "species")
axes = default_axes(4)
layout = PlotLayout()

result = or_reduce(iris, axes, bins=100, tau=3)
print(f"selected pure nodes: {len(result.selected)}")
print(f"suppressed cases: {len(result.suppressed_case_ids)}")
print(f"segments before/after: {result.segments_before} -> {result.segments_after}")

doc = geometry_document(
    iris,
    axes,
    layout,
    suppressed_ids=result.suppressed_case_ids,
    marked_nodes=marked_node_glyphs(iris, axes, layout, result),
)
(OUT / "iris_occlusion_reduced.svg").write_bytes(render_svg(doc))
print("wrote", OUT / "iris_occlusion_reduced.svg")

envelopes = build_envelopes(iris, axes, bins=100, tau=1)
for env in envelopes:
    print(f"envelope {env.env_id}: support {env.support}")
print("query at the setosa center ->",
      envelope_classify(envelopes, iris.cases[0].norm))

dt = generalized_dt(iris, axes, bins=100, tau=1, i_max=10)
print(f"generalized DT: {len(dt.layers)} layers, fallback {len(dt.fallback_ids)} cases")
for layer in dt.layers:
    print(f"  layer {layer.iteration}: covers {len(layer.covered_ids)} cases")
