"""k-NN, the paired cross-validation sweep, the greedy ensemble, and
the validation-tick plot (outward tick = misclassified, inward = correct).
"""

from pathlib import Path

import numpy as np

from concentric import (
    KnnModel,
    default_axes,
    geometry_document,
    knn_classify,
    knne_train,
    load_csv,
    render_knn_validation,
    synth_mean,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

iris = load_csv(Path(__file__).parent.parent / "data" / "iris.csv", "species")

model = knne_train(iris, K=21, seed=7)
print("per-k cross-validation table:")
for row in model.cv_table:
    print(f"  {row['model_id']}: mean {row['mean']:.4f} std {row['std']:.4f}")
print("ensemble members:", model.member_ks)
print("greedy accuracy trace:", [round(a, 4) for a in model.greedy_trace])

mean = synth_mean(iris, "setosa")
knn3 = KnnModel.fit(iris, 3)
label, neighbors = knn_classify(knn3, mean)
print(f"3-NN around the setosa mean -> {label}, neighbors {neighbors}")

# leave-one-out 3-NN predictions drive the tick plot
points = iris.norm_matrix
predictions = {}
for i, case in enumerate(iris.cases):
    mask = np.arange(iris.n_cases) != i
    loo = KnnModel(3, points[mask], tuple(np.array(iris.labels)[mask]),
                   tuple(np.array(iris.ids)[mask]))
    predictions[case.id] = knn_classify(loo, points[i])[0]
wrong = sum(1 for c in iris.cases if predictions[c.id] != c.label)
print(f"leave-one-out 3-NN errors: {wrong}/150")

doc = geometry_document(iris, default_axes(4))
svg = render_knn_validation(doc, predictions, focus_label="versicolor")
(OUT / "iris_knn_validation.svg").write_bytes(svg)
print("wrote", OUT / "iris_knn_validation.svg")
