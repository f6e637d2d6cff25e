"""Lossless concentric-coordinates engine for n-D data classification."""

from .data import (
    AttributeMeta,
    Case,
    Dataset,
    gen_synthetic,
    load_csv,
    save_csv,
    synth_mean,
)
from .errors import DataError, DomainError
from .geometry import (
    AxisConfig,
    PlotLayout,
    PolylineGeom,
    class_hull,
    default_axes,
    frequency_style,
    geometry_document,
    invert_case,
    map_case,
    reorder_axes,
    scale_spans,
    spread_layout,
    straighten_radius,
    straighten_rotation,
)
from .classifiers import (
    CvResult,
    EnsembleModel,
    GICConfig,
    IterModel,
    KnnModel,
    Rule,
    cross_validate,
    ensemble_predict,
    gic_run,
    knn_classify,
    knne_train,
    linear_iter_train,
    predict,
    sac_train,
    stratified_folds,
)
from .occlusion import (
    Envelope,
    GeneralizedDT,
    NodeBin,
    ORResult,
    bin_nodes,
    build_envelopes,
    envelope_classify,
    generalized_dt,
    or_reduce,
)
from .render import (
    StyleSheet,
    build_drawlist,
    render_knn_validation,
    render_svg,
)

__version__ = "0.1.0"
