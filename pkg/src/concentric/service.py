"""HTTP+JSON API exposing one interactive analysis session.

A single SessionState holds the dataset, axes, layout, trained models
and the occlusion-removal state.  Every mutation bumps a monotone
revision counter; clients may send their last seen revision with a
mutation and get 409 when it is stale (optimistic concurrency, one
writer at a time).  Reads serve consistent snapshots.

Status codes: 400 malformed request, 404 unknown id, 409 stale
revision, 422 domain error.
"""

from __future__ import annotations

import os
import tempfile
import threading

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from .data import Dataset, load_csv, synth_mean
from .errors import DataError, DomainError
from .geometry import (
    AxisConfig,
    PlotLayout,
    default_axes,
    geometry_document,
    reorder_axes,
    scale_spans,
    spread_layout,
    straighten_radius,
    straighten_rotation,
)
from .classifiers import (
    GICConfig,
    KnnFamily,
    KnnModel,
    cross_validate,
    gic_run,
    knn_classify,
    knne_train,
)
from .occlusion import marked_node_glyphs, or_reduce
from .render import build_drawlist, render_svg, style_from_document


class ConflictError(Exception):
    pass


class NotFoundError(Exception):
    pass


class SessionState:
    """One analyst, one dataset, one revision counter."""

    def __init__(self):
        self.lock = threading.Lock()
        self.revision = 0
        self.dataset: Dataset | None = None
        self.axes: list[AxisConfig] = []
        self.layout = PlotLayout()
        self.models: dict = {}
        self.or_result = None
        self.extra_cases: list = []
        self.highlights: set = set()

    def require_dataset(self) -> Dataset:
        if self.dataset is None:
            raise NotFoundError("no dataset loaded")
        return self.dataset

    def load(self, dataset: Dataset) -> None:
        self.dataset = dataset
        self.axes = default_axes(dataset.n_attrs)
        self.layout = PlotLayout()
        self.models = {}
        self.or_result = None
        self.extra_cases = []
        self.highlights = set()

    def check_revision(self, revision) -> None:
        if revision is not None and revision != self.revision:
            raise ConflictError(
                f"stale revision {revision}, server is at {self.revision}"
            )

    def case_lookup(self, case_id: int):
        ds = self.require_dataset()
        for extra in self.extra_cases:
            if extra.id == case_id:
                return extra
        try:
            return ds.case(case_id)
        except DataError:
            raise NotFoundError(f"unknown case id {case_id}") from None

    def document(self) -> dict:
        ds = self.require_dataset()
        marked = None
        suppressed = ()
        metrics = None
        if self.or_result is not None:
            marked = marked_node_glyphs(ds, self.axes, self.layout, self.or_result)
            suppressed = self.or_result.suppressed_case_ids
            metrics = {
                "segments_before": self.or_result.segments_before,
                "segments_after": self.or_result.segments_after,
            }
        return geometry_document(
            ds,
            self.axes,
            self.layout,
            extra_cases=self.extra_cases,
            highlight_ids=self.highlights,
            suppressed_ids=suppressed,
            marked_nodes=marked,
            metrics=metrics,
        )


class DatasetUpload(BaseModel):
    csv: str
    label_column: str | int | None = None
    drop_missing: bool = False


class AxisPatch(BaseModel):
    position: int | None = None
    attr: int | None = None
    rotation: float | None = None
    radius: float | None = None
    span: float | None = None
    direction: int | None = None


class AxesRequest(BaseModel):
    revision: int | None = None
    patches: list[AxisPatch] = []
    order: list[int] | None = None
    order_strategy: str | None = None
    span_coefficients: list[float] | None = None
    closed: bool | None = None
    layout_mode: str | None = None
    spacing: float | None = None
    z_step: float | None = None
    radius_factor: float | None = None


class StraightenRequest(BaseModel):
    revision: int | None = None
    case: int
    method: str = "rotation"
    target_theta: float = 0.0
    r1: float = 1.0


class MeanCaseRequest(BaseModel):
    revision: int | None = None
    label: str


class KnnRequest(BaseModel):
    k: int = 3
    folds: int = 10
    seed: int = 0
    query: list[float] | None = None
    case: int | None = None


class KnneRequest(BaseModel):
    K: int = 21
    folds: int = 10
    seed: int = 0


class IterRequest(BaseModel):
    rho: float = 1.0
    min_region: float = 0.05
    i_max: int | None = None
    kinds: list[str] | None = None


class OrRequest(BaseModel):
    revision: int | None = None
    bins: int = 100
    tau: int | None = None
    clear: bool = False


def create_app(state: SessionState | None = None, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="concentric", version="0.1.0")
    app.state.session = state or SessionState()

    def session() -> SessionState:
        return app.state.session

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(DomainError)
    async def domain_error(request: Request, exc: DomainError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.exception_handler(DataError)
    async def data_error(request: Request, exc: DataError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.exception_handler(NotFoundError)
    async def not_found(request: Request, exc: NotFoundError):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.exception_handler(ConflictError)
    async def conflict(request: Request, exc: ConflictError):
        return JSONResponse(status_code=409, content={"error": str(exc)})

    @app.get("/api/dataset")
    def get_dataset():
        s = session()
        ds = s.require_dataset()
        return {"revision": s.revision, "dataset": ds.to_dict()}

    @app.post("/api/dataset")
    def post_dataset(body: DatasetUpload):
        s = session()
        with s.lock:
            label = body.label_column
            if label is None:
                header = body.csv.splitlines()[0].split(",") if body.csv else []
                if not header or not header[-1].strip():
                    raise DataError("empty CSV upload")
                label = header[-1].strip()
            with tempfile.NamedTemporaryFile(
                "w", suffix=".csv", delete=False, encoding="utf-8"
            ) as fh:
                fh.write(body.csv)
                path = fh.name
            try:
                dataset = load_csv(path, label, drop_missing=body.drop_missing)
            finally:
                os.unlink(path)
            s.load(dataset)
            s.revision += 1
            return {"revision": s.revision, "cases": dataset.n_cases,
                    "attributes": dataset.n_attrs}

    @app.post("/api/axes")
    def post_axes(body: AxesRequest):
        s = session()
        with s.lock:
            ds = s.require_dataset()
            s.check_revision(body.revision)
            axes = list(s.axes)
            by_position = {a.position: i for i, a in enumerate(axes)}
            by_attr = {a.attr: i for i, a in enumerate(axes)}
            for patch in body.patches:
                if patch.position is not None:
                    idx = by_position.get(patch.position)
                elif patch.attr is not None:
                    idx = by_attr.get(patch.attr)
                else:
                    raise DomainError("axis patch needs position or attr")
                if idx is None:
                    raise NotFoundError("unknown axis")
                axis = axes[idx]
                axes[idx] = AxisConfig(
                    attr=axis.attr,
                    position=axis.position,
                    radius=patch.radius if patch.radius is not None else axis.radius,
                    rotation=patch.rotation if patch.rotation is not None else axis.rotation,
                    direction=patch.direction if patch.direction is not None else axis.direction,
                    span=patch.span if patch.span is not None else axis.span,
                    arc_valued=axis.arc_valued,
                )
            if body.order is not None:
                axes = reorder_axes(axes, order=body.order)
            elif body.order_strategy is not None:
                axes = reorder_axes(axes, strategy=body.order_strategy, dataset=ds)
            if body.span_coefficients is not None:
                axes = scale_spans(axes, body.span_coefficients)
            layout = s.layout
            if body.layout_mode is not None:
                params = {}
                if body.spacing is not None:
                    params["spacing"] = body.spacing
                if body.z_step is not None:
                    params["z_step"] = body.z_step
                if body.radius_factor is not None:
                    params["radius_factor"] = body.radius_factor
                layout = spread_layout(layout, body.layout_mode, n_axes=ds.n_attrs, **params)
            if body.closed is not None:
                layout = PlotLayout(
                    mode=layout.mode, center=layout.center, closed=body.closed,
                    axis_centers=layout.axis_centers, z_step=layout.z_step,
                    radius_factor=layout.radius_factor,
                )
            # validate the final family before committing
            geometry_document(ds, axes, layout)
            s.axes = axes
            s.layout = layout
            s.revision += 1
            return {"revision": s.revision, "axes": [a.to_dict() for a in axes],
                    "layout": layout.to_dict()}

    @app.post("/api/straighten")
    def post_straighten(body: StraightenRequest):
        s = session()
        with s.lock:
            s.require_dataset()
            s.check_revision(body.revision)
            case = s.case_lookup(body.case)
            if body.method == "rotation":
                new_axes = straighten_rotation(case, s.axes, body.target_theta)
                extra = {"target_theta": body.target_theta}
            elif body.method == "radius":
                new_axes, a1 = straighten_radius(case, s.axes, body.r1)
                extra = {"a1": a1}
            else:
                raise DomainError(f"unknown straighten method {body.method!r}")
            s.axes = new_axes
            s.highlights.add(case.id)
            s.revision += 1
            return {"revision": s.revision, "axes": [a.to_dict() for a in new_axes],
                    **extra}

    @app.post("/api/mean-case")
    def post_mean_case(body: MeanCaseRequest):
        s = session()
        with s.lock:
            ds = s.require_dataset()
            s.check_revision(body.revision)
            case = synth_mean(ds, body.label)
            existing_ids = {c.id for c in s.extra_cases}
            while case.id in existing_ids:
                case = type(case)(
                    id=case.id + 1, raw=case.raw, norm=case.norm,
                    label=case.label, synthetic=True,
                )
            s.extra_cases.append(case)
            s.revision += 1
            return {"revision": s.revision, "case": case.to_dict()}

    @app.post("/api/classify/knn")
    def post_knn(body: KnnRequest):
        s = session()
        with s.lock:
            ds = s.require_dataset()
            result = cross_validate(ds, KnnFamily(body.k), folds=body.folds, seed=body.seed)
            model = KnnModel.fit(ds, body.k)
            model_id = f"knn-{body.k}"
            s.models[model_id] = model
            payload = {"model_id": model_id, "cv": result.to_dict()}
            if body.query is not None or body.case is not None:
                if body.query is not None:
                    query = np.asarray(body.query, dtype=float)
                else:
                    query = s.case_lookup(body.case).norm
                label, neighbors = knn_classify(model, query)
                payload["prediction"] = label
                payload["neighbors"] = neighbors
            s.revision += 1
            payload["revision"] = s.revision
            return payload

    @app.post("/api/classify/knne")
    def post_knne(body: KnneRequest):
        s = session()
        with s.lock:
            ds = s.require_dataset()
            model = knne_train(ds, K=body.K, folds=body.folds, seed=body.seed)
            model_id = f"knne-{body.seed}"
            s.models[model_id] = model
            s.revision += 1
            return {"revision": s.revision, "model_id": model_id,
                    "model": model.to_dict()}

    def _iterative(kind_default, body: IterRequest):
        s = session()
        with s.lock:
            ds = s.require_dataset()
            kinds = tuple(body.kinds) if body.kinds else kind_default
            config = GICConfig(kinds=kinds, i_max=body.i_max, rho=body.rho,
                               min_region=body.min_region)
            model = gic_run(ds, config)
            model_id = f"{'-'.join(config.kinds)}-{len(s.models)}"
            s.models[model_id] = model
            s.revision += 1
            return {"revision": s.revision, "model_id": model_id,
                    "model": model.to_dict()}

    @app.post("/api/classify/sac")
    def post_sac(body: IterRequest):
        return _iterative(("sac",), body)

    @app.post("/api/classify/linear")
    def post_linear(body: IterRequest):
        return _iterative(("linear",), body)

    @app.post("/api/classify/gic")
    def post_gic(body: IterRequest):
        return _iterative(("sac",), body)

    @app.post("/api/or-reduce")
    def post_or(body: OrRequest):
        s = session()
        with s.lock:
            ds = s.require_dataset()
            s.check_revision(body.revision)
            if body.clear:
                s.or_result = None
                s.revision += 1
                return {"revision": s.revision, "cleared": True}
            result = or_reduce(ds, s.axes, bins=body.bins, tau=body.tau)
            s.or_result = result
            s.revision += 1
            return {"revision": s.revision, "metrics": result.to_dict()}

    @app.get("/api/geometry")
    def get_geometry():
        s = session()
        with s.lock:
            doc = s.document()
            # stacked layouts are export-only: ship the 3-D document
            # instead of a drawlist
            if doc["layout"]["mode"] == "stacked":
                drawlist = None
                export = doc
            else:
                drawlist = build_drawlist(doc, style_from_document(doc))
                export = None
            return {
                "revision": s.revision,
                "axes": doc["axes"],
                "layout": doc["layout"],
                "classes": doc["classes"],
                "metrics": doc["metrics"],
                "drawlist": drawlist,
                "export": export,
            }

    @app.get("/api/svg")
    def get_svg():
        s = session()
        with s.lock:
            doc = s.document()
            svg = render_svg(doc)
        return Response(content=svg, media_type="image/svg+xml")

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        # mounted last so /api/* keeps precedence
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
