"""Command-line entry points.

Subcommands cover the whole pipeline: plot, straighten, knn, knne, sac,
linear, gic, or-reduce, gen and serve.  Every command accepts --seed and
produces deterministic output.  Exit codes: 0 ok, 1 usage error, 2 data
or domain error, 3 internal error; errors go to stderr as one JSON line.
The label column defaults to the CSV's last column.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .data import Dataset, gen_synthetic, load_csv, save_csv, synth_mean
from .errors import DataError, DomainError
from .geometry import (
    PlotLayout,
    default_axes,
    frequency_style,
    geometry_document,
    spread_layout,
    straighten_radius,
    straighten_rotation,
)
from .classifiers import (
    GICConfig,
    KnnFamily,
    cross_validate,
    gic_run,
    knne_train,
)
from .occlusion import marked_node_glyphs, or_reduce
from .render import StyleSheet, render_svg

DEFAULT_PORT = 8437

CONFIG_SCHEMA = "concentric-config/1"
LAYOUT_FIELDS = {"mode", "center", "closed", "axis_centers", "z_step", "radius_factor", "spacing"}
STYLE_FIELDS = {
    "class_colors",
    "stroke_width",
    "highlight_width",
    "opacity",
    "highlight_color",
    "background",
    "ring_color",
    "ring_width",
    "vertex_radius",
    "marked_node_scale",
    "tick_length",
    "fallback_color",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_config(path) -> dict:
    """Versioned layout + style configuration; unknown fields rejected."""
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except FileNotFoundError:
        raise DataError(f"no such config file: {path}") from None
    except json.JSONDecodeError as exc:
        raise DataError(f"config is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict) or cfg.get("schema") != CONFIG_SCHEMA:
        raise DataError(f"config must declare schema {CONFIG_SCHEMA!r}")
    unknown = set(cfg) - {"schema", "layout", "style"}
    if unknown:
        raise DataError(f"unknown config fields: {sorted(unknown)}")
    for section, allowed in (("layout", LAYOUT_FIELDS), ("style", STYLE_FIELDS)):
        extra = set(cfg.get(section, {})) - allowed
        if extra:
            raise DataError(f"unknown {section} fields: {sorted(extra)}")
    return cfg


def _layout_from_config(cfg: dict, n_axes: int) -> PlotLayout:
    section = dict(cfg.get("layout", {}))
    mode = section.pop("mode", "concentric")
    spacing = section.pop("spacing", 5.0)
    axis_centers = section.pop("axis_centers", None)
    layout = PlotLayout(
        center=tuple(section.pop("center", (0.0, 0.0))),
        closed=bool(section.pop("closed", False)),
        z_step=section.pop("z_step", 1.0),
        radius_factor=section.pop("radius_factor", 1.0),
    )
    if mode == "planar":
        centers = tuple(tuple(c) for c in axis_centers) if axis_centers else None
        return spread_layout(layout, "planar", n_axes=n_axes, spacing=spacing, centers=centers)
    if mode == "stacked":
        return spread_layout(
            layout, "stacked", z_step=layout.z_step, radius_factor=layout.radius_factor
        )
    return layout


def _style_from_config(cfg: dict) -> StyleSheet | None:
    section = cfg.get("style")
    return StyleSheet(**section) if section else None


def _load(args) -> Dataset:
    label = args.label_column
    if label is None:
        try:
            with open(args.csv, encoding="utf-8") as fh:
                header = fh.readline().strip().split(",")
        except OSError as exc:
            raise DataError(f"cannot read {args.csv}: {exc}") from None
        label = header[-1].strip()
    return load_csv(args.csv, label, drop_missing=args.drop_missing)


def _add_dataset_args(p):
    p.add_argument("csv", help="dataset file (header row, numeric cells)")
    p.add_argument("--label-column", default=None, help="class column; default: last")
    p.add_argument("--drop-missing", action="store_true", help="drop rows with missing cells")


def _add_common(p):
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> _Parser:
    parser = _Parser(prog="concentric", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plot", help="render a dataset to SVG")
    _add_dataset_args(p)
    _add_common(p)
    p.add_argument("--out", required=True)
    p.add_argument("--config", default=None, help="layout + style JSON")
    p.add_argument("--closed", action="store_true", help="close each contour")
    p.add_argument("--span", type=float, default=1.0)
    p.add_argument("--freq-bins", type=int, default=0, help="frequency styling bins")
    p.add_argument("--hulls", action="store_true", help="draw class hulls")
    p.add_argument("--highlight", type=int, nargs="*", default=[])
    p.add_argument("--mean-case", default=None, metavar="CLASS",
                   help="add the synthetic mean case of CLASS")

    p = sub.add_parser("straighten", help="straighten one case to a line")
    _add_dataset_args(p)
    _add_common(p)
    p.add_argument("--case", type=int, required=True)
    p.add_argument("--method", choices=("rotation", "radius"), default="rotation")
    p.add_argument("--target-theta", type=float, default=0.0)
    p.add_argument("--r1", type=float, default=1.0)
    p.add_argument("--out", default=None, help="optional SVG output")
    p.add_argument("--json", action="store_true", help="print the new axes as JSON")

    p = sub.add_parser("knn", help="cross-validate a single k")
    _add_dataset_args(p)
    _add_common(p)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("knne", help="train the k-NN ensemble")
    _add_dataset_args(p)
    _add_common(p)
    p.add_argument("--K", type=int, default=21, help="odd k sweep cap")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--json", action="store_true")

    for name, kinds in (("sac", ("sac",)), ("linear", ("linear",)), ("gic", None)):
        p = sub.add_parser(name, help=f"train the {name} iterative classifier")
        _add_dataset_args(p)
        _add_common(p)
        p.add_argument("--rho", type=float, default=1.0)
        p.add_argument("--min-region", type=float, default=0.05)
        p.add_argument("--i-max", type=int, default=None)
        if name == "gic":
            p.add_argument("--kinds", default="sac", help="comma list, e.g. sac,linear")
        p.add_argument("--json", action="store_true")
        p.set_defaults(fixed_kinds=kinds)

    p = sub.add_parser("or-reduce", help="occlusion removal over a dataset plot")
    _add_dataset_args(p)
    _add_common(p)
    p.add_argument("--bins", type=int, default=100)
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--out", default=None, help="reduced-plot SVG path")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gen", help="sample a synthetic normal-mixture dataset")
    _add_common(p)
    p.add_argument("--per-class", type=int, default=100)
    p.add_argument("--attrs", type=int, default=10)
    p.add_argument("--means", default="0.25,0.75", help="comma list, one per class")
    p.add_argument("--std", type=float, default=1.0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("serve", help="start the HTTP API")
    _add_common(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None,
                   help=f"default: $CONCENTRIC_PORT or {DEFAULT_PORT}")
    p.add_argument("--ui", default=None, metavar="DIR",
                   help="also serve a built front-end directory at /")
    return parser


def cmd_plot(args) -> int:
    ds = _load(args)
    cfg = load_config(args.config) if args.config else {}
    layout = _layout_from_config(cfg, ds.n_attrs)
    if args.closed:
        layout = PlotLayout(
            mode=layout.mode, center=layout.center, closed=True,
            axis_centers=layout.axis_centers, z_step=layout.z_step,
            radius_factor=layout.radius_factor,
        )
    axes = default_axes(ds.n_attrs, span=args.span)
    frequency = frequency_style(ds, axes, args.freq_bins) if args.freq_bins else None
    extra = [synth_mean(ds, args.mean_case)] if args.mean_case else []
    doc = geometry_document(
        ds,
        axes,
        layout,
        extra_cases=extra,
        highlight_ids=args.highlight,
        frequency=frequency,
        hull_labels=ds.classes if args.hulls else (),
    )
    svg = render_svg(doc, _style_from_config(cfg))
    with open(args.out, "wb") as fh:
        fh.write(svg)
    print(f"wrote {args.out}: {len(doc['rings'])} rings, {len(doc['polylines'])} polylines")
    return 0


def cmd_straighten(args) -> int:
    ds = _load(args)
    case = ds.case(args.case)
    axes = default_axes(ds.n_attrs)
    if args.method == "rotation":
        new_axes = straighten_rotation(case, axes, args.target_theta)
        extra = {"target_theta": args.target_theta}
    else:
        new_axes, a1 = straighten_radius(case, axes, args.r1)
        extra = {"a1": a1}
    payload = {"method": args.method, "axes": [a.to_dict() for a in new_axes], **extra}
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"straightened case {args.case} by {args.method}")
        for a in sorted(new_axes, key=lambda a: a.position):
            print(
                f"  axis {a.position}: attr={a.attr} R={a.radius:.6f} "
                f"rotation={a.rotation:.6f} direction={a.direction} span={a.span:.4f}"
            )
    if args.out:
        doc = geometry_document(ds, new_axes, PlotLayout(), highlight_ids=[case.id])
        with open(args.out, "wb") as fh:
            fh.write(render_svg(doc))
        print(f"wrote {args.out}")
    return 0


def _print_cv_table(rows):
    print("k     mean    std     kept")
    for row in rows:
        k = row["model_id"].split("-")[1]
        kept = "yes" if row.get("kept", True) else "no"
        print(f"{k:<5} {row['mean']:.4f}  {row['std']:.4f}  {kept}")


def cmd_knn(args) -> int:
    ds = _load(args)
    res = cross_validate(ds, KnnFamily(args.k), folds=args.folds, seed=args.seed)
    if args.json:
        print(json.dumps(res.to_dict(), sort_keys=True))
    else:
        _print_cv_table([res.to_dict()])
    return 0


def cmd_knne(args) -> int:
    ds = _load(args)
    model = knne_train(ds, K=args.K, folds=args.folds, seed=args.seed)
    doc = model.to_dict()
    if args.json:
        print(json.dumps(doc, sort_keys=True))
        return 0
    rows = [dict(r, kept=int(r["model_id"].split("-")[1]) not in model.dropped_ks)
            for r in doc["cv_table"]]
    _print_cv_table(rows)
    print(f"ensemble members: {', '.join(str(k) for k in model.member_ks)}")
    trace = " -> ".join(f"{a:.4f}" for a in model.greedy_trace)
    print(f"greedy trace: {trace}")
    print(f"ensemble accuracy: {model.accuracy:.4f}")
    return 0


def _format_rule(rule: dict, ds: Dataset) -> str:
    label = rule["label"]
    if rule["form"] == "linear":
        coeffs = ", ".join(f"{c:.4f}" for c in rule["coeffs"])
        lo = f"{rule['t1']:.6f} <= " if rule["t1"] is not None else ""
        hi = f" <= {rule['t2']:.6f}" if rule["t2"] is not None else ""
        return f"{lo}({coeffs}) . x{hi} -> {label}"
    attr = ds.attributes[rule["attr"]]

    def raw(t):
        return attr.denormalize(t)

    name = attr.name
    if rule["form"] == "interval":
        return (
            f"{rule['t1']:.6f} <= {name} <= {rule['t2']:.6f} "
            f"(raw {raw(rule['t1']):.4f}..{raw(rule['t2']):.4f}) -> {label}"
        )
    if rule["form"] == "lower":
        return f"{name} >= {rule['t1']:.6f} (raw {raw(rule['t1']):.4f}) -> {label}"
    return f"{name} <= {rule['t2']:.6f} (raw {raw(rule['t2']):.4f}) -> {label}"


def cmd_iterative(args) -> int:
    ds = _load(args)
    kinds = args.fixed_kinds or tuple(k.strip() for k in args.kinds.split(","))
    config = GICConfig(kinds=kinds, i_max=args.i_max, rho=args.rho, min_region=args.min_region)
    model = gic_run(ds, config)
    doc = model.to_dict()
    if args.json:
        print(json.dumps(doc, sort_keys=True))
        return 0
    for rec in model.records:
        print(f"iteration {rec.iteration} [{rec.kind}]: {len(rec.rule_ids)} rules")
        for rid in rec.rule_ids:
            print(f"  {_format_rule(doc['rules'][rid], ds)}  support={doc['rules'][rid]['support']}")
    residual = len(model.overlap_ids)
    pct = 100.0 * residual / ds.n_cases
    print(f"residual overlap: {residual} cases ({pct:.2f}%)")
    print(f"converged: {'yes' if model.converged else 'no'}, iterations: {model.iterations}")
    for w in model.warnings:
        print(f"warning: {w}")
    return 0


def cmd_or_reduce(args) -> int:
    ds = _load(args)
    axes = default_axes(ds.n_attrs)
    layout = PlotLayout()
    result = or_reduce(ds, axes, bins=args.bins, tau=args.tau)
    if args.json:
        print(json.dumps(result.to_dict(), sort_keys=True))
    else:
        print(
            f"segments: {result.segments_before} -> {result.segments_after} "
            f"({len(result.suppressed_case_ids)} cases suppressed, "
            f"{len(result.selected)} nodes marked)"
        )
    if args.out:
        doc = geometry_document(
            ds,
            axes,
            layout,
            suppressed_ids=result.suppressed_case_ids,
            marked_nodes=marked_node_glyphs(ds, axes, layout, result),
            metrics={
                "segments_before": result.segments_before,
                "segments_after": result.segments_after,
            },
        )
        with open(args.out, "wb") as fh:
            fh.write(render_svg(doc))
        print(f"wrote {args.out}")
    return 0


def cmd_gen(args) -> int:
    try:
        means = [float(m) for m in args.means.split(",") if m.strip() != ""]
    except ValueError:
        raise DataError(f"--means must be a comma list of numbers, got {args.means!r}") from None
    ds = gen_synthetic(args.per_class, args.attrs, means, args.std, seed=args.seed)
    save_csv(ds, args.out)
    print(f"wrote {args.out}: {ds.n_cases} cases, {ds.n_attrs} attributes, "
          f"{len(ds.classes)} classes")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    if args.ui and not os.path.isdir(args.ui):
        raise DataError(f"--ui directory not found: {args.ui}")
    port = args.port or int(os.environ.get("CONCENTRIC_PORT", DEFAULT_PORT))
    uvicorn.run(create_app(ui_dir=args.ui), host=args.host, port=port,
                log_level="warning")
    return 0


COMMANDS = {
    "plot": cmd_plot,
    "straighten": cmd_straighten,
    "knn": cmd_knn,
    "knne": cmd_knne,
    "sac": cmd_iterative,
    "linear": cmd_iterative,
    "gic": cmd_iterative,
    "or-reduce": cmd_or_reduce,
    "gen": cmd_gen,
    "serve": cmd_serve,
}


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"kind": kind, "error": message}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _fail("usage", str(exc), 1)
    try:
        return COMMANDS[args.command](args)
    except (DataError, DomainError) as exc:
        return _fail("data", str(exc), 2)
    except UsageError as exc:
        return _fail("usage", str(exc), 1)
    except BrokenPipeError:
        return 0
    except Exception as exc:  # pragma: no cover - internal failures
        return _fail("internal", f"{type(exc).__name__}: {exc}", 3)


if __name__ == "__main__":
    sys.exit(main())
