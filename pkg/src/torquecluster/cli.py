"""Command-line front door: fit, eval and serve."""

from __future__ import annotations

import argparse
import sys

from . import engine, io, metrics
from .cuts import CutSpec, apply_cut, execute_cut, gamma_ranking
from .exceptions import InputError, TorqueClusteringError
from .linkage import Linkage, Metric


def _parse_cut(value: str) -> CutSpec:
    if value == "auto":
        return CutSpec("auto")
    if value.startswith("topk:"):
        try:
            k = int(value.split(":", 1)[1])
        except ValueError:
            raise InputError(f"invalid topk cut {value!r}; expected topk:K") from None
        return CutSpec("topk", k=k)
    if value.startswith("manual:"):
        path = value.split(":", 1)[1]
        if not path:
            raise InputError("manual cut requires a file of connection ids")
        return CutSpec("manual", ids=io.load_manual_ids(path))
    raise InputError(f"unknown cut {value!r}; expected auto, topk:K or manual:FILE")


def _resolve_modes(args) -> tuple[Metric, Linkage]:
    if args.input_kind == "matrix":
        if args.metric not in (None, "precomputed"):
            raise InputError("matrix input implies --metric precomputed")
        if args.approx:
            raise InputError("approximate mode requires point input")
        if args.linkage == "centroid":
            raise InputError("centroid linkage requires point input")
        return Metric.PRECOMPUTED, Linkage(args.linkage)
    if args.metric == "precomputed":
        raise InputError("precomputed metric requires --input-kind matrix")
    metric = Metric(args.metric or "euclidean")
    linkage = Linkage.MEAN_REPRESENTATIVE if args.approx else Linkage(args.linkage)
    return metric, linkage


def cmd_fit(args) -> int:
    metric, linkage = _resolve_modes(args)
    data = matrix = None
    if args.input_kind == "matrix":
        matrix = io.load_distance_csv(args.input)
    else:
        data, _ = io.load_points_csv(args.input, args.label_col)
    result = engine.run(data=data, matrix=matrix, metric=metric, linkage=linkage)
    removed, warnings = execute_cut(result, _parse_cut(args.cut))
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    partition = apply_cut(result, removed)
    if args.labels_out:
        io.write_labels(args.labels_out, partition.labels)
    if args.decision_graph_out:
        io.write_decision_graph(args.decision_graph_out, result)
    if args.hierarchy_out:
        io.write_hierarchy(args.hierarchy_out, result)
    if args.gamma_out:
        io.write_gamma_ranking(args.gamma_out, gamma_ranking(result.connections))
    print(f"K={partition.k}")
    print(f"rounds={result.merge_round_count}")
    return 0


def cmd_eval(args) -> int:
    pred = io.load_labels(args.pred)
    truth = io.load_labels(args.truth)
    score = {"nmi": metrics.nmi, "acc": metrics.acc, "ami": metrics.ami}[args.metric](
        pred, truth)
    print(f"{score:.4f}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app()
    if args.dataset:
        data, _ = io.load_points_csv(args.dataset, args.label_col)
        result = engine.run(data=data)
        session = app.state.store.create(result, data)
        print(f"session {session.id} loaded from {args.dataset} "
              f"(n={result.sample_count})")
    print(f"serving on http://{args.host}:{args.port}/v1/sessions")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torquecluster")
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="cluster a dataset and write artifacts")
    fit.add_argument("--input", required=True)
    fit.add_argument("--input-kind", choices=["points", "matrix"], default="points")
    fit.add_argument("--metric", choices=["euclidean", "cosine", "precomputed"],
                     default=None)
    fit.add_argument("--linkage",
                     choices=["single", "complete", "average", "centroid"],
                     default="single")
    fit.add_argument("--approx", action="store_true",
                     help="mean-representative nearest clusters via a k-d tree")
    fit.add_argument("--cut", default="auto", help="auto | topk:K | manual:FILE")
    fit.add_argument("--labels-out")
    fit.add_argument("--decision-graph-out")
    fit.add_argument("--hierarchy-out")
    fit.add_argument("--gamma-out")
    fit.add_argument("--label-col", type=int, default=None)
    fit.set_defaults(func=cmd_fit)

    ev = sub.add_parser("eval", help="score predicted labels against truth")
    ev.add_argument("--pred", required=True)
    ev.add_argument("--truth", required=True)
    ev.add_argument("--metric", choices=["nmi", "acc", "ami"], required=True)
    ev.set_defaults(func=cmd_eval)

    serve = sub.add_parser("serve", help="run the local analysis service")
    serve.add_argument("--port", type=int, default=8470)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--dataset", help="CSV of points to preload as a session")
    serve.add_argument("--label-col", type=int, default=None)
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TorqueClusteringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
