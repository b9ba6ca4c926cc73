"""Command-line frontend.

Subcommands: ``assess`` (import, embed, score, export), ``tree-metrics``
(score a genealogy-tree file), ``testcase`` (sensitivity curves),
``cluster`` (labels and dendrogram from a result file), ``validate``
(report only), and ``serve`` (HTTP API). Exit codes: 0 success, 1 for
validation or data failures, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

from . import analysis, spaceio
from .config import load_run_config
from .embedding import make_provider
from .errors import VariantError
from .levels import LEVELS
from .rqid import assess as run_assessment
from .spaces import validate_space
from .treemetrics import METRICS, score_tree

__all__ = ["main", "run_cli", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="variant",
        description="Variety analytics for design concept spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_assess = sub.add_parser("assess", help="score a concept space end to end")
    p_assess.add_argument("--input", required=True, help="space file (CSV or JSON)")
    p_assess.add_argument("--format", choices=["csv", "json"], default=None)
    p_assess.add_argument("--provider", choices=["hash", "service", "precomputed"])
    p_assess.add_argument("--weights", help="paper-default, uniform, or 7 comma-separated values")
    p_assess.add_argument("--k", type=int, help="also cluster into k groups")
    p_assess.add_argument("--out", help="result path (.json or .csv)")
    p_assess.add_argument("--config", help="JSON config file")
    p_assess.add_argument("--service-url")
    p_assess.add_argument("--service-model")
    p_assess.add_argument("--service-token")
    p_assess.add_argument("--vectors", help="precomputed-vectors CSV")
    p_assess.add_argument("--separator", default=None, help="instance-text join string")

    p_tree = sub.add_parser("tree-metrics", help="score a genealogy-tree file")
    p_tree.add_argument("--tree", required=True, help="tree JSON file")
    p_tree.add_argument("--metric", choices=list(METRICS) + ["all"], default="all")
    p_tree.add_argument(
        "--weights",
        default=None,
        help="'tree' to use the file's weights, or comma-separated values per level",
    )
    p_tree.add_argument("--no-normalize", action="store_true", help="skip the N-1 divisor for nm")

    p_case = sub.add_parser("testcase", help="metric sensitivity curves")
    p_case.add_argument("--case", choices=["I", "II"], required=True)
    p_case.add_argument("--n", type=int, default=20, help="space size for case I")
    p_case.add_argument("--n-max", type=int, default=40, help="largest N for case II")
    p_case.add_argument("--out", required=True, help="curve CSV path")

    p_cluster = sub.add_parser("cluster", help="cluster a stored assessment result")
    p_cluster.add_argument("--result", required=True, help="result JSON from assess")
    p_cluster.add_argument("--k", type=int, required=True)
    p_cluster.add_argument("--method", choices=["medoids", "mds"], default="medoids")
    p_cluster.add_argument("--out", help="write labels + dendrogram JSON here")

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8712)
    p_serve.add_argument("--data-dir", default=None)

    p_validate = sub.add_parser("validate", help="report violations in a space file")
    p_validate.add_argument("--input", required=True)
    p_validate.add_argument("--format", choices=["csv", "json"], default=None)
    return parser


def _cmd_assess(args) -> int:
    cli_over = {
        "provider": args.provider,
        "weights_spec": args.weights,
        "k": args.k,
        "output": args.out,
        "provider_params": {},
    }
    if args.service_url:
        cli_over["provider_params"]["url"] = args.service_url
    if args.service_model:
        cli_over["provider_params"]["model"] = args.service_model
    if args.service_token:
        cli_over["provider_params"]["token"] = args.service_token
    if args.vectors:
        cli_over["provider_params"]["path"] = args.vectors
    cfg = load_run_config(cli=cli_over, config_path=args.config)

    space = spaceio.import_space(args.input, args.format)
    report = validate_space(space)
    for violation in report:
        print(f"{violation.severity}: {violation.message}", file=sys.stderr)
    if not report.ok:
        return 1

    provider = make_provider(cfg.provider, cfg.provider_params)
    kwargs = {} if args.separator is None else {"separator": args.separator}
    result = run_assessment(space, provider, cfg.weights, **kwargs)

    clusters = None
    if cfg.k is not None:
        labels = analysis.cluster(result.weighted_matrix, cfg.k)
        clusters = {"k": cfg.k, "labels": labels}
    dgram = analysis.dendrogram(result.weighted_matrix, result.concept_ids)
    config_echo = cfg.describe()
    config_echo["provider_id"] = result.provider_id
    config_echo["space_id"] = space.space_id
    doc = spaceio.result_to_dict(result, config_echo, clusters=clusters, dgram=dgram)

    if cfg.output:
        spaceio.export_results(doc, cfg.output)
        print(f"wrote {cfg.output}")
    print(f"overall variety: {result.overall:.3f}")
    for lvl in LEVELS:
        print(f"  {lvl.column:>12}: {result.per_level[lvl]:.3f}")
    return 0


def _parse_tree_weights(raw: str | None, tree):
    if raw is None or raw == "":
        return None
    if raw == "tree":
        return "tree"
    values = [float(x) for x in raw.split(",")]
    if len(values) != len(tree.levels):
        raise ValueError(
            f"{len(values)} weights for a {len(tree.levels)}-level tree"
        )
    return {level.alpha: w for level, w in zip(tree.levels, values)}


def _cmd_tree_metrics(args) -> int:
    tree = spaceio.load_tree_json(args.tree)
    weights = _parse_tree_weights(args.weights, tree)
    metrics = list(METRICS) if args.metric == "all" else [args.metric]
    for metric in metrics:
        kwargs = {"weights": weights}
        if metric == "nm":
            kwargs["normalized"] = not args.no_normalize
        score = score_tree(tree, metric, **kwargs)
        levels = " ".join(
            f"alpha={alpha}:{value:.4g}" for alpha, value in sorted(score.per_level.items())
        )
        overall = f"{score.overall:.4g}" if score.overall is not None else "-"
        print(f"{metric:>5}  per-level: {levels}  overall: {overall}")
    return 0


def _cmd_testcase(args) -> int:
    if args.case == "I":
        points = analysis.testcase1_curve(args.n)
    else:
        points = analysis.testcase2_curve(list(range(2, args.n_max + 1, 2)))
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x"] + list(METRICS))
        for point in points:
            writer.writerow([point.x] + [repr(point.scores[m]) for m in METRICS])
    print(f"wrote {args.out} ({len(points)} points)")
    return 0


def _cmd_cluster(args) -> int:
    doc = spaceio.load_results(args.result)
    result = spaceio.result_from_dict(doc)
    labels = analysis.cluster(result.weighted_matrix, args.k, method=args.method)
    dgram = analysis.dendrogram(result.weighted_matrix, result.concept_ids)
    out_doc = {
        "k": args.k,
        "labels": labels,
        "dendrogram": {
            "leaves": list(dgram.leaves),
            "merges": [[a, b, h] for a, b, h in dgram.merges],
        },
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(out_doc, fh, indent=2)
            fh.write("\n")
    for cid, label in zip(result.concept_ids, labels):
        print(f"concept {cid}: cluster {label}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    cfg = load_run_config(cli={"data_dir": args.data_dir})
    app = create_app(data_dir=cfg.data_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_validate(args) -> int:
    space = spaceio.import_space(args.input, args.format)
    report = validate_space(space)
    if report.empty:
        print(f"{args.input}: ok ({len(space)} concepts)")
        return 0
    for violation in report:
        print(f"{violation.severity}: [{violation.code}] {violation.message}")
    return 0 if report.ok else 1


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "assess": _cmd_assess,
        "tree-metrics": _cmd_tree_metrics,
        "testcase": _cmd_testcase,
        "cluster": _cmd_cluster,
        "serve": _cmd_serve,
        "validate": _cmd_validate,
    }
    try:
        return handlers[args.command](args)
    except VariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
