"""Command-line entry point.

Subcommands: analyze (batch corpus run), report (aggregate views),
check (one-shot text check), lexicon-validate, serve.

Exit codes form a contract for CI gating: 0 clean, 1 usage/config
error, 2 partial batch failure, 3 text flagged by check. All logs go to
stderr; stdout carries only results, so --json output is parseable as
emitted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import AppConfig, load_config
from .corpus import CorpusSource, run_pipeline
from .dare import RephraseStrategy, dare_process
from .errors import DarekitError
from .lexicon import build_matchers, load_manifest
from .report import (
    attribute_counts_to_dict,
    attribute_project_heatmap,
    export_report,
    heatmap_to_dict,
    load_results,
    offences_per_attribute,
    offences_per_project,
    project_report_to_dict,
)

log = logging.getLogger("darekit")


class _Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit code pinned to 1."""

    def error(self, message: str) -> None:  # noqa: D401 - argparse contract
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="darekit", description="Exclusionary-language toolkit")
    parser.add_argument("--config", help="TOML or JSON config file")
    parser.add_argument("--quiet", action="store_true", help="only log errors")
    parser.add_argument(
        "--json", action="store_true", help="machine-readable output on stdout"
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p_analyze = sub.add_parser("analyze", help="classify a corpus file")
    p_analyze.add_argument("corpus", help="JSONL or CSV corpus file")
    p_analyze.add_argument("--out", required=True, help="output directory")
    p_analyze.add_argument(
        "--all", action="store_true", help="write non-offensive records too"
    )

    p_report = sub.add_parser("report", help="aggregate a results file")
    p_report.add_argument("--input", required=True, help="results.jsonl path")
    p_report.add_argument(
        "--view", required=True, choices=["projects", "attributes", "heatmap"]
    )
    p_report.add_argument("--top-k", type=int, default=15, dest="top_k")
    p_report.add_argument("--format", choices=["csv", "json"], default="csv")
    p_report.add_argument("--out", help="output file (stdout when omitted)")
    p_report.add_argument(
        "--total-projects",
        type=int,
        dest="total_projects",
        help="corpus-wide project count for the percentage line",
    )

    p_check = sub.add_parser("check", help="check a single text")
    p_check.add_argument("text", nargs="?", help="text to check")
    p_check.add_argument("--stdin", action="store_true", help="read text from stdin")
    p_check.add_argument(
        "--strategy", choices=[s.value for s in RephraseStrategy], default=None
    )

    p_validate = sub.add_parser("lexicon-validate", help="load and check lexicons")
    p_validate.add_argument("manifest", help="lexicon manifest JSON")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default=None)
    p_serve.add_argument("--port", type=int, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.ERROR if args.quiet else logging.INFO,
        format="%(levelname)s %(message)s",
        force=True,
    )
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        config = load_config(args.config)
    except (OSError, ValueError, TypeError) as exc:
        log.error("config error: %s", exc)
        return 1
    handlers = {
        "analyze": cmd_analyze,
        "report": cmd_report,
        "check": cmd_check,
        "lexicon-validate": cmd_lexicon_validate,
        "serve": cmd_serve,
    }
    return handlers[args.command](args, config)


def cmd_analyze(args: argparse.Namespace, config: AppConfig) -> int:
    corpus_path = Path(args.corpus)
    if not corpus_path.is_file():
        log.error("corpus file not found: %s", corpus_path)
        return 1
    source = CorpusSource.from_path(corpus_path, fields=config.fields)
    try:
        run = run_pipeline(source, config, args.out, include_all=args.all)
    except (DarekitError, OSError, ValueError) as exc:
        log.error("analyze failed: %s", exc)
        return 1
    if args.json:
        print(
            json.dumps(
                {
                    "run_id": run.run_id,
                    "config_hash": run.config_hash,
                    "complete": run.complete,
                    "counters": run.counters(),
                    "results": str(run.results_path),
                }
            )
        )
    else:
        print(f"run {run.run_id} {'complete' if run.complete else 'INCOMPLETE'}")
        for name, value in run.counters().items():
            print(f"{name}: {value}")
        print(f"results: {run.results_path}")
    for diag in run.diagnostics:
        log.warning("line %d skipped: %s", diag.line, diag.reason)
    if not run.complete or run.diagnostics:
        return 2
    return 0


def cmd_report(args: argparse.Namespace, config: AppConfig) -> int:
    try:
        records = load_results(args.input)
    except (OSError, ValueError, KeyError) as exc:
        log.error("cannot read results: %s", exc)
        return 1
    try:
        if args.view == "projects":
            report = offences_per_project(records, args.total_projects)
            payload = project_report_to_dict(report)
        elif args.view == "attributes":
            report = offences_per_attribute(records)
            payload = attribute_counts_to_dict(report)
        else:
            report = attribute_project_heatmap(records, args.top_k)
            payload = heatmap_to_dict(report)
    except ValueError as exc:
        log.error("bad report request: %s", exc)
        return 1
    if args.out:
        try:
            export_report(report, args.format, args.out)
        except (DarekitError, OSError) as exc:
            log.error("cannot write report: %s", exc)
            return 1
        log.info("wrote %s", args.out)
        return 0
    if args.format == "json" or args.json:
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        for row in _csv_lines(payload):
            print(row)
    return 0


def _csv_lines(payload: dict) -> list[str]:
    if payload["view"] == "projects":
        lines = ["project_id,count"]
        lines += [f"{e['project_id']},{e['count']}" for e in payload["entries"]]
    elif payload["view"] == "attributes":
        lines = ["attribute,count"]
        lines += [f"{e['attribute']},{e['count']}" for e in payload["entries"]]
    else:
        lines = ["project_id,attribute,count"]
        lines += [
            f"{c['project_id']},{c['attribute']},{c['count']}"
            for c in payload["cells"]
        ]
    return lines


def cmd_check(args: argparse.Namespace, config: AppConfig) -> int:
    if args.stdin and args.text is not None:
        log.error("pass text either as an argument or on stdin, not both")
        return 1
    if args.stdin:
        text = sys.stdin.read()
    elif args.text is not None:
        text = args.text
    else:
        log.error("no text given; pass an argument or --stdin")
        return 1
    try:
        strategy = RephraseStrategy(args.strategy or config.strategy)
        matchers = build_matchers(load_manifest(config.manifest_path))
        output = dare_process(text, matchers, config.filter, strategy)
    except (DarekitError, OSError, ValueError) as exc:
        log.error("check failed: %s", exc)
        return 1
    if args.json:
        print(json.dumps(output.to_dict(), ensure_ascii=False))
    else:
        print(f"detected: {'yes' if output.detected else 'no'}")
        if output.labels:
            tags = ", ".join(label.attribute.tag for label in output.labels)
            print(f"labels: {tags}")
        if output.detected:
            print(output.revealed)
            print()
            print(f"rewrite ({strategy.value}): {output.eliminated}")
    return 3 if output.detected else 0


def cmd_lexicon_validate(args: argparse.Namespace, config: AppConfig) -> int:
    try:
        lexicons = load_manifest(args.manifest)
        build_matchers(lexicons)
    except (DarekitError, OSError, ValueError, KeyError) as exc:
        log.error("lexicon validation failed: %s", exc)
        return 1
    if args.json:
        print(
            json.dumps(
                {
                    "lexicons": [
                        {
                            "id": lx.lexicon_id,
                            "kind": lx.kind.value,
                            "attribute": lx.attribute.value if lx.attribute else None,
                            "phrases": len(lx.phrases),
                            "dropped_duplicates": lx.dropped_duplicates,
                        }
                        for lx in lexicons
                    ]
                }
            )
        )
    else:
        for lx in lexicons:
            note = (
                f" ({lx.dropped_duplicates} duplicate lines dropped)"
                if lx.dropped_duplicates
                else ""
            )
            print(f"{lx.lexicon_id}: {len(lx.phrases)} phrases{note}")
    return 0


def cmd_serve(args: argparse.Namespace, config: AppConfig) -> int:
    import uvicorn

    from .service import create_app

    host = args.host or config.host
    port = args.port if args.port is not None else config.port
    try:
        app = create_app(config)
    except (DarekitError, OSError, ValueError) as exc:
        log.error("cannot start service: %s", exc)
        return 1
    try:
        uvicorn.run(app, host=host, port=port, log_level="error" if args.quiet else "info")
    except (OSError, SystemExit) as exc:
        log.error("server failed: %s", exc)
        return 1
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
