"""Command-line entry point: ``crashrepro {parse,reproduce,bench,replay}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .corpus import DEFAULT_CORPUS
from .predictor import PredictorError
from .replayer import ScriptError, run_script
from .runner import ENGINES, RunConfig, format_summary, run_bench, run_reproduction
from .simulator import InvalidModel, load_app
from .trace import AppMetadata, MalformedTrace, NoAppFrames, NoCrashPage, parse_trace, parse_trace_lenient

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_MALFORMED_TRACE = 3
EXIT_NO_APP_FRAMES = 4
EXIT_NO_CRASH_PAGE = 5
EXIT_INVALID_MODEL = 6
EXIT_SCRIPT_ERROR = 7


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def cmd_parse(args) -> int:
    app = load_app(args.app)
    meta = AppMetadata(app.package_name, app.activity_names)
    raw = _read(args.trace)
    code = EXIT_OK
    try:
        signature = parse_trace(raw, meta)
    except NoAppFrames as exc:
        signature, code = exc.signature, EXIT_NO_APP_FRAMES
    except NoCrashPage as exc:
        signature, code = exc.signature, EXIT_NO_CRASH_PAGE
    print(json.dumps(signature.to_dict(), indent=1))
    if code != EXIT_OK:
        print(f"warning: exit {code}", file=sys.stderr)
    return code


def cmd_reproduce(args) -> int:
    cfg = RunConfig(
        trace_path=args.trace, fixture_path=args.app, predictor=args.predictor,
        predictor_config=args.predictor_config, predictor_debug=args.debug_predictor,
        budget_seconds=args.budget, max_actions=args.max_actions, seed=args.seed,
        ablation=args.ablate, baseline=args.baseline, output_dir=args.out,
    )
    app = load_app(args.app)
    trace_text = _read(args.trace)
    parse_trace_lenient(trace_text, AppMetadata(app.package_name, app.activity_names))  # fail fast
    outcome = run_reproduction(app, trace_text, cfg)
    m = outcome.metrics
    print(f"{'reproduced' if m['success'] else 'not reproduced'}: {m['reason']} "
          f"({m['actions']} actions, {m['restarts']} restarts)")
    if outcome.steps:
        print(outcome.steps, end="")
    return EXIT_OK if m["success"] else EXIT_FAILED


def cmd_bench(args) -> int:
    summary = run_bench(args.corpus, args.seed, args.engines, args.out,
                        max_actions=args.max_actions, parallel=args.parallel)
    print(format_summary(summary), end="")
    return EXIT_OK


def cmd_replay(args) -> int:
    app = load_app(args.app)
    target = None
    if args.trace:
        meta = AppMetadata(app.package_name, app.activity_names)
        target = parse_trace_lenient(_read(args.trace), meta)[0]
    try:
        outcome = run_script(_read(args.script), app, target)
    except ScriptError as exc:
        print(f"error: {args.script}: {exc}", file=sys.stderr)
        return EXIT_SCRIPT_ERROR
    print(outcome.message)
    return EXIT_OK if outcome.reproduced else EXIT_FAILED


def _seeds(text: str) -> list[int]:
    if "-" in text:
        lo, hi = text.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crashrepro", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="print the crash signature of a stack trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--app", required=True, help="app fixture (JSON)")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("reproduce", help="search for an interaction sequence that re-triggers the crash")
    p.add_argument("--trace", required=True)
    p.add_argument("--app", required=True)
    p.add_argument("--predictor", choices=("offline", "remote"), default="offline")
    p.add_argument("--predictor-config", help="JSON file with url/token/model/timeout")
    p.add_argument("--debug-predictor", action="store_true", help="log remote request/response bodies")
    p.add_argument("--budget", type=float, default=3600.0, help="wall-clock budget in seconds")
    p.add_argument("--max-actions", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ablate", choices=("none", "no_page_reach", "no_widget_hit"), default="none")
    p.add_argument("--baseline", choices=("none", "random"), default="none")
    p.add_argument("--out", help="run directory")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("bench", help="run engines over a fixture corpus")
    p.add_argument("--corpus", default=str(DEFAULT_CORPUS))
    p.add_argument("--seed", type=_seeds, nargs="+", default=[[0, 1, 2, 3, 4]],
                   help="seeds, e.g. '--seed 0 1 2' or '--seed 0-4'")
    p.add_argument("--engines", nargs="+", default=["guided", "random"], choices=sorted(ENGINES))
    p.add_argument("--max-actions", type=int, default=500)
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("replay", help="execute a replay script against a fixture")
    p.add_argument("--script", required=True)
    p.add_argument("--app", required=True)
    p.add_argument("--trace", help="target trace (defaults to the script's target header)")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) and isinstance(args.seed, list):
        args.seed = sorted({s for group in args.seed for s in group})
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except MalformedTrace as exc:
        print(f"error: malformed trace: {exc}", file=sys.stderr)
        return EXIT_MALFORMED_TRACE
    except InvalidModel as exc:
        print(f"error: invalid app fixture: {exc}", file=sys.stderr)
        return EXIT_INVALID_MODEL
    except (ValueError, PredictorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
