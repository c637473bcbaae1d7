"""Run directories and corpus benchmarking."""

from __future__ import annotations

import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .corpus import load_corpus
from .explorer import ReproductionResult, reproduce
from .predictor import OfflinePredictor, RemoteConfig, RemotePredictor
from .replayer import ReproductionTrace, emit_script, emit_steps, minimize
from .simulator import AppModel
from .trace import AppMetadata, CrashSignature, parse_trace_lenient

METRICS_SCHEMA = 1

ENGINES = {
    "guided": {},
    "random": {"baseline": "random"},
    "no_page_reach": {"ablation": "no_page_reach"},
    "no_widget_hit": {"ablation": "no_widget_hit"},
}


@dataclass
class RunConfig:
    trace_path: str | None = None
    fixture_path: str | None = None
    predictor: str = "offline"
    predictor_config: str | None = None
    predictor_debug: bool = False
    budget_seconds: float = 3600.0
    max_actions: int = 500
    seed: int = 0
    ablation: str = "none"
    baseline: str = "none"
    output_dir: str | None = None

    def __post_init__(self):
        if self.budget_seconds <= 0:
            raise ValueError("budget_seconds must be positive")
        if self.max_actions <= 0:
            raise ValueError("max_actions must be positive")
        if self.ablation != "none" and self.baseline != "none":
            raise ValueError("ablation and baseline are mutually exclusive")
        if self.predictor not in ("offline", "remote"):
            raise ValueError(f"unknown predictor {self.predictor!r}")


@dataclass
class RunOutcome:
    result: ReproductionResult
    target: CrashSignature
    trace: ReproductionTrace | None
    script: str | None
    steps: str | None
    metrics: dict


def make_predictor(cfg: RunConfig, out: Path | None):
    if cfg.predictor == "offline":
        return OfflinePredictor()
    remote = RemoteConfig.load(cfg.predictor_config)
    if cfg.predictor_debug and out is not None:
        remote.debug_log = str(out / "predictor_debug.jsonl")
    return RemotePredictor(remote)


def _steps_json(steps) -> list[dict]:
    return [
        {"page": s.page_id, "widget": s.widget_id, "name": s.widget_name, "action": s.action,
         "outcome": s.outcome, "pre_state": str(s.pre_state),
         "post_state": str(s.post_state) if s.post_state else None}
        for s in steps
    ]


def run_reproduction(app: AppModel, trace_text: str, cfg: RunConfig) -> RunOutcome:
    """Parse, explore, and on success minimize and render the artifacts."""
    out = Path(cfg.output_dir) if cfg.output_dir else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    meta = AppMetadata(app.package_name, app.activity_names)
    target, warnings = parse_trace_lenient(trace_text, meta)
    result = reproduce(
        app, target, seed=cfg.seed, predictor=make_predictor(cfg, out),
        max_actions=cfg.max_actions, budget_seconds=cfg.budget_seconds,
        ablation=cfg.ablation, baseline=cfg.baseline,
    )
    result.warnings = warnings
    trace = script = steps = None
    if result.success:
        trace = minimize(ReproductionTrace(tuple(result.raw_steps), target), app, cfg.seed)
        script = emit_script(trace, app)
        steps = emit_steps(trace, app)
    metrics = {
        "schema_version": METRICS_SCHEMA,
        "success": result.success,
        "reason": result.reason,
        "actions": result.actions,
        "restarts": result.restarts,
        "states_visited": result.states_visited,
        "engine": result.engine,
        "ablation": cfg.ablation,
        "baseline": cfg.baseline,
        "predictor": cfg.predictor,
        "seed": cfg.seed,
        "max_actions": cfg.max_actions,
        "budget_seconds": cfg.budget_seconds,
        "warnings": warnings,
        "raw_steps": len(result.raw_steps),
        "minimized_steps": len(trace.minimized_steps) if trace else None,
        "minimized": _steps_json(trace.minimized_steps) if trace else [],
    }
    outcome = RunOutcome(result, target, trace, script, steps, metrics)
    if out is not None:
        write_run_dir(outcome, out)
    return outcome


def _dump_jsonl(path: Path, rows) -> None:
    path.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows), encoding="utf-8")


def write_run_dir(outcome: RunOutcome, out: Path) -> None:
    """Everything but ``timing.json`` is byte-stable for a fixed seed."""
    files = ["metrics.json", "timing.json", "actions.jsonl", "transcript.jsonl", "signature.json"]
    (out / "metrics.json").write_text(json.dumps(outcome.metrics, indent=1) + "\n", encoding="utf-8")
    timing = {
        "elapsed_seconds": outcome.result.elapsed,
        "finished_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    (out / "timing.json").write_text(json.dumps(timing, indent=1) + "\n", encoding="utf-8")
    _dump_jsonl(out / "actions.jsonl", outcome.result.action_log)
    _dump_jsonl(out / "transcript.jsonl", outcome.result.transcript)
    (out / "signature.json").write_text(json.dumps(outcome.target.to_dict(), indent=1) + "\n", encoding="utf-8")
    if outcome.script is not None:
        (out / "script.txt").write_text(outcome.script, encoding="utf-8")
        (out / "steps.txt").write_text(outcome.steps, encoding="utf-8")
        files += ["script.txt", "steps.txt"]
    manifest = {"schema_version": METRICS_SCHEMA, "files": sorted(files)}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n", encoding="utf-8")


# -- benchmarking ------------------------------------------------------------------


def _bench_job(job: tuple) -> dict:
    case_dir, case_name, reproducible, depth, engine, seed, max_actions, out_dir = job
    from .corpus import load_case

    case = load_case(case_dir)
    cfg = RunConfig(seed=seed, max_actions=max_actions, output_dir=out_dir, **ENGINES[engine])
    outcome = run_reproduction(case.app, case.trace_text, cfg)
    return {
        "case": case_name, "engine": engine, "seed": seed, "reproducible": reproducible,
        "depth": depth, "success": outcome.result.success, "actions": outcome.result.actions,
        "elapsed": outcome.result.elapsed,
    }


def run_bench(corpus_dir, seeds, engines, out_dir, *, max_actions: int = 500, parallel: int = 1) -> dict:
    """Run every engine on every case for every seed; write per-run
    directories under ``out_dir/runs`` and a summary at the top."""
    out = Path(out_dir)
    cases = load_corpus(corpus_dir)
    for engine in engines:
        if engine not in ENGINES:
            raise ValueError(f"unknown engine {engine!r}")
    jobs = [
        (str(c.path), c.name, c.reproducible, c.depth, engine, seed, max_actions,
         str(out / "runs" / c.name / engine / f"seed{seed}"))
        for c in cases for engine in engines for seed in seeds
    ]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            records = list(pool.map(_bench_job, jobs))
    else:
        records = [_bench_job(j) for j in jobs]
    summary = summarize(records)
    out.mkdir(parents=True, exist_ok=True)
    flags = {c.name: {"reproducible": c.reproducible, "depth": c.depth} for c in cases}
    (out / "cases.json").write_text(json.dumps(flags, indent=1) + "\n", encoding="utf-8")
    (out / "summary.json").write_text(json.dumps(summary, indent=1) + "\n", encoding="utf-8")
    (out / "summary.txt").write_text(format_summary(summary), encoding="utf-8")
    return summary


def load_bench_records(out_dir) -> list[dict]:
    """Rebuild run records from the per-run metrics files."""
    flags = json.loads(Path(out_dir, "cases.json").read_text(encoding="utf-8"))
    records = []
    for metrics_path in sorted(Path(out_dir, "runs").glob("*/*/seed*/metrics.json")):
        case_dir = metrics_path.parent.parent.parent
        m = json.loads(metrics_path.read_text(encoding="utf-8"))
        timing = json.loads((metrics_path.parent / "timing.json").read_text(encoding="utf-8"))
        records.append({
            "case": case_dir.name, "engine": metrics_path.parent.parent.name, "seed": m["seed"],
            "success": m["success"], "actions": m["actions"], "elapsed": timing["elapsed_seconds"],
            **flags[case_dir.name],
        })
    return records


def summarize(records: list[dict]) -> dict:
    """Per case x engine rows plus per-engine aggregates.

    Cases flagged not reproducible are excluded from success-rate
    denominators and action statistics; they are counted separately.
    """
    rows: dict = {}
    for r in records:
        rows.setdefault((r["case"], r["engine"]), []).append(r)
    table = []
    for (case, engine), runs in sorted(rows.items()):
        table.append({
            "case": case, "engine": engine,
            "reproducible": runs[0].get("reproducible", True), "depth": runs[0].get("depth"),
            "runs": len(runs),
            "success_rate": sum(r["success"] for r in runs) / len(runs),
            "mean_actions": statistics.mean(r["actions"] for r in runs),
            "mean_seconds": statistics.mean(r["elapsed"] for r in runs),
        })
    engines: dict = {}
    for r in records:
        e = engines.setdefault(r["engine"], {"actions": [], "successes": 0, "runs": 0, "unreproducible_runs": 0})
        if not r.get("reproducible", True):
            e["unreproducible_runs"] += 1
            continue
        e["runs"] += 1
        e["successes"] += int(r["success"])
        e["actions"].append(r["actions"])
    aggregate = {
        name: {
            "runs": e["runs"],
            "success_rate": e["successes"] / e["runs"] if e["runs"] else 0.0,
            "median_actions": statistics.median(e["actions"]) if e["actions"] else None,
            "mean_actions": statistics.mean(e["actions"]) if e["actions"] else None,
            "unreproducible_runs": e["unreproducible_runs"],
        }
        for name, e in sorted(engines.items())
    }
    return {"rows": table, "aggregate": aggregate}


def format_summary(summary: dict) -> str:
    lines = [f"{'case':<28} {'engine':<14} {'depth':>5} {'success':>8} {'actions':>9} {'seconds':>8}"]
    for row in summary["rows"]:
        depth = "-" if row["depth"] is None else str(row["depth"])
        flag = "" if row["reproducible"] else " (unreproducible)"
        lines.append(
            f"{row['case']:<28} {row['engine']:<14} {depth:>5} {row['success_rate']:>8.0%} "
            f"{row['mean_actions']:>9.1f} {row['mean_seconds']:>8.3f}{flag}"
        )
    lines.append("")
    for name, agg in summary["aggregate"].items():
        if not agg["runs"]:
            continue
        lines.append(
            f"{name:<14} success {agg['success_rate']:.1%} over {agg['runs']} runs, "
            f"median actions {agg['median_actions']}, mean {agg['mean_actions']:.1f}"
        )
    return "\n".join(lines) + "\n"
