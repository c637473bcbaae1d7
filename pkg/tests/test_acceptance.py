"""Acceptance checks, one test per criterion.

Each test prints ``criterion N: PASS|FAIL ...`` and the lines are repeated
in the terminal summary. Run standalone with ``python3 tests/test_acceptance.py``.
"""

import random
import statistics
import time
from fractions import Fraction

import pytest

from crashrepro import cli
from crashrepro.corpus import load_corpus, mean_interactables
from crashrepro.explorer import QTable, StateKey, q_update, reproduce
from crashrepro.predictor import PromptContext, build_context, render_prompt_p1, render_prompt_p2
from crashrepro.replayer import ReproductionTrace, minimize, replay_steps
from crashrepro.runner import ENGINES, RunConfig, run_reproduction
from crashrepro.scorers import page_reach_scores
from crashrepro.simulator import start_session, widget_display_name

SEEDS = range(5)
RESULTS: dict[int, str] = {}


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def corpus():
    return load_corpus()


@pytest.fixture(scope="module")
def runs(corpus):
    """Every engine on every case and seed. Keyed by (case, engine, seed)."""
    out, seconds = {}, {}
    for engine, flags in ENGINES.items():
        started = time.perf_counter()
        for case in corpus:
            for seed in SEEDS:
                cfg = RunConfig(seed=seed, max_actions=500, **flags)
                out[case.name, engine, seed] = run_reproduction(case.app, case.trace_text, cfg)
        seconds[engine] = time.perf_counter() - started
    return out, seconds


def _actions(runs, corpus, engine, keep=lambda c: True):
    return [runs[c.name, engine, s].result.actions for c in corpus if c.reproducible and keep(c) for s in SEEDS]


# -- 1 ------------------------------------------------------------------------

# Reference prompts for the browser example: going from the main overflow menu
# towards the installed-search-engines settings, with the full page and widget
# lists of the browser fixture.
REFERENCE_P1 = (
    "There are 8 pages in the app, named: intro, main, setting, info, about, edit, session, text action. "
    "I want to go from the menu of main page to the installed search engines settings page. "
    "What is the next page?"
)
REFERENCE_P2 = (
    "There are 8 pages in the app, named: intro, main, setting, info, about, edit, session, text action. "
    "I want to go from the menu of main page to the installed search engines settings page. "
    "The next page may be the setting page. "
    "Here are widgets I can click: what’s new, help, settings in a list, back. What should I click?"
)


def test_criterion_1_prompt_fidelity(focus):
    # prompt inputs written out by hand
    ctx = PromptContext(
        page_names=("intro", "main", "setting", "info", "about", "edit", "session", "text action"),
        current_page="menu of main",
        crash_page="installed search engines settings",
        widgets=("what’s new", "help", "settings", "back"),
        widget_groups=("list", "list", "list", ""),
    )
    # the same inputs as observed on the fixture's overflow menu
    session = start_session(focus.app)
    session.perform("more", "tap")
    page, widgets = session.observe()
    observed = build_context(focus.app.activity_names, page, [widget_display_name(w) for w in widgets],
                             [w.container_group for w in widgets], focus.target()[0].crash_page)
    got = [render_prompt_p1(ctx), render_prompt_p2(ctx, "setting"),
           render_prompt_p1(observed), render_prompt_p2(observed, "setting")]
    ok = got == [REFERENCE_P1, REFERENCE_P2, REFERENCE_P1, REFERENCE_P2]
    report(1, ok, "P1/P2 byte-exact for hand-built and fixture-observed contexts")


# -- 2 ------------------------------------------------------------------------

S = [StateKey("A", "general", str(i)) for i in range(4)]

# (Q(s,a) before, reward, {action: Q(s',action)} for s' or None if terminal)
BELLMAN_CASES = [
    (Fraction(0), Fraction(0), {}),
    (Fraction(0), Fraction(10), {}),
    (Fraction(1), Fraction(-1), {"x": Fraction(2)}),
    (Fraction(0), Fraction(1), {"x": Fraction(3), "y": Fraction(-4)}),
    (Fraction(5), Fraction(-10), None),
    (Fraction(-3, 2), Fraction(-1), {"x": Fraction(-2), "y": Fraction(-7, 10)}),
    (Fraction(9), Fraction(10), {"x": Fraction(9), "y": Fraction(1, 3)}),
    (Fraction(-100), Fraction(-10), {"x": Fraction(-100)}),
    (Fraction(100), Fraction(10), {"x": Fraction(100)}),
    (Fraction(1, 7), Fraction(1), {"x": Fraction(0), "y": Fraction(0), "z": Fraction(-1)}),
    (Fraction(2), Fraction(-1), {"x": Fraction(-5)}),
    (Fraction(33, 10), Fraction(10), {"x": Fraction(11, 4), "y": Fraction(12, 5)}),
]


def _bellman(q, r, nxt):
    """Hand evaluation in exact rationals with alpha = 1/10, gamma = 9/10."""
    best = max(nxt.values(), default=Fraction(0)) if nxt else Fraction(0)
    return q + Fraction(1, 10) * (r + Fraction(9, 10) * best - q)


def test_criterion_2_bellman_arithmetic():
    worst = 0.0
    for q0, r, nxt in BELLMAN_CASES:
        table = QTable()
        table.values[(S[0], "a")] = float(q0)
        if nxt is not None:
            table.register(S[1], list(nxt))
            for a, v in nxt.items():
                table.values[(S[1], a)] = float(v)
        got = q_update(table, S[0], "a", float(r), S[1] if nxt is not None else None)
        worst = max(worst, abs(got - float(_bellman(q0, r, nxt))))
    listed = [_bellman(*BELLMAN_CASES[i]) for i in range(3)]
    ok = len(BELLMAN_CASES) >= 10 and worst <= 1e-12 and listed == [0, 1, Fraction(98, 100)]
    report(2, ok, f"{len(BELLMAN_CASES)} cases, max |error| {worst:.1e}")


# -- 3 ------------------------------------------------------------------------

def test_criterion_3_rank_scoring():
    ids = ["w1", "w2", "w3", "w4", "w5"]
    scores = page_reach_scores(ids, ids)
    got = [scores[w] for w in ids]
    exact = got == [Fraction(1, 3), Fraction(1, 4), Fraction(1, 5), Fraction(1, 6), Fraction(1, 7)]
    rounded = (round(float(got[0]), 2), round(float(got[1]), 2)) == (0.33, 0.25)
    report(3, exact and rounded and all(isinstance(v, Fraction) for v in got), f"scores {[str(v) for v in got]}")


# -- 4 ------------------------------------------------------------------------

def test_criterion_4_corpus_reproduction(corpus, runs):
    results, seconds = runs
    solvable = [c for c in corpus if c.reproducible]
    depths = sorted({c.depth for c in solvable})
    mean_w = statistics.mean(mean_interactables(c.app) for c in corpus)
    rates = []
    for seed in SEEDS:
        wins = sum(results[c.name, "guided", seed].result.success for c in solvable)
        rates.append(wins / len(solvable))
    ok = (len(corpus) >= 20 and depths[0] == 1 and depths[-1] == 8 and abs(mean_w - 6.6) <= 0.3
          and min(rates) >= 0.9 and seconds["guided"] < 60)
    total = sum(seconds.values())
    report(4, ok, f"{len(corpus)} fixtures, depths {depths[0]}-{depths[-1]}, mean interactables {mean_w:.2f}, "
                  f"guided success per seed {[f'{r:.0%}' for r in rates]}, guided suite {seconds['guided']:.1f}s "
                  f"({total:.1f}s for all four engines)")


# -- 5 ------------------------------------------------------------------------

def test_criterion_5_guided_vs_random(corpus, runs):
    results, _ = runs
    guided = statistics.median(_actions(results, corpus, "guided"))
    rand = statistics.median(_actions(results, corpus, "random"))
    report(5, guided <= 0.5 * rand, f"median actions guided {guided} vs random {rand} (ratio {guided / rand:.2f})")


# -- 6 ------------------------------------------------------------------------

def test_criterion_6_ablation_direction(corpus, runs):
    results, _ = runs
    depth1 = [c for c in corpus if c.reproducible and c.depth == 1]
    all_d1 = all(results[c.name, e, s].result.success for c in depth1 for e in ("no_page_reach", "no_widget_hit")
                 for s in SEEDS)
    deep = lambda c: c.depth >= 4  # noqa: E731
    means = {e: statistics.mean(_actions(results, corpus, e, deep)) for e in ("guided", "no_page_reach", "no_widget_hit")}
    ok = bool(depth1) and all_d1 and means["guided"] <= min(means["no_page_reach"], means["no_widget_hit"])
    report(6, ok, f"depth-1 ablation success {all_d1}; depth>=4 mean actions "
                  + ", ".join(f"{k} {v:.1f}" for k, v in means.items()))


# -- 7 ------------------------------------------------------------------------

def test_criterion_7_replay_soundness(corpus, runs, tmp_path):
    results, _ = runs
    by_name = {c.name: c for c in corpus}
    scripts = replayed = crashing = idempotent = 0
    for (name, engine, seed), outcome in results.items():
        if not outcome.result.success:
            continue
        case = by_name[name]
        scripts += 1
        script = tmp_path / "script.txt"
        script.write_text(outcome.script)
        replayed += cli.main(["replay", "--script", str(script), "--app", str(case.path / "app.json")]) == 0
        steps = outcome.trace.minimized_steps
        crashing += replay_steps(case.app, [(s.page_id, s.widget_id, s.action) for s in steps], outcome.target, seed)
        again = minimize(ReproductionTrace(steps, outcome.target), case.app, seed)
        idempotent += again.minimized_steps == steps
    ok = scripts > 0 and replayed == crashing == idempotent == scripts
    report(7, ok, f"{scripts} scripts: {replayed} replay, {crashing} minimized traces crash, "
                  f"{idempotent} idempotent")


# -- 8 ------------------------------------------------------------------------

def test_criterion_8_q_table_bounded():
    rng = random.Random(2024)
    q = QTable()
    states = [StateKey("A", "general", str(i)) for i in range(40)]
    actions = [f"w{i}:tap" for i in range(8)]
    for s in states:
        q.register(s, rng.sample(actions, rng.randint(1, len(actions))))
    rewards = [10.0, 1.0, -1.0, -10.0]
    # a quarter of the states only ever pay +10 and lead among themselves, a
    # quarter only -10: their values are pushed toward +-100, the analytic bound
    rich, poor, mixed = states[:10], states[10:20], states[20:]
    lo = hi = 0.0
    for _ in range(100_000):
        group = rng.choice((rich, poor, mixed))
        s = rng.choice(group)
        a = rng.choice(q.actions[s])
        if group is mixed:
            r, nxt = rng.choice(rewards), None if rng.random() < 0.1 else rng.choice(states)
        else:
            r, nxt = (10.0 if group is rich else -10.0), rng.choice(group)
        v = q_update(q, s, a, r, nxt)
        lo, hi = min(lo, v), max(hi, v)
    ok = all(-100 <= v <= 100 for v in q.values.values()) and -100 <= lo and hi <= 100
    report(8, ok, f"100000 updates, values within [{lo:.2f}, {hi:.2f}]")


# -- 9 ------------------------------------------------------------------------

def test_criterion_9_degraded_modes(corpus):
    by_name = {c.name: c for c in corpus}
    lines = []
    ok = True
    for name, warning in (("degraded_no_app_frames", "NoAppFrames"), ("degraded_no_crash_page", "NoCrashPage")):
        case = by_name[name]
        target, warnings = case.target()
        ok &= warning in warnings
        for seed in SEEDS:
            result = reproduce(case.app, target, seed=seed)
            ok &= result.actions > 0 and result.success
        lines.append(f"{name} ({', '.join(warnings)}) reproduced on all seeds")
    report(9, ok, "; ".join(lines))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
