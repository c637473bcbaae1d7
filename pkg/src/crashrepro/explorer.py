"""Q-learning guided exploration loop."""

from __future__ import annotations

import hashlib
import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import scorers
from .predictor import OfflinePredictor, build_context, prompt_widget_name
from .simulator import AppModel, PageSpec, Session, SessionEvent, WidgetSpec, restart, start_session, widget_display_name
from .tokens import stems, tokenize
from .trace import AppMetadata, CrashSignature, TraceError, parse_trace_lenient, signature_matches

log = logging.getLogger(__name__)


class NoCandidates(Exception):
    pass


@dataclass(frozen=True, order=True)
class StateKey:
    activity_name: str
    page_kind: str
    widget_fingerprint: str

    def __str__(self) -> str:
        return f"{self.activity_name}[{self.page_kind}]#{self.widget_fingerprint}"


def fingerprint(names) -> str:
    """Order-insensitive digest of a page's widget names."""
    blob = "\n".join(sorted(names)).encode("utf-8")
    return hashlib.sha1(blob).hexdigest()[:12]


@dataclass(frozen=True)
class Observation:
    page: PageSpec
    widgets: tuple[WidgetSpec, ...]
    names: tuple[str, ...]
    state: StateKey
    candidates: tuple[tuple[WidgetSpec, str], ...]

    @property
    def action_ids(self) -> tuple[str, ...]:
        return tuple(f"{w.widget_id}:{a}" for w, a in self.candidates)


def observe(session: Session) -> Observation:
    page, widgets = session.observe()
    names = tuple(widget_display_name(w) for w in widgets)
    state = StateKey(page.activity_name, page.kind, fingerprint(names))
    candidates = tuple((w, a) for w in widgets for a in session.legal_actions(w, page))
    return Observation(page, tuple(widgets), names, state, candidates)


@dataclass
class QTable:
    alpha: float = 0.1
    gamma: float = 0.9
    values: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)

    def get(self, state, action_id) -> float:
        return self.values.get((state, action_id), 0.0)

    def register(self, state, action_ids) -> None:
        self.actions.setdefault(state, tuple(action_ids))

    def max_value(self, state) -> float:
        if state is None:
            return 0.0
        acts = self.actions.get(state, ())
        return max((self.get(state, a) for a in acts), default=0.0)

    def update(self, state, action_id, reward, next_state) -> float:
        old = self.get(state, action_id)
        new = old + self.alpha * (reward + self.gamma * self.max_value(next_state) - old)
        self.values[(state, action_id)] = new
        return new


def q_update(q: QTable, s, a, r, s_next) -> float:
    return q.update(s, a, r, s_next)


@dataclass(frozen=True)
class RewardConfig:
    crash_related: float = 10.0
    new_state: float = 1.0
    duplicate_state: float = -1.0
    failure_state: float = -10.0

    def __post_init__(self):
        if not self.crash_related > self.new_state > 0 > self.duplicate_state > self.failure_state:
            raise ValueError("rewards must satisfy crash > new > 0 > duplicate > failure")


@dataclass(frozen=True)
class SelectorConfig:
    epsilon_focused: float = 0.05
    epsilon_escape: float = 0.9
    stuck_window: int = 12
    escape_duration: int = 6

    def __post_init__(self):
        for eps in (self.epsilon_focused, self.epsilon_escape):
            if not 0.0 <= eps <= 1.0:
                raise ValueError("epsilon must lie in [0, 1]")

    def epsilon(self, mode: str) -> float:
        return self.epsilon_escape if mode == "escape" else self.epsilon_focused


@dataclass(frozen=True)
class Step:
    pre_state: StateKey
    page_id: str
    widget_id: str
    widget_name: str
    action: str
    outcome: str  # SessionEvent kind
    post_state: StateKey | None = None
    invoked_apis: tuple[str, ...] = ()


@dataclass
class ExplorationMemory:
    meta: AppMetadata
    visited_states: set = field(default_factory=set)
    transition_log: list = field(default_factory=list)
    interaction_cache: list = field(default_factory=list)
    action_counter: int = 0
    progress: list = field(default_factory=list)
    excluded: set = field(default_factory=set)
    # (state, action_id) pairs already given the crash-related reward this launch
    credited: set = field(default_factory=set)
    started: float = field(default_factory=time.monotonic)

    def clear_cache(self) -> None:
        self.interaction_cache = []
        self.credited = set()


def _crash_signature(event: SessionEvent, meta: AppMetadata) -> CrashSignature | None:
    if event.kind != "Crashed" or not event.raw_trace:
        return None
    try:
        return parse_trace_lenient(event.raw_trace, meta)[0]
    except TraceError:
        return None


def is_target_crash(event: SessionEvent, target: CrashSignature, meta: AppMetadata) -> bool:
    observed = _crash_signature(event, meta)
    return observed is not None and signature_matches(observed, target)


def page_matches_crash(page: PageSpec, target: CrashSignature) -> bool:
    if not target.crash_page:
        return False
    wanted = stems(target.crash_page)
    for name in (page.activity_name, page.fragment_name):
        if name and stems(tokenize(name)) == wanted:
            return True
    return False


def _api_key(name: str) -> str:
    return ".".join(name.rsplit(".", 2)[-2:])


def is_crash_related(event, target, next_obs, meta) -> bool:
    if next_obs is not None and event.kind == "PageChanged" and page_matches_crash(next_obs.page, target):
        return True
    if {_api_key(a) for a in event.invoked_apis} & set(target.api_names):
        return True
    return is_target_crash(event, target, meta)


def reward_for(
    event: SessionEvent,
    target: CrashSignature,
    memory: ExplorationMemory,
    next_obs: Observation | None = None,
    rewards: RewardConfig = RewardConfig(),
    key=None,
) -> float:
    """Reward for one interaction.

    ``key`` is the ``(state, action_id)`` just performed; a key already in
    ``memory.credited`` gets no second crash-related reward within the
    same launch, which stops back-and-forth trips to the crash page from
    farming it.
    """
    if key not in memory.credited and is_crash_related(event, target, next_obs, memory.meta):
        return rewards.crash_related
    if event.kind == "PageChanged" and next_obs is not None and next_obs.state not in memory.visited_states:
        return rewards.new_state
    if event.kind in ("LeftApp", "Crashed"):
        return rewards.failure_state
    return rewards.duplicate_state


def select_widget(scored, cfg: SelectorConfig, mode: str, rng: random.Random, excluded=frozenset()):
    """Epsilon-greedy choice over summed scores.

    Returns the chosen :class:`ScoredWidget`. Entries whose ``action_id`` is
    in ``excluded`` are never picked.
    """
    pool = [s for s in scored if s.action_id not in excluded]
    if not pool:
        raise NoCandidates("every candidate on this page is excluded")
    best = max(pool, key=lambda s: s.total)  # first maximum wins ties
    if len(pool) == 1:
        return best
    if rng.random() < cfg.epsilon(mode):
        others = [s for s in pool if s is not best]
        return rng.choice(others)
    return best


def detect_stuck(memory: ExplorationMemory, cfg: SelectorConfig) -> bool:
    window = memory.progress[-cfg.stuck_window:]
    return len(window) >= cfg.stuck_window and not any(window)


@dataclass
class ReproductionResult:
    success: bool
    engine: str
    seed: int
    ablation: str
    actions: int
    restarts: int
    elapsed: float
    reason: str = ""
    raw_steps: list = field(default_factory=list)
    action_log: list = field(default_factory=list)
    transcript: list = field(default_factory=list)
    states_visited: int = 0
    warnings: list = field(default_factory=list)


class _PageReach:
    """Caches predictor answers per (state, crash page)."""

    def __init__(self, app: AppModel, target: CrashSignature, predictor):
        self.app = app
        self.target = target
        self.predictor = predictor
        self.cache: dict = {}

    def scores(self, obs: Observation) -> dict[str, Fraction]:
        key = (obs.state, self.target.crash_page)
        if key not in self.cache:
            self.cache[key] = self._compute(obs)
        return self.cache[key]

    def _compute(self, obs: Observation) -> dict[str, Fraction]:
        ids = [w.widget_id for w in obs.widgets]
        if not self.target.crash_page:
            return scorers.page_reach_scores([], ids)
        ctx = build_context(
            self.app.activity_names, obs.page, obs.names,
            [w.container_group for w in obs.widgets], self.target.crash_page,
        )
        next_page = self.predictor.predict_next_page(ctx).next_page
        ranked = self.predictor.predict_widgets(ctx, next_page).ranked
        by_name: dict[str, str] = {}
        for w, name in zip(obs.widgets, obs.names):
            by_name.setdefault(prompt_widget_name(name), w.widget_id)
        return scorers.page_reach_scores([by_name[n] for n in ranked if n in by_name], ids)


def reproduce(
    app: AppModel,
    target: CrashSignature,
    *,
    seed: int = 0,
    predictor=None,
    selector: SelectorConfig = SelectorConfig(),
    rewards: RewardConfig = RewardConfig(),
    max_actions: int = 500,
    budget_seconds: float = 3600.0,
    ablation: str = "none",
    baseline: str = "none",
) -> ReproductionResult:
    """Explore ``app`` until ``target`` crashes or the budget runs out.

    ``baseline="random"`` replaces the scored selection with uniform choice
    over the page's actions (restart and budget rules unchanged).
    """
    if ablation not in scorers.ABLATIONS:
        raise ValueError(f"unknown ablation {ablation!r}")
    if baseline not in ("none", "random"):
        raise ValueError(f"unknown baseline {baseline!r}")
    if ablation != "none" and baseline != "none":
        raise ValueError("ablation and baseline are mutually exclusive")
    if max_actions <= 0 or budget_seconds <= 0:
        raise ValueError("budget must be positive")

    meta = AppMetadata(app.package_name, app.activity_names)
    transcript: list = []
    if predictor is None:
        predictor = OfflinePredictor(transcript)
    elif getattr(predictor, "transcript", None) is None:
        predictor.transcript = transcript
    else:
        transcript = predictor.transcript

    rng = random.Random(seed)
    session = start_session(app, seed)
    q = QTable()
    memory = ExplorationMemory(meta)
    reach = _PageReach(app, target, predictor)
    hit_cache: dict[str, Fraction] = {}
    engine = "random" if baseline == "random" else "guided"

    mode, escape_left, restarts = "focused", 0, 0
    forced_restarts = 0
    action_log: list = []
    obs = observe(session)
    memory.visited_states.add(obs.state)

    def finish(success: bool, reason: str) -> ReproductionResult:
        return ReproductionResult(
            success=success, engine=engine, seed=seed, ablation=ablation,
            actions=memory.action_counter, restarts=restarts,
            elapsed=time.monotonic() - memory.started, reason=reason,
            raw_steps=list(memory.interaction_cache) if success else [],
            action_log=action_log, transcript=transcript,
            states_visited=len(memory.visited_states),
        )

    def hit(name: str) -> Fraction:
        if name not in hit_cache:
            hit_cache[name] = scorers.widget_hit_score(tokenize(name), target.crash_apis)
        return hit_cache[name]

    while True:
        if memory.action_counter >= max_actions:
            return finish(False, "action budget exhausted")
        if time.monotonic() - memory.started >= budget_seconds:
            return finish(False, "time budget exhausted")

        q.register(obs.state, obs.action_ids)
        names = dict(zip((w.widget_id for w in obs.widgets), obs.names))
        if baseline == "random":
            widget, action = rng.choice(obs.candidates)
            action_id = f"{widget.widget_id}:{action}"
        else:
            page_scores = reach.scores(obs) if ablation != "no_page_reach" else {}
            scored = [
                scorers.combine(
                    w.widget_id,
                    page_scores.get(w.widget_id, Fraction(0)),
                    hit(names[w.widget_id]),
                    q.get(obs.state, f"{w.widget_id}:{a}"),
                    ablation,
                    a,
                )
                for w, a in obs.candidates
            ]
            excluded = {a for s, a in memory.excluded if s == obs.state}
            try:
                choice = select_widget(scored, selector, mode, rng, excluded)
            except NoCandidates:
                forced_restarts += 1
                if forced_restarts > 1:
                    return finish(False, "no candidates left after restart")
                session, obs = restart(session), None
                restarts += 1
                memory.clear_cache()
                obs = observe(session)
                continue
            if log.isEnabledFor(logging.DEBUG):
                for s in scored:
                    log.debug("%s %s reach=%s hit=%s q=%.4f total=%.4f", obs.state, s.action_id,
                              s.page_reach_score, s.widget_hit_score, s.q_score, float(s.total))
            widget = next(w for w in obs.widgets if w.widget_id == choice.widget_id)
            action, action_id = choice.action, choice.action_id
        forced_restarts = 0

        event = session.perform(widget.widget_id, action)
        memory.action_counter += 1
        next_obs = observe(session) if session.alive else None
        key = (obs.state, action_id)
        reward = reward_for(event, target, memory, next_obs, rewards, key)
        if reward == rewards.crash_related:
            memory.credited.add(key)
        q.update(obs.state, action_id, reward, next_obs.state if next_obs else None)

        next_state = next_obs.state if next_obs else None
        memory.transition_log.append((obs.state, action_id, next_state))
        memory.interaction_cache.append(
            Step(obs.state, obs.page.page_id, widget.widget_id, names[widget.widget_id],
                 action, event.kind, next_state, event.invoked_apis)
        )
        action_log.append({
            "n": memory.action_counter, "page": obs.page.page_id, "widget": widget.widget_id,
            "action": action, "event": event.kind, "reward": reward, "mode": mode,
        })
        is_new = next_state is not None and next_state not in memory.visited_states
        memory.progress.append(is_new or reward == rewards.crash_related)
        if is_new:
            memory.visited_states.add(next_state)

        if event.kind == "Crashed" and is_target_crash(event, target, meta):
            return finish(True, "target crash reproduced")
        if event.kind in ("Crashed", "LeftApp"):
            memory.excluded.add((obs.state, action_id))
            session = restart(session)
            restarts += 1
            memory.clear_cache()
            next_obs = observe(session)
        obs = next_obs

        if mode == "escape":
            escape_left -= 1
            if escape_left <= 0:
                mode = "focused"
                memory.progress.clear()
        elif detect_stuck(memory, selector):
            mode, escape_left = "escape", selector.escape_duration
