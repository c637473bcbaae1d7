"""Next-page / next-widget prediction behind the two navigation prompts."""

from __future__ import annotations

import json
import logging
import os
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from pathlib import Path

from .tokens import stem, stem_overlap, tokenize

log = logging.getLogger(__name__)

TOP_K = 5

ENV_PREFIX = "CRASHREPRO_PREDICTOR_"


class PredictorError(Exception):
    pass


class EmptyWidgetList(PredictorError):
    pass


class PredictorUnavailable(PredictorError):
    pass


@dataclass(frozen=True)
class PromptContext:
    page_names: tuple[str, ...]
    current_page: str
    crash_page: str
    widgets: tuple[str, ...] = ()
    # container label per widget ("" for none), parallel to ``widgets``
    widget_groups: tuple[str, ...] = ()


@dataclass(frozen=True)
class NextPagePrediction:
    next_page: str


@dataclass(frozen=True)
class RankedWidgets:
    ranked: tuple[str, ...]


def page_label(name: str) -> str:
    return " ".join(tokenize(name))


def prompt_widget_name(display_name: str) -> str:
    return " ".join(display_name.lower().split())


def current_page_label(activity_name: str, kind: str) -> str:
    name = page_label(activity_name)
    return name if kind == "general" else f"{kind} of {name}"


def build_context(activity_names, page, widget_names, widget_groups, crash_page) -> PromptContext:
    """Assemble prompt inputs from an observed page."""
    names = tuple(n for n in (page_label(a) for a in activity_names) if n)
    return PromptContext(
        page_names=names,
        current_page=current_page_label(page.activity_name, page.kind),
        crash_page=" ".join(crash_page),
        widgets=tuple(prompt_widget_name(n) for n in widget_names),
        widget_groups=tuple(widget_groups),
    )


def _article(word: str) -> str:
    return "an" if word[:1].lower() in "aeiou" else "a"


def render_widget_list(names, groups) -> str:
    """Join widget names, folding runs that share a container into
    ``"x, y, z in a list"``."""
    parts: list[str] = []
    run: list[str] = []
    run_group = ""
    for name, group in zip(names, groups):
        if run and group != run_group:
            parts.append(_close_run(run, run_group))
            run = []
        run.append(name)
        run_group = group
    if run:
        parts.append(_close_run(run, run_group))
    return ", ".join(parts)


def _close_run(run: list[str], group: str) -> str:
    text = ", ".join(run)
    return f"{text} in {_article(group)} {group}" if group else text


def _preamble(ctx: PromptContext) -> str:
    return (
        f"There are {len(ctx.page_names)} pages in the app, named: "
        f"{', '.join(ctx.page_names)}. "
        f"I want to go from the {ctx.current_page} page to the {ctx.crash_page} page."
    )


def render_prompt_p1(ctx: PromptContext) -> str:
    return f"{_preamble(ctx)} What is the next page?"


def render_prompt_p2(ctx: PromptContext, next_page: str, excluded=frozenset()) -> str:
    groups = ctx.widget_groups or ("",) * len(ctx.widgets)
    kept = [(n, g) for n, g in zip(ctx.widgets, groups) if n not in excluded]
    if not kept:
        raise EmptyWidgetList("every widget on the page has been excluded")
    widgets = render_widget_list([n for n, _ in kept], [g for _, g in kept])
    return (
        f"{_preamble(ctx)} The next page may be the {next_page} page. "
        f"Here are widgets I can click: {widgets}. What should I click?"
    )


def resolve_name(reply: str, legal_names) -> str | None:
    """Map a free-form reply onto a legal name.

    Scans the first line of the reply left to right and returns the first
    name whose stemmed tokens appear contiguously; longer names win when
    several start at the same position.
    """
    lines = reply.strip().splitlines()
    if not lines:
        return None
    words = [stem(t) for t in tokenize(lines[0])]
    candidates = []
    for name in legal_names:
        key = [stem(t) for t in tokenize(name)]
        if key:
            candidates.append((name, key))
    for i in range(len(words)):
        hits = [(len(k), n) for n, k in candidates if words[i:i + len(k)] == k]
        if hits:
            return max(hits, key=lambda h: h[0])[1]
    return None


class OfflinePredictor:
    """Deterministic stemmed-token-overlap heuristic."""

    name = "offline"

    def __init__(self, transcript: list | None = None):
        self.transcript = transcript

    def predict_next_page(self, ctx: PromptContext) -> NextPagePrediction:
        crash = ctx.crash_page.split()
        best, best_score = ctx.page_names[0] if ctx.page_names else "", -1
        for name in ctx.page_names:
            score = stem_overlap(name.split(), crash)
            if score > best_score:
                best, best_score = name, score
        self._record("next_page", render_prompt_p1(ctx), best)
        return NextPagePrediction(best)

    def rank_widgets(self, ctx: PromptContext, next_page: str) -> list[str]:
        # widgets sharing nothing with the goal stay unranked: ordering them
        # would only encode their position on screen
        target = next_page.split() + ctx.crash_page.split()
        unique = list(dict.fromkeys(ctx.widgets))
        scores = {n: stem_overlap(tokenize(n), target) for n in unique}
        ranked = sorted((n for n in unique if scores[n] > 0), key=lambda n: -scores[n])
        return ranked[:TOP_K]

    def predict_widgets(self, ctx: PromptContext, next_page: str) -> RankedWidgets:
        ranked = self.rank_widgets(ctx, next_page)
        if self.transcript is not None and ctx.widgets:
            self._record("widgets", render_prompt_p2(ctx, next_page), ", ".join(ranked))
        return RankedWidgets(tuple(ranked))

    def _record(self, task: str, prompt: str, answer: str) -> None:
        if self.transcript is not None:
            self.transcript.append({"task": task, "prompt": prompt, "reply": answer})


@dataclass
class RemoteConfig:
    url: str
    token: str = ""
    model: str = ""
    timeout: float = 10.0
    debug_log: str | None = None

    @classmethod
    def load(cls, path=None, environ=None) -> RemoteConfig:
        """Read a JSON config file, then apply ``CRASHREPRO_PREDICTOR_*`` overrides."""
        environ = os.environ if environ is None else environ
        data: dict = {}
        if path:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        for key in ("url", "token", "model", "timeout"):
            value = environ.get(ENV_PREFIX + key.upper())
            if value:
                data[key] = value
        if not data.get("url"):
            raise PredictorError("remote predictor needs a url")
        data["timeout"] = float(data.get("timeout", 10.0))
        known = cls.__dataclass_fields__
        return cls(**{k: v for k, v in data.items() if k in known})


@dataclass
class RemotePredictor:
    """Sends rendered prompts to an HTTP completion endpoint.

    Any failure or unresolvable reply falls back to the offline answer, so
    this never does worse than :class:`OfflinePredictor`.
    """

    config: RemoteConfig
    transcript: list | None = None
    fallback: OfflinePredictor = field(default_factory=OfflinePredictor)
    name = "remote"

    def complete(self, prompt: str) -> str:
        body = {"prompt": prompt, "max_tokens": 32, "temperature": 0}
        if self.config.model:
            body["model"] = self.config.model
        payload = json.dumps(body).encode("utf-8")
        headers = {"Content-Type": "application/json"}
        if self.config.token:
            headers["Authorization"] = f"Bearer {self.config.token}"
        request = urllib.request.Request(self.config.url, data=payload, headers=headers)
        try:
            with urllib.request.urlopen(request, timeout=self.config.timeout) as resp:
                raw = resp.read().decode("utf-8")
        except (urllib.error.URLError, TimeoutError, OSError) as exc:
            raise PredictorUnavailable(str(exc)) from exc
        self._debug(payload.decode("utf-8"), raw)
        try:
            return _completion_text(json.loads(raw))
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise PredictorUnavailable(f"unreadable reply: {exc}") from exc

    def _debug(self, request: str, response: str) -> None:
        if self.config.debug_log:
            with open(self.config.debug_log, "a", encoding="utf-8") as fh:
                fh.write(json.dumps({"request": request, "response": response}) + "\n")

    def _ask(self, task: str, prompt: str) -> str | None:
        try:
            reply = self.complete(prompt)
        except PredictorUnavailable as exc:
            log.warning("remote predictor unavailable: %s", exc)
            return None
        if self.transcript is not None:
            self.transcript.append({"task": task, "prompt": prompt, "reply": reply})
        return reply

    def predict_next_page(self, ctx: PromptContext) -> NextPagePrediction:
        reply = self._ask("next_page", render_prompt_p1(ctx))
        page = resolve_name(reply, ctx.page_names) if reply is not None else None
        if page is None:
            return self.fallback.predict_next_page(ctx)
        return NextPagePrediction(page)

    def predict_widgets(self, ctx: PromptContext, next_page: str) -> RankedWidgets:
        offline = self.fallback.rank_widgets(ctx, next_page)
        unique = list(dict.fromkeys(ctx.widgets))
        ranked: list[str] = []
        for _ in range(min(TOP_K, len(unique))):
            try:
                prompt = render_prompt_p2(ctx, next_page, frozenset(ranked))
            except EmptyWidgetList:
                break
            reply = self._ask("widgets", prompt)
            if reply is None:
                break
            remaining = [n for n in unique if n not in ranked]
            choice = resolve_name(reply, remaining)
            if choice is None:
                choice = next((n for n in offline if n not in ranked), None)
            if choice is None:
                break
            ranked.append(choice)
        for name in offline:
            if len(ranked) >= TOP_K:
                break
            if name not in ranked:
                ranked.append(name)
        return RankedWidgets(tuple(ranked))


def _completion_text(data: dict) -> str:
    if "completion" in data:
        return str(data["completion"])
    choice = data["choices"][0]
    if "text" in choice:
        return str(choice["text"])
    return str(choice["message"]["content"])
