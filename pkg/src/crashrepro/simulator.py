"""Deterministic fixture-driven stand-in for an app running on a device.

Fixtures are JSON documents (``schema_version`` 1)::

    {
      "schema_version": 1,
      "package_name": "org.example.notes",
      "activity_names": ["MainActivity", "SettingsActivity"],
      "entry_page": "main",
      "pages": [
        {"page_id": "main", "activity_name": "MainActivity", "kind": "general",
         "fragment_name": "", "rotatable": false,
         "widgets": [{"widget_id": "w1", "widget_class": "text_like",
                      "text": "Settings", "clickable": true}]}
      ],
      "transitions": [
        {"from_page": "main", "widget": "w1", "action": "tap",
         "guard": [["main", "w0", "tap"]], "invoked_apis": ["Main.openSettings"],
         "outcome": {"type": "next_page", "page": "settings"}}
      ],
      "crashes": {"c1": "java.lang.IllegalStateException: boom\\n\\tat ...(Foo.java:{line})"}
    }

Outcome types are ``next_page``, ``out_of_app``, ``crash`` (with ``crash_id``)
and ``noop``. Every page carries a synthetic ``back`` widget; an unmapped
back pops the page stack and leaves the app from the entry page.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

PAGE_KINDS = ("general", "menu", "dialog")
WIDGET_CLASSES = ("text_like", "icon_like", "input")
ACTIONS = ("tap", "long_tap", "type_text", "rotate", "back")
OUTCOMES = ("next_page", "out_of_app", "crash", "noop")
BACK_WIDGET = "back"
SCHEMA_VERSION = 1


class SimulatorError(Exception):
    pass


class InvalidModel(SimulatorError):
    def __init__(self, path: str, problem: str):
        super().__init__(f"{path}: {problem}")
        self.path = path
        self.problem = problem


class SessionDead(SimulatorError):
    pass


class IllegalAction(SimulatorError):
    pass


@dataclass(frozen=True)
class WidgetSpec:
    widget_id: str
    widget_class: str = "text_like"
    text: str = ""
    content_description: str = ""
    resource_id: str = ""
    nearby_text: str = ""
    sibling_text: str = ""
    child_text: str = ""
    clickable: bool = False
    long_clickable: bool = False
    container_group: str = ""
    accepted_text: str = ""

    @property
    def interactable(self) -> bool:
        return self.clickable or self.long_clickable or self.widget_class == "input"

    def actions(self) -> tuple[str, ...]:
        if self.widget_id == BACK_WIDGET:
            return ("back",)
        acts = []
        if self.clickable:
            acts.append("tap")
        if self.long_clickable:
            acts.append("long_tap")
        if self.widget_class == "input":
            acts.append("type_text")
        return tuple(acts)


@dataclass(frozen=True)
class PageSpec:
    page_id: str
    activity_name: str
    kind: str = "general"
    widgets: tuple[WidgetSpec, ...] = ()
    fragment_name: str = ""
    rotatable: bool = False

    def widget(self, widget_id: str) -> WidgetSpec | None:
        for w in self.widgets:
            if w.widget_id == widget_id:
                return w
        return None


@dataclass(frozen=True)
class Outcome:
    type: str
    page: str = ""
    crash_id: str = ""


@dataclass(frozen=True)
class TransitionSpec:
    from_page: str
    widget: str
    action: str
    outcome: Outcome
    guard: frozenset[tuple[str, str, str]] = frozenset()
    invoked_apis: tuple[str, ...] = ()


@dataclass(frozen=True)
class AppModel:
    package_name: str
    activity_names: tuple[str, ...]
    entry_page: str
    pages: tuple[PageSpec, ...]
    transitions: tuple[TransitionSpec, ...]
    crashes: dict[str, str] = field(default_factory=dict, hash=False)

    def page(self, page_id: str) -> PageSpec:
        for p in self.pages:
            if p.page_id == page_id:
                return p
        raise KeyError(page_id)


@dataclass(frozen=True)
class SessionEvent:
    kind: str  # PageChanged | Crashed | LeftApp | NoChange
    invoked_apis: tuple[str, ...] = ()
    new_page: str | None = None
    raw_trace: str | None = None


BACK = WidgetSpec(
    widget_id=BACK_WIDGET, widget_class="icon_like", content_description="back",
    nearby_text="back", clickable=True,
)


def widget_display_name(w: WidgetSpec) -> str:
    """Representative name: first non-empty textual attribute for text-like
    and input widgets, first non-empty contextual text for icon-like ones."""
    if w.widget_class == "icon_like":
        candidates = (w.nearby_text, w.sibling_text, w.child_text)
    else:
        candidates = (w.text, w.content_description, w.resource_id)
    for c in candidates:
        if c and c.strip():
            return c.strip()
    return f"unnamed widget {w.widget_id}"


# -- loading & validation ---------------------------------------------------


def _widget_from_dict(d: dict) -> WidgetSpec:
    known = WidgetSpec.__dataclass_fields__
    return WidgetSpec(**{k: v for k, v in d.items() if k in known})


def app_from_dict(data: dict) -> AppModel:
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise InvalidModel("schema_version", f"unsupported version {version!r}")
    try:
        pages = tuple(
            PageSpec(
                page_id=p["page_id"],
                activity_name=p["activity_name"],
                kind=p.get("kind", "general"),
                widgets=tuple(_widget_from_dict(w) for w in p.get("widgets", [])),
                fragment_name=p.get("fragment_name", ""),
                rotatable=p.get("rotatable", False),
            )
            for p in data["pages"]
        )
        transitions = tuple(
            TransitionSpec(
                from_page=t["from_page"],
                widget=t["widget"],
                action=t["action"],
                outcome=Outcome(**t.get("outcome", {"type": "noop"})),
                guard=frozenset(tuple(g) for g in t.get("guard", [])),
                invoked_apis=tuple(t.get("invoked_apis", [])),
            )
            for t in data.get("transitions", [])
        )
        app = AppModel(
            package_name=data["package_name"],
            activity_names=tuple(data["activity_names"]),
            entry_page=data["entry_page"],
            pages=pages,
            transitions=transitions,
            crashes=dict(data.get("crashes", {})),
        )
    except KeyError as exc:
        raise InvalidModel("<root>", f"missing field {exc}") from None
    except TypeError as exc:
        raise InvalidModel("<root>", str(exc)) from None
    validate(app)
    return app


def app_to_dict(app: AppModel) -> dict:
    def widget(w: WidgetSpec) -> dict:
        out = {"widget_id": w.widget_id, "widget_class": w.widget_class}
        for name in WidgetSpec.__dataclass_fields__:
            value = getattr(w, name)
            if name not in out and value not in ("", False):
                out[name] = value
        return out

    def transition(t: TransitionSpec) -> dict:
        out = {"from_page": t.from_page, "widget": t.widget, "action": t.action}
        if t.guard:
            out["guard"] = sorted(list(g) for g in t.guard)
        if t.invoked_apis:
            out["invoked_apis"] = list(t.invoked_apis)
        outcome = {"type": t.outcome.type}
        if t.outcome.page:
            outcome["page"] = t.outcome.page
        if t.outcome.crash_id:
            outcome["crash_id"] = t.outcome.crash_id
        out["outcome"] = outcome
        return out

    return {
        "schema_version": SCHEMA_VERSION,
        "package_name": app.package_name,
        "activity_names": list(app.activity_names),
        "entry_page": app.entry_page,
        "pages": [
            {
                "page_id": p.page_id,
                "activity_name": p.activity_name,
                "kind": p.kind,
                **({"fragment_name": p.fragment_name} if p.fragment_name else {}),
                **({"rotatable": True} if p.rotatable else {}),
                "widgets": [widget(w) for w in p.widgets],
            }
            for p in app.pages
        ],
        "transitions": [transition(t) for t in app.transitions],
        "crashes": dict(app.crashes),
    }


def load_app(path) -> AppModel:
    with open(path, encoding="utf-8") as fh:
        return app_from_dict(json.load(fh))


def save_app(app: AppModel, path) -> None:
    Path(path).write_text(json.dumps(app_to_dict(app), indent=1) + "\n", encoding="utf-8")


def validate(app: AppModel) -> None:
    pages = {}
    for i, p in enumerate(app.pages):
        where = f"pages[{i}]"
        if p.page_id in pages:
            raise InvalidModel(where, f"duplicate page_id {p.page_id!r}")
        if p.kind not in PAGE_KINDS:
            raise InvalidModel(where, f"unknown kind {p.kind!r}")
        ids = set()
        for j, w in enumerate(p.widgets):
            if w.widget_id in ids or w.widget_id == BACK_WIDGET:
                raise InvalidModel(f"{where}.widgets[{j}]", f"bad widget_id {w.widget_id!r}")
            if w.widget_class not in WIDGET_CLASSES:
                raise InvalidModel(f"{where}.widgets[{j}]", f"unknown class {w.widget_class!r}")
            ids.add(w.widget_id)
        pages[p.page_id] = p
    if app.entry_page not in pages:
        raise InvalidModel("entry_page", f"unknown page {app.entry_page!r}")

    def check_event(where: str, page_id: str, widget_id: str, action: str):
        if page_id not in pages:
            raise InvalidModel(where, f"unknown page {page_id!r}")
        if action not in ACTIONS:
            raise InvalidModel(where, f"unknown action {action!r}")
        if widget_id != BACK_WIDGET and pages[page_id].widget(widget_id) is None:
            raise InvalidModel(where, f"unknown widget {page_id}/{widget_id}")

    unguarded = set()
    for i, t in enumerate(app.transitions):
        where = f"transitions[{i}]"
        check_event(where, t.from_page, t.widget, t.action)
        for g in t.guard:
            if len(g) != 3:
                raise InvalidModel(f"{where}.guard", f"malformed event {g!r}")
            check_event(f"{where}.guard", *g)
        o = t.outcome
        if o.type not in OUTCOMES:
            raise InvalidModel(f"{where}.outcome", f"unknown outcome {o.type!r}")
        if o.type == "next_page" and o.page not in pages:
            raise InvalidModel(f"{where}.outcome", f"dangling page {o.page!r}")
        if o.type == "crash" and o.crash_id not in app.crashes:
            raise InvalidModel(f"{where}.outcome", f"undefined crash {o.crash_id!r}")
        if not t.guard:
            key = (t.from_page, t.widget, t.action)
            if key in unguarded:
                raise InvalidModel(where, f"second unguarded transition for {key}")
            unguarded.add(key)


# -- sessions ---------------------------------------------------------------


class Session:
    """One app launch. Single-threaded; create one per concurrent run."""

    def __init__(self, app: AppModel, seed: int = 0, launch: int = 0, _index=None):
        self.app = app
        self.seed = seed
        self.launch = launch
        self.history: list[tuple[str, str, str]] = []
        self.events: list[SessionEvent] = []
        self.stack: list[str] = [app.entry_page]
        self.alive = True
        self._rng = random.Random(f"{seed}:{launch}")
        self._index = _index if _index is not None else _index_transitions(app)

    @property
    def current_page(self) -> str:
        return self.stack[-1]

    def observe(self) -> tuple[PageSpec, list[WidgetSpec]]:
        if not self.alive:
            raise SessionDead("session has crashed or left the app")
        page = self.app.page(self.current_page)
        return page, [w for w in page.widgets if w.interactable] + [BACK]

    def legal_actions(self, widget: WidgetSpec, page: PageSpec) -> tuple[str, ...]:
        if widget.widget_id == BACK_WIDGET and page.rotatable:
            return ("back", "rotate")
        return widget.actions()

    def perform(self, widget_id: str, action: str) -> SessionEvent:
        page, interactables = self.observe()
        widget = next((w for w in interactables if w.widget_id == widget_id), None)
        if widget is None or action not in self.legal_actions(widget, page):
            raise IllegalAction(f"{action} on {page.page_id}/{widget_id} is not available")
        transition = self._select(page.page_id, widget_id, action)
        self.history.append((page.page_id, widget_id, action))
        apis = transition.invoked_apis if transition else ()
        outcome = transition.outcome if transition else self._default(action)
        event = self._apply(outcome, apis)
        self.events.append(event)
        return event

    def _select(self, page_id: str, widget_id: str, action: str) -> TransitionSpec | None:
        done = set(self.history)
        best = None
        for t in self._index.get((page_id, widget_id, action), ()):
            if t.guard and t.guard <= done:
                if best is None or len(t.guard) > len(best.guard):
                    best = t
        if best is not None:
            return best
        for t in self._index.get((page_id, widget_id, action), ()):
            if not t.guard:
                return t
        return None

    def _default(self, action: str) -> Outcome:
        if action == "back":
            if len(self.stack) > 1:
                return Outcome("next_page", page=self.stack[-2])
            return Outcome("out_of_app")
        return Outcome("noop")

    def _apply(self, outcome: Outcome, apis: tuple[str, ...]) -> SessionEvent:
        if outcome.type == "noop":
            return SessionEvent("NoChange", apis)
        if outcome.type == "out_of_app":
            self.alive = False
            return SessionEvent("LeftApp", apis)
        if outcome.type == "crash":
            self.alive = False
            line = self._rng.randint(20, 999)
            text = self.app.crashes[outcome.crash_id].replace("{line}", str(line))
            return SessionEvent("Crashed", apis, raw_trace=text)
        target = outcome.page
        if target in self.stack:
            del self.stack[self.stack.index(target) + 1:]
        else:
            self.stack.append(target)
        return SessionEvent("PageChanged", apis, new_page=target)


def _index_transitions(app: AppModel) -> dict:
    index: dict = {}
    for t in app.transitions:
        index.setdefault((t.from_page, t.widget, t.action), []).append(t)
    return index


def start_session(app: AppModel, seed: int = 0) -> Session:
    validate(app)
    return Session(app, seed)


def restart(session: Session) -> Session:
    """Fresh launch of the same app; event history is not carried over."""
    return Session(session.app, session.seed, session.launch + 1, _index=session._index)
