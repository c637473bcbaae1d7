"""Trace minimization and replay artifacts.

Script grammar (version 1): ``#`` lines are comments/headers, blank lines
are ignored, and every other line is ``<ordinal> <action> <page_id>/<widget_id>``.
Recognised headers::

    # crashrepro-script 1
    # package <package_name>
    # target <exception_type> <class_path>.<method_name>
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .explorer import Step, is_target_crash
from .simulator import AppModel, IllegalAction, SessionDead, start_session
from .trace import AppMetadata, CrashSignature, Frame

SCRIPT_VERSION = 1

_SCRIPT_LINE = re.compile(r"^(\d+)\s+(\w+)\s+([^/\s]+)/(\S+)$")
_STEP_LINE = re.compile(r"^\d+\.\s+(.*)$")

_VERBS = {"tap": "Tap", "long_tap": "Long-tap"}


class ReplayError(Exception):
    pass


class MinimizationFailed(ReplayError):
    pass


class ScriptError(ReplayError):
    def __init__(self, line_no: int, problem: str):
        super().__init__(f"line {line_no}: {problem}")
        self.line_no = line_no


@dataclass(frozen=True)
class ReproductionTrace:
    raw_steps: tuple[Step, ...]
    target: CrashSignature
    minimized_steps: tuple[Step, ...] = field(default=())


@dataclass(frozen=True)
class ScriptAction:
    ordinal: int
    action: str
    page_id: str
    widget_id: str
    line_no: int = 0


def replay_steps(app: AppModel, actions, target: CrashSignature, seed: int = 0) -> bool:
    """Run ``(page_id, widget_id, action)`` triples on a fresh session; True
    if the last one raises the target crash."""
    session = start_session(app, seed)
    meta = AppMetadata(app.package_name, app.activity_names)
    event = None
    for page_id, widget_id, action in actions:
        if not session.alive or session.current_page != page_id:
            return False
        try:
            event = session.perform(widget_id, action)
        except (IllegalAction, SessionDead):
            return False
    return event is not None and is_target_crash(event, target, meta)


def _triples(steps):
    return [(s.page_id, s.widget_id, s.action) for s in steps]


def _splice_all(steps: list[Step]) -> list[Step]:
    steps = list(steps)
    while True:
        for i, step in enumerate(steps):
            later = [j for j in range(i + 1, len(steps)) if steps[j].pre_state == step.pre_state]
            if later:
                steps = steps[:i] + steps[later[-1]:]
                break
        else:
            return steps


def _single_splices(steps: list[Step]):
    for i, step in enumerate(steps):
        for j in range(len(steps) - 1, i, -1):
            if steps[j].pre_state == step.pre_state:
                yield steps[:i] + steps[j:]


def minimize(trace: ReproductionTrace, app: AppModel, seed: int = 0) -> ReproductionTrace:
    """Drop interactions that only loop back to an already visited state.

    Every loop (a stretch starting and ending on the same pre-state) is cut
    at once; if the shortened trace no longer crashes because a loop did
    something needed later, loops are cut one at a time instead, keeping a
    cut only when replay still reproduces the crash.
    """
    source = list(trace.minimized_steps or trace.raw_steps)

    def ok(steps) -> bool:
        return replay_steps(app, _triples(steps), trace.target, seed)

    if not ok(source):
        raise MinimizationFailed("the trace does not reproduce the crash on replay")
    current = source
    while True:
        candidate = _splice_all(current)
        if len(candidate) < len(current) and ok(candidate):
            current = candidate
            continue
        for candidate in _single_splices(current):
            if ok(candidate):
                current = candidate
                break
        else:
            break
    return replace(trace, minimized_steps=tuple(current))


# -- artifacts ----------------------------------------------------------------


def emit_script(trace: ReproductionTrace, app: AppModel) -> str:
    steps = trace.minimized_steps or trace.raw_steps
    root = trace.target.root_frame
    lines = [
        f"# crashrepro-script {SCRIPT_VERSION}",
        f"# package {app.package_name}",
    ]
    if root is not None:
        lines.append(f"# target {trace.target.exception_type} {root.class_path}.{root.method_name}")
    else:
        lines.append(f"# target {trace.target.exception_type}")
    for n, s in enumerate(steps, start=1):
        lines.append(f"{n} {s.action} {s.page_id}/{s.widget_id}")
    return "\n".join(lines) + "\n"


def describe_step(action: str, widget_name: str, app: AppModel | None = None, page_id: str = "", widget_id: str = "") -> str:
    if action in _VERBS:
        return f"{_VERBS[action]} '{widget_name}'"
    if action == "back":
        return "Press back"
    if action == "rotate":
        return "Rotate the device"
    if action == "type_text":
        text = ""
        if app is not None:
            widget = app.page(page_id).widget(widget_id)
            text = widget.accepted_text if widget else ""
        return f"Type '{text}' into '{widget_name}'"
    raise ValueError(f"unknown action {action!r}")


def emit_steps(trace: ReproductionTrace, app: AppModel | None = None) -> str:
    steps = trace.minimized_steps or trace.raw_steps
    lines = ["1. Launch the app"]
    for n, s in enumerate(steps, start=2):
        lines.append(f"{n}. {describe_step(s.action, s.widget_name, app, s.page_id, s.widget_id)}")
    lines.append(f"{len(steps) + 2}. Expected: the app crashes with {trace.target.exception_type}")
    return "\n".join(lines) + "\n"


def parse_script(text: str) -> tuple[dict, list[ScriptAction]]:
    headers: dict = {}
    actions: list[ScriptAction] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) >= 2:
                headers[parts[0]] = " ".join(parts[1:])
            continue
        m = _SCRIPT_LINE.match(line)
        if not m:
            raise ScriptError(line_no, f"cannot parse {line!r}")
        ordinal = int(m.group(1))
        if ordinal != len(actions) + 1:
            raise ScriptError(line_no, f"expected ordinal {len(actions) + 1}, got {ordinal}")
        actions.append(ScriptAction(ordinal, m.group(2), m.group(3), m.group(4), line_no))
    version = headers.get("crashrepro-script")
    if version is not None and version != str(SCRIPT_VERSION):
        raise ScriptError(1, f"unsupported script version {version}")
    return headers, actions


def target_from_headers(headers: dict, package_name: str) -> CrashSignature | None:
    value = headers.get("target")
    if not value:
        return None
    parts = value.split()
    frames: tuple[Frame, ...] = ()
    if len(parts) > 1 and "." in parts[1]:
        class_path, method = parts[1].rsplit(".", 1)
        frames = (Frame(class_path, method),)
    in_package = tuple(f for f in frames if f.class_path == package_name or f.class_path.startswith(package_name + "."))
    return CrashSignature(package_name, parts[0], app_frames=in_package, frames=frames)


def parse_steps(text: str) -> list[tuple[str, str]]:
    """Recover ``(action, widget_name)`` pairs from emitted steps text."""
    out = []
    for line in text.splitlines():
        m = _STEP_LINE.match(line.strip())
        if not m:
            continue
        body = m.group(1)
        if body == "Launch the app" or body.startswith("Expected:"):
            continue
        if body == "Press back":
            out.append(("back", "back"))
        elif body == "Rotate the device":
            out.append(("rotate", "back"))
        elif body.startswith("Type "):
            out.append(("type_text", body.rsplit(" into ", 1)[1].strip("'")))
        else:
            verb, _, name = body.partition(" ")
            action = {v: k for k, v in _VERBS.items()}[verb]
            out.append((action, name.strip("'")))
    return out


@dataclass
class ReplayOutcome:
    reproduced: bool
    message: str
    events: list = field(default_factory=list)


def run_script(text: str, app: AppModel, target: CrashSignature | None = None, seed: int = 0) -> ReplayOutcome:
    """Execute a replay script on a fresh session of ``app``."""
    headers, actions = parse_script(text)
    package = headers.get("package")
    if package and package != app.package_name:
        raise ScriptError(2, f"script is for {package}, fixture is {app.package_name}")
    if target is None:
        target = target_from_headers(headers, app.package_name)
    if target is None:
        raise ScriptError(1, "no target header and no target trace given")
    meta = AppMetadata(app.package_name, app.activity_names)
    session = start_session(app, seed)
    events = []
    for act in actions:
        if not session.alive:
            raise ScriptError(act.line_no, "app is no longer running")
        if session.current_page != act.page_id:
            raise ScriptError(act.line_no, f"expected page {act.page_id!r}, app is on {session.current_page!r}")
        try:
            events.append(session.perform(act.widget_id, act.action))
        except IllegalAction as exc:
            raise ScriptError(act.line_no, str(exc)) from None
    if events and is_target_crash(events[-1], target, meta):
        return ReplayOutcome(True, "target crash reproduced", events)
    last = events[-1].kind if events else "nothing"
    return ReplayOutcome(False, f"final event was {last}, not the target crash", events)
