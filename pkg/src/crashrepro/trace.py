"""Stack-trace parsing into crash signatures."""

from __future__ import annotations

import re
from dataclasses import asdict, dataclass, field

from .tokens import tokenize


class TraceError(Exception):
    """Base class for trace parsing failures."""


class MalformedTrace(TraceError):
    pass


class DegradedTrace(TraceError):
    """Parsed, but a piece of guidance is missing.

    The partially filled signature is attached so callers can keep going.
    """

    def __init__(self, message: str, signature: CrashSignature):
        super().__init__(message)
        self.signature = signature


class NoAppFrames(DegradedTrace):
    pass


class NoCrashPage(DegradedTrace):
    pass


_HEADER = re.compile(
    r"^(?:Caused by:\s*)?"
    r"(?P<type>[A-Za-z_$][\w$]*(?:\.[A-Za-z_$][\w$]*)*)"
    r"(?::\s?(?P<message>.*))?$"
)
_FRAME = re.compile(r"^at\s+(?P<qualified>[\w$.<>]+)\((?P<location>[^)]*)\)\s*$")


@dataclass(frozen=True)
class AppMetadata:
    package_name: str
    activity_names: tuple[str, ...]

    def __post_init__(self):
        if not self.package_name:
            raise ValueError("package_name must be non-empty")
        if not self.activity_names:
            raise ValueError("activity_names must be non-empty")
        if len(set(self.activity_names)) != len(self.activity_names):
            raise ValueError("activity_names contains duplicates")


@dataclass(frozen=True)
class Frame:
    class_path: str
    method_name: str

    @property
    def simple_class(self) -> str:
        return self.class_path.rsplit(".", 1)[-1]

    @property
    def api_name(self) -> str:
        return f"{self.simple_class}.{self.method_name}"


@dataclass(frozen=True)
class CrashSignature:
    """Parsed crash target.

    ``crash_apis`` holds the tokenized method names of the app frames;
    ``api_names`` keeps the matching ``ClassName.methodName`` strings so
    invoked APIs reported at runtime can be compared exactly.
    """

    package_name: str
    exception_type: str
    message: str = ""
    app_frames: tuple[Frame, ...] = ()
    crash_apis: tuple[tuple[str, ...], ...] = ()
    api_names: tuple[str, ...] = ()
    crash_page: tuple[str, ...] = ()
    crash_page_kind: str | None = None
    frames: tuple[Frame, ...] = field(default=(), compare=False)

    @property
    def root_frame(self) -> Frame | None:
        if self.app_frames:
            return self.app_frames[0]
        return self.frames[0] if self.frames else None

    def to_dict(self) -> dict:
        data = asdict(self)
        data["app_frames"] = [list(astuple_frame(f)) for f in self.app_frames]
        data["frames"] = [list(astuple_frame(f)) for f in self.frames]
        data["crash_apis"] = [list(t) for t in self.crash_apis]
        data["api_names"] = list(self.api_names)
        data["crash_page"] = list(self.crash_page)
        return data


def astuple_frame(frame: Frame) -> tuple[str, str]:
    return frame.class_path, frame.method_name


def _split_sections(lines: list[str]) -> list[tuple[str, str, list[Frame]]]:
    sections: list[tuple[str, str, list[Frame]]] = []
    for line in lines:
        stripped = line.strip()
        if not stripped:
            continue
        frame = _FRAME.match(stripped)
        if frame:
            if not sections:
                continue
            qualified = frame.group("qualified")
            if "." not in qualified:
                continue
            class_path, method = qualified.rsplit(".", 1)
            sections[-1][2].append(Frame(class_path, method))
            continue
        header = _HEADER.match(stripped)
        if header and _looks_like_exception(header.group("type"), stripped):
            sections.append((header.group("type"), header.group("message") or "", []))
    return sections


def _looks_like_exception(type_name: str, line: str) -> bool:
    if line.startswith("Caused by:"):
        return True
    simple = type_name.rsplit(".", 1)[-1]
    return "." in type_name or simple.endswith(("Exception", "Error", "Throwable"))


def _in_package(class_path: str, package: str) -> bool:
    return class_path == package or class_path.startswith(package + ".")


def _outer_class(simple_class: str) -> str:
    return simple_class.split("$", 1)[0]


def _strip_activity(name: str) -> str:
    name = _outer_class(name)
    if name.lower().endswith("activity"):
        name = name[: -len("activity")]
    return name.lower()


def find_crash_page(
    app_frames: list[Frame], all_frames: list[Frame], activity_names
) -> tuple[tuple[str, ...], str | None]:
    activities = {_strip_activity(a): a for a in activity_names}
    for frame in app_frames:
        key = _strip_activity(frame.simple_class)
        if key and key in activities:
            # the frame's spelling carries the camel-case boundaries
            return tuple(tokenize(_outer_class(frame.simple_class))), "activity"
    app_set = set(app_frames)
    ordered = list(app_frames) + [f for f in all_frames if f not in app_set]
    for frame in ordered:
        outer = _outer_class(frame.simple_class)
        if "Fragment" in outer:
            tokens = tokenize(outer)
            if tokens:
                return tuple(tokens), "fragment"
    return (), None


def parse_trace(raw: str, meta: AppMetadata) -> CrashSignature:
    """Parse stack-trace text into a :class:`CrashSignature`.

    With ``Caused by:`` chains only the innermost cause is used. Raises
    :class:`NoAppFrames` or :class:`NoCrashPage` (carrying the partial
    signature) when guidance is missing, and :class:`MalformedTrace` when
    nothing parseable is found.
    """
    sections = _split_sections(raw.splitlines())
    if not sections:
        raise MalformedTrace("no exception header found")
    sections_with_frames = [s for s in sections if s[2]]
    if not sections_with_frames:
        raise MalformedTrace("no stack frames found")
    exception_type, message, frames = sections_with_frames[-1]

    app_frames = [f for f in frames if _in_package(f.class_path, meta.package_name)]
    crash_apis: list[tuple[str, ...]] = []
    api_names: list[str] = []
    for frame in app_frames:
        tokens = tuple(tokenize(frame.method_name))
        if tokens and tokens not in crash_apis:
            crash_apis.append(tokens)
        if frame.api_name not in api_names:
            api_names.append(frame.api_name)
    page, kind = find_crash_page(app_frames, frames, meta.activity_names)

    signature = CrashSignature(
        package_name=meta.package_name,
        exception_type=exception_type,
        message=message,
        app_frames=tuple(app_frames),
        crash_apis=tuple(crash_apis),
        api_names=tuple(api_names),
        crash_page=page,
        crash_page_kind=kind,
        frames=tuple(frames),
    )
    if not app_frames:
        raise NoAppFrames(f"no frame under package {meta.package_name}", signature)
    if not page:
        raise NoCrashPage("no activity or fragment frame found", signature)
    return signature


def parse_trace_lenient(raw: str, meta: AppMetadata) -> tuple[CrashSignature, list[str]]:
    """Like :func:`parse_trace` but returns degraded signatures with warnings."""
    warnings: list[str] = []
    try:
        return parse_trace(raw, meta), warnings
    except DegradedTrace as exc:
        signature = exc.signature
        warnings.append(type(exc).__name__)
        if isinstance(exc, NoAppFrames) and not signature.crash_page:
            warnings.append(NoCrashPage.__name__)
        return signature, warnings


def signature_matches(observed: CrashSignature, target: CrashSignature) -> bool:
    """Same exception type and same innermost app frame; messages ignored."""
    if observed.exception_type != target.exception_type:
        return False
    return observed.root_frame == target.root_frame
