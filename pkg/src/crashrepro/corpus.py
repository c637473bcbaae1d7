"""Fixture corpus: loading, a breadth-first reachability oracle, and the
deterministic generator that produced the bundled cases.

Corpus layout: one directory per case holding ``app.json`` (fixture),
``trace.txt`` (target stack trace) and ``case.json``
(``{"name", "reproducible", "depth", "kind", "description"}``).
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass
from pathlib import Path

from .simulator import (
    AppModel, Outcome, PageSpec, TransitionSpec, WidgetSpec, app_from_dict, app_to_dict,
    load_app, start_session,
)
from .trace import AppMetadata, CrashSignature, parse_trace_lenient, signature_matches

DEFAULT_CORPUS = Path(__file__).parent / "data" / "corpus"


@dataclass(frozen=True)
class CorpusCase:
    name: str
    app: AppModel
    trace_text: str
    reproducible: bool
    depth: int | None
    kind: str = "generated"
    description: str = ""
    path: Path | None = None

    @property
    def meta(self) -> AppMetadata:
        return AppMetadata(self.app.package_name, self.app.activity_names)

    def target(self) -> tuple[CrashSignature, list[str]]:
        return parse_trace_lenient(self.trace_text, self.meta)


def load_case(directory) -> CorpusCase:
    directory = Path(directory)
    info = json.loads((directory / "case.json").read_text(encoding="utf-8"))
    return CorpusCase(
        name=info.get("name", directory.name),
        app=load_app(directory / "app.json"),
        trace_text=(directory / "trace.txt").read_text(encoding="utf-8"),
        reproducible=bool(info.get("reproducible", True)),
        depth=info.get("depth"),
        kind=info.get("kind", "generated"),
        description=info.get("description", ""),
        path=directory,
    )


def load_corpus(directory=DEFAULT_CORPUS) -> list[CorpusCase]:
    directory = Path(directory)
    return [load_case(d) for d in sorted(directory.iterdir()) if (d / "case.json").exists()]


def write_case(case: CorpusCase, root) -> Path:
    directory = Path(root) / case.name
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "app.json").write_text(json.dumps(app_to_dict(case.app), indent=1) + "\n", encoding="utf-8")
    (directory / "trace.txt").write_text(case.trace_text, encoding="utf-8")
    info = {
        "name": case.name, "reproducible": case.reproducible, "depth": case.depth,
        "kind": case.kind, "description": case.description,
    }
    (directory / "case.json").write_text(json.dumps(info, indent=1) + "\n", encoding="utf-8")
    return directory


# -- breadth-first oracle -----------------------------------------------------


def shortest_crash_path(app: AppModel, target: CrashSignature, max_depth: int = 12):
    """Shortest action sequence that raises ``target``, found by exhaustive
    breadth-first search over (page stack, relevant history) states.

    Returns a list of ``(page_id, widget_id, action)`` or None.
    """
    meta = AppMetadata(app.package_name, app.activity_names)
    guard_events = set()
    for t in app.transitions:
        guard_events |= t.guard

    def run(path):
        session = start_session(app, 0)
        event = None
        for page_id, widget_id, action in path:
            event = session.perform(widget_id, action)
        return session, event

    start = run([])[0]
    seen = {(tuple(start.stack), frozenset())}
    queue = deque([[]])
    while queue:
        path = queue.popleft()
        if len(path) >= max_depth:
            continue
        session, _ = run(path)
        page, widgets = session.observe()
        for w in widgets:
            for action in session.legal_actions(w, page):
                step = (page.page_id, w.widget_id, action)
                candidate = path + [step]
                s2, event = run(candidate)
                if event.kind == "Crashed":
                    observed = parse_trace_lenient(event.raw_trace, meta)[0]
                    if signature_matches(observed, target):
                        return candidate
                    continue
                if not s2.alive:
                    continue
                key = (tuple(s2.stack), frozenset(set(s2.history) & guard_events))
                if key not in seen:
                    seen.add(key)
                    queue.append(candidate)
    return None


def mean_interactables(app: AppModel) -> float:
    """Average number of interactable widgets (including back) per page."""
    counts = []
    for page in app.pages:
        counts.append(sum(1 for w in page.widgets if w.interactable) + 1)
    return sum(counts) / len(counts)


# -- generator ------------------------------------------------------------------

TOPICS = [
    "Settings", "Search", "Account", "Profile", "Privacy", "Notifications", "Downloads",
    "History", "Bookmarks", "Feed", "Editor", "Gallery", "Player", "Filters", "Export",
    "Sync", "Theme", "Backup", "Storage", "Security", "Language", "Display", "Playlist",
    "Album", "Contacts", "Inbox", "Calendar", "Reminder", "Route", "Camera", "Tags",
    "Folders", "Archive", "Stats", "Wallet", "Subscription", "Widgets", "Shortcuts",
]
QUALIFIERS = ["Advanced", "Installed", "Shared", "Custom", "Recent", "Default", "Offline", "Linked"]
OBJECTS = [
    ("Search", "Engine"), ("Cloud", "Folder"), ("Font", "Size"), ("Alarm", "Tone"),
    ("Cache", "Entry"), ("Email", "Address"), ("Color", "Scheme"), ("Track", "Queue"),
    ("Photo", "Album"), ("Sync", "Interval"), ("Map", "Tile"), ("Login", "Token"),
    ("Tag", "Label"), ("Note", "Title"), ("Backup", "File"), ("Proxy", "Host"),
]
ABBREVIATIONS = [("Msg", "Message", "List"), ("Pwd", "Password", "Field"), ("Img", "Image", "Caption"),
                 ("Cfg", "Config", "Profile")]
VERBS = ["refetch", "load", "update", "save", "apply", "parse", "render", "validate", "restore"]
FILLER = [
    "Share", "Refresh", "Sort", "Like", "Copy", "Favorite", "Rename", "Details", "Info",
    "Select all", "Grid view", "Undo", "Pin", "Mute", "Zoom", "Report", "Translate",
]
UNINFORMATIVE = ["More", "Next", "Open", "Continue", "Go", "Menu"]
EXCEPTIONS = [
    ("java.lang.NullPointerException", "Attempt to invoke virtual method 'int java.util.List.size()' on a null object reference"),
    ("java.lang.IllegalStateException", "Fragment not attached to a context"),
    ("java.lang.IndexOutOfBoundsException", "Index: 3, Size: 3"),
    ("java.lang.NumberFormatException", "For input string: \"\""),
    ("java.lang.ClassCastException", "java.lang.String cannot be cast to java.lang.Integer"),
]
FRAMEWORK_TAIL = [
    "\tat android.view.View.performClick(View.java:6256)",
    "\tat android.view.View$PerformClick.run(View.java:24701)",
    "\tat android.os.Handler.handleCallback(Handler.java:789)",
    "\tat android.os.Handler.dispatchMessage(Handler.java:98)",
    "\tat android.os.Looper.loop(Looper.java:164)",
    "\tat android.app.ActivityThread.main(ActivityThread.java:6541)",
]


def _camel(*words: str) -> str:
    return "".join(w[:1].upper() + w[1:] for w in " ".join(words).split())


class _Builder:
    def __init__(self, rng: random.Random, package: str):
        self.rng = rng
        self.package = package
        self.pages: list[dict] = []
        self.transitions: list[TransitionSpec] = []
        self.crashes: dict[str, str] = {}
        self.activities: list[str] = []
        self._pid = 0

    def page(self, activity: str, kind: str = "general", fragment: str = "") -> dict:
        page_id = "main" if not self.pages else f"p{self._pid}"
        self._pid += 1
        page = {"page_id": page_id, "activity": activity, "kind": kind, "fragment": fragment, "widgets": []}
        self.pages.append(page)
        if activity not in self.activities:
            self.activities.append(activity)
        return page

    def widget(self, page: dict, label: str, icon: bool = False, group: str = "", long: bool = False) -> str:
        widget_id = f"w{len(page['widgets']) + 1}"
        if icon:
            w = WidgetSpec(widget_id, "icon_like", nearby_text=label, clickable=True, container_group=group)
        else:
            w = WidgetSpec(widget_id, "text_like", text=label, clickable=True, long_clickable=long,
                           container_group=group)
        page["widgets"].append(w)
        return widget_id

    def link(self, page: dict, widget_id: str, outcome: Outcome, apis=(), guard=(), action="tap"):
        self.transitions.append(TransitionSpec(page["page_id"], widget_id, action, outcome,
                                               frozenset(guard), tuple(apis)))

    def pad(self, page: dict, width: int, decoy: str = "", dead_ends: bool = True) -> None:
        """Fill ``page`` with distractors up to ``width`` interactables (back included)."""
        rng = self.rng
        labels = [f for f in FILLER if all(f != w.text and f != w.nearby_text for w in page["widgets"])]
        rng.shuffle(labels)
        if decoy:
            labels.insert(0, decoy)
        while len(page["widgets"]) + 1 < width and labels:
            label = labels.pop(0)
            wid = self.widget(page, label, group="list" if rng.random() < 0.3 else "")
            roll = rng.random()
            if dead_ends and roll < 0.2:
                side = self.page(_camel(rng.choice(TOPICS)) + "Activity")
                self.link(page, wid, Outcome("next_page", page=side["page_id"]))
                for _ in range(rng.choice([4, 5, 6, 6])):
                    self.widget(side, labels.pop(0) if labels else rng.choice(FILLER) + " item")
            elif roll < 0.28:
                self.link(page, wid, Outcome("out_of_app"))

    def build(self, entry: str = "main") -> AppModel:
        pages = []
        for p in self.pages:
            widgets = list(p["widgets"])
            self.rng.shuffle(widgets)
            pages.append(PageSpec(p["page_id"], p["activity"], p["kind"], tuple(widgets), p["fragment"]))
        pages = tuple(pages)
        return AppModel(self.package, tuple(self.activities), entry, pages, tuple(self.transitions), dict(self.crashes))


def _crash_text(package: str, exc: tuple[str, str], api_class: str, method: str, page_class: str,
                module: str, line: str = "{line}") -> str:
    head = f"{exc[0]}: {exc[1]}"
    frames = [
        f"\tat {package}.{module}.{api_class}.{method}({api_class}.java:{line})",
        f"\tat {package}.{module}.{api_class}.access$000({api_class}.java:41)",
        f"\tat {package}.ui.{page_class}.onClick({page_class}.java:212)",
    ]
    return "\n".join([head] + frames + FRAMEWORK_TAIL) + "\n"


def _framework_crash_text() -> str:
    head = ("java.lang.IllegalStateException: The content of the adapter has changed but ListView "
            "did not receive a notification.")
    frames = [
        "\tat android.widget.ListView.layoutChildren(ListView.java:{line})",
        "\tat android.widget.AbsListView.onLayout(AbsListView.java:2148)",
        "\tat android.view.View.layout(View.java:19586)",
        "\tat android.view.ViewGroup.layout(ViewGroup.java:6053)",
    ]
    return "\n".join([head] + frames + FRAMEWORK_TAIL) + "\n"


def _util_crash_text(package: str, exc: tuple[str, str], api_class: str, method: str) -> str:
    frames = [
        f"\tat {package}.util.{api_class}.{method}({api_class}.java:{{line}})",
        f"\tat {package}.util.{api_class}.run({api_class}.java:77)",
        "\tat android.os.AsyncTask$2.call(AsyncTask.java:333)",
        "\tat java.util.concurrent.FutureTask.run(FutureTask.java:266)",
    ]
    return "\n".join([f"{exc[0]}: {exc[1]}"] + frames) + "\n"


def generate_case(name: str, depth: int, seed: int, *, informative: float = 0.75, guard: bool = False,
                  fragment: bool = False, menu: bool = True, abbreviation: bool = False,
                  decoys: bool = True, other_crash: bool = True, crash_style: str = "app",
                  related: float = 0.5,
                  unreachable: bool = False) -> CorpusCase:
    """Build one synthetic app whose target crash needs ``depth`` actions.

    ``crash_style`` is ``"app"`` (API and page frames), ``"util"`` (app
    frames but no page frame) or ``"framework"`` (no app frames at all).
    With ``unreachable`` the crash is guarded by an event on a page that
    cannot be reached, so the case is flagged not reproducible.
    """
    rng = random.Random(seed)
    app_word = rng.choice(["notes", "reader", "player", "mail", "tracker", "browser", "gallery", "wallet"])
    package = f"com.example.{app_word}{seed}"
    b = _Builder(rng, package)

    qualifier = rng.choice(QUALIFIERS)
    topic = rng.choice([t for t in TOPICS if t != "Settings"])
    crash_words = [qualifier, topic, "Settings"] if rng.random() < 0.5 else [qualifier, topic]
    if abbreviation:
        short, long_word, noun = rng.choice(ABBREVIATIONS)
        label, method = f"{short} {noun.lower()}", rng.choice(VERBS) + long_word + noun
    else:
        obj = rng.choice(OBJECTS)
        label, method = f"{obj[0]} {obj[1].lower()}", rng.choice(VERBS) + obj[0] + obj[1] + "s"
    api_class = _camel(rng.choice(TOPICS), "Manager")
    exc = rng.choice(EXCEPTIONS)

    def width() -> int:
        return rng.choice([6, 6, 7, 7, 8, 8])

    def fresh_topic() -> str:
        return rng.choice([t for t in TOPICS if t not in used])

    main = b.page("MainActivity")
    remaining = depth - 1 - (1 if guard else 0)
    if remaining < 0:
        raise ValueError("depth too small for a guarded crash")
    used = {topic, qualifier}
    current = main
    while remaining > 0:
        if menu and remaining >= 2 and current["kind"] == "general" and rng.random() < 0.3:
            opener = b.widget(current, "More options", icon=True)
            menu_page = b.page(current["activity"], "menu")
            b.link(current, opener, Outcome("next_page", page=menu_page["page_id"]))
            b.pad(current, width())
            current = menu_page
            remaining -= 1
            continue
        last = remaining == 1
        if last:
            words = crash_words
        elif rng.random() < related:
            words = [rng.choice(crash_words[:2]), fresh_topic()]
        else:
            words = [fresh_topic()]
        used.update(words)
        if last and fragment:
            host = _camel(rng.choice(["Preferences", "Options", "Configuration"])) + "Activity"
            nxt = b.page(host, fragment=_camel(*words) + "Fragment")
        else:
            nxt = b.page(_camel(*words) + "Activity")
        shown = " ".join(words[-2:]).lower() if len(words) > 1 else words[0].lower()
        if rng.random() < informative:
            nav = b.widget(current, shown.capitalize(), group="list" if current["kind"] == "menu" else "")
        else:
            nav = b.widget(current, rng.choice(UNINFORMATIVE), icon=True)
        b.link(current, nav, Outcome("next_page", page=nxt["page_id"]))
        decoy = f"{rng.choice(crash_words[:2])} help" if decoys and rng.random() < 0.3 else ""
        b.pad(current, width(), decoy=decoy)
        current = nxt
        remaining -= 1

    crash_page = current
    page_class = crash_page["fragment"] or crash_page["activity"]
    if crash_style == "app":
        b.crashes["target"] = _crash_text(package, exc, api_class, method, page_class, "core")
        api = f"{package}.core.{api_class}.{method}"
    elif crash_style == "util":
        b.crashes["target"] = _util_crash_text(package, exc, api_class, method)
        api = f"{package}.util.{api_class}.{method}"
    elif crash_style == "framework":
        b.crashes["target"] = _framework_crash_text()
        api = "android.widget.ListView.layoutChildren"
    else:
        raise ValueError(f"unknown crash_style {crash_style!r}")
    trigger = b.widget(crash_page, label)
    guard_events: tuple = ()
    if guard:
        toggle = b.widget(crash_page, f"Enable {rng.choice(TOPICS).lower()}")
        guard_events = ((crash_page["page_id"], toggle, "tap"),)
    if unreachable:
        hidden = b.page("DebugActivity")
        flag = b.widget(hidden, "Force legacy mode")
        guard_events += ((hidden["page_id"], flag, "tap"),)
    if guard_events:
        b.link(crash_page, trigger, Outcome("noop"))
    b.link(crash_page, trigger, Outcome("crash", crash_id="target"), apis=[api], guard=guard_events)
    if other_crash and rng.random() < 0.5:
        other = b.widget(crash_page, rng.choice(["Report", "Clear data", "Reset"]))
        other_exc = EXCEPTIONS[(EXCEPTIONS.index(exc) + 1) % len(EXCEPTIONS)]
        b.crashes["other"] = _crash_text(package, other_exc, "CleanupTask", "wipeAll", page_class, "util")
        b.link(crash_page, other, Outcome("crash", crash_id="other"))
    b.pad(crash_page, width(), dead_ends=crash_page is main)
    for extra in ("IntroActivity", "AboutActivity", "LicensesActivity"):
        if len(b.activities) < 8 and extra not in b.activities:
            b.activities.append(extra)

    app = app_from_dict(app_to_dict(b.build()))  # round trip validates
    trace = b.crashes["target"].replace("{line}", "142")
    target = parse_trace_lenient(trace, AppMetadata(app.package_name, app.activity_names))[0]
    path = shortest_crash_path(app, target)
    if unreachable:
        if path is not None:
            raise RuntimeError(f"{name}: unreachable crash was reached")
        return CorpusCase(name, app, trace, False, None, "unreachable",
                          "crash guarded by an event on a page no interaction reaches")
    if path is None or len(path) != depth:
        raise RuntimeError(f"{name}: generated depth {None if path is None else len(path)} != {depth}")
    notes = [f"depth-{depth} crash"]
    if guard:
        notes.append("behind a toggle")
    if fragment:
        notes.append("in a fragment")
    if crash_style != "app":
        notes.append(f"{crash_style}-only stack frames")
    return CorpusCase(name, app, trace, True, depth, "generated" if crash_style == "app" else "degraded",
                      ", ".join(notes))


def focus_case() -> CorpusCase:
    """Hand-written browser fixture shaped like the search-engine settings crash."""
    package = "org.mozilla.focus"
    pages = [
        {"page_id": "main", "activity_name": "MainActivity", "kind": "general", "widgets": [
            {"widget_id": "url", "widget_class": "input", "text": "Search or enter address",
             "accepted_text": "mozilla.org"},
            {"widget_id": "erase", "widget_class": "icon_like", "nearby_text": "Erase history", "clickable": True},
            {"widget_id": "more", "widget_class": "icon_like", "nearby_text": "More options", "clickable": True},
            {"widget_id": "tips", "widget_class": "text_like", "text": "Tips", "clickable": True},
            {"widget_id": "logo", "widget_class": "icon_like", "nearby_text": "Focus logo"},
        ]},
        {"page_id": "menu", "activity_name": "MainActivity", "kind": "menu", "widgets": [
            {"widget_id": "whats_new", "widget_class": "text_like", "text": "What’s new", "clickable": True,
             "container_group": "list"},
            {"widget_id": "help", "widget_class": "text_like", "text": "Help", "clickable": True,
             "container_group": "list"},
            {"widget_id": "settings", "widget_class": "text_like", "text": "Settings", "clickable": True,
             "container_group": "list"},
        ]},
        {"page_id": "settings", "activity_name": "SettingActivity", "kind": "general", "widgets": [
            {"widget_id": "search", "widget_class": "text_like", "text": "Search", "clickable": True},
            {"widget_id": "privacy", "widget_class": "text_like", "text": "Privacy & Security", "clickable": True},
            {"widget_id": "advanced", "widget_class": "text_like", "text": "Advanced", "clickable": True},
            {"widget_id": "mozilla", "widget_class": "text_like", "text": "Mozilla", "clickable": True},
            {"widget_id": "language", "widget_class": "text_like", "text": "Language", "clickable": True},
        ]},
        {"page_id": "search", "activity_name": "SettingActivity", "kind": "general",
         "fragment_name": "InstalledSearchEnginesSettingsFragment", "widgets": [
            {"widget_id": "engine", "widget_class": "text_like", "text": "Search engine", "clickable": True},
            {"widget_id": "suggest", "widget_class": "text_like", "text": "Get search suggestions", "clickable": True},
            {"widget_id": "autocomplete", "widget_class": "text_like", "text": "URL autocomplete", "clickable": True},
            {"widget_id": "add", "widget_class": "text_like", "text": "Add another search engine", "clickable": True},
            {"widget_id": "restore", "widget_class": "text_like", "text": "Restore default engines", "clickable": True},
        ]},
        {"page_id": "privacy", "activity_name": "SettingActivity", "kind": "general", "widgets": [
            {"widget_id": "block_ads", "widget_class": "text_like", "text": "Block ad trackers", "clickable": True},
            {"widget_id": "stealth", "widget_class": "text_like", "text": "Stealth", "clickable": True},
            {"widget_id": "cookies", "widget_class": "text_like", "text": "Block cookies", "clickable": True},
            {"widget_id": "unlock", "widget_class": "text_like", "text": "Use fingerprint to unlock", "clickable": True},
            {"widget_id": "telemetry", "widget_class": "text_like", "text": "Send usage data", "clickable": True},
        ]},
        {"page_id": "tips", "activity_name": "InfoActivity", "kind": "general", "widgets": [
            {"widget_id": "learn", "widget_class": "text_like", "text": "Learn more", "clickable": True},
            {"widget_id": "next_tip", "widget_class": "text_like", "text": "Next tip", "clickable": True},
            {"widget_id": "share", "widget_class": "text_like", "text": "Share", "clickable": True},
            {"widget_id": "close", "widget_class": "icon_like", "nearby_text": "Close", "clickable": True},
            {"widget_id": "rate", "widget_class": "text_like", "text": "Rate Focus", "clickable": True},
        ]},
    ]
    crash = "\n".join([
        "java.lang.NullPointerException: Attempt to invoke virtual method 'int java.util.List.size()' on a null object reference",
        "\tat org.mozilla.focus.search.SearchEngineListPreference.refetchSearchEngines(SearchEngineListPreference.java:{line})",
        "\tat org.mozilla.focus.search.SearchEngineListPreference.onBindView(SearchEngineListPreference.java:48)",
        "\tat org.mozilla.focus.settings.InstalledSearchEnginesSettingsFragment.onPreferenceTreeClick(InstalledSearchEnginesSettingsFragment.java:93)",
        "\tat android.preference.PreferenceScreen.onItemClick(PreferenceScreen.java:253)",
        *FRAMEWORK_TAIL,
    ]) + "\n"
    data = {
        "schema_version": 1,
        "package_name": package,
        "activity_names": ["IntroActivity", "MainActivity", "SettingActivity", "InfoActivity",
                           "AboutActivity", "EditActivity", "SessionActivity", "TextActionActivity"],
        "entry_page": "main",
        "pages": pages,
        "transitions": [
            {"from_page": "main", "widget": "more", "action": "tap", "outcome": {"type": "next_page", "page": "menu"}},
            {"from_page": "main", "widget": "tips", "action": "tap", "outcome": {"type": "next_page", "page": "tips"}},
            {"from_page": "menu", "widget": "settings", "action": "tap",
             "outcome": {"type": "next_page", "page": "settings"}},
            {"from_page": "menu", "widget": "help", "action": "tap", "outcome": {"type": "out_of_app"}},
            {"from_page": "menu", "widget": "whats_new", "action": "tap", "outcome": {"type": "out_of_app"}},
            {"from_page": "settings", "widget": "search", "action": "tap",
             "outcome": {"type": "next_page", "page": "search"}},
            {"from_page": "settings", "widget": "privacy", "action": "tap",
             "outcome": {"type": "next_page", "page": "privacy"}},
            {"from_page": "search", "widget": "engine", "action": "tap",
             "invoked_apis": ["org.mozilla.focus.search.SearchEngineListPreference.refetchSearchEngines"],
             "outcome": {"type": "crash", "crash_id": "refetch"}},
            {"from_page": "tips", "widget": "learn", "action": "tap", "outcome": {"type": "out_of_app"}},
        ],
        "crashes": {"refetch": crash},
    }
    app = app_from_dict(data)
    trace = crash.replace("{line}", "72")
    return CorpusCase("focus_search_engines", app, trace, True, 4, "handwritten",
                      "browser settings: search engine list refetch crash inside a fragment")


# name, depth, seed, generator options
CORPUS_PLAN = [
    ("d1_export_button", 1, 11, {}),
    ("d1_abbrev_label", 1, 12, {"abbreviation": True}),
    ("d1_with_decoys", 1, 13, {"informative": 0.5}),
    ("d2_settings_page", 2, 21, {}),
    ("d2_fragment", 2, 22, {"fragment": True}),
    ("d2_toggle_combo", 2, 23, {"guard": True}),
    ("d3_menu_route", 3, 31, {}),
    ("d3_vague_labels", 3, 32, {"informative": 0.3}),
    ("d3_toggle_combo", 3, 33, {"guard": True}),
    ("d4_mixed", 4, 41, {}),
    ("d4_fragment", 4, 42, {"fragment": True, "informative": 0.6}),
    ("d4_abbrev", 4, 43, {"abbreviation": True}),
    ("d5_chain_informative", 5, 51, {"informative": 1.0, "related": 1.0, "menu": False, "decoys": False, "other_crash": False}),
    ("d5_toggle_combo", 5, 52, {"guard": True}),
    ("d5_vague_labels", 5, 53, {"informative": 0.5}),
    ("d6_deep_settings", 6, 61, {}),
    ("d6_fragment", 6, 62, {"fragment": True}),
    ("d7_long_route", 7, 71, {}),
    ("d7_toggle_combo", 7, 72, {"guard": True, "informative": 0.8}),
    ("d8_longest", 8, 81, {}),
    ("d8_fragment", 8, 82, {"fragment": True, "informative": 0.8}),
    ("degraded_no_crash_page", 2, 91, {"crash_style": "util"}),
    ("degraded_no_app_frames", 2, 92, {"crash_style": "framework", "other_crash": False}),
    ("unreachable_precondition", 3, 93, {"unreachable": True}),
]


def default_cases() -> list[CorpusCase]:
    cases = [focus_case()]
    for name, depth, seed, options in CORPUS_PLAN:
        cases.append(generate_case(name, depth, seed, **options))
    return cases


def write_default_corpus(root=DEFAULT_CORPUS) -> list[Path]:
    return [write_case(case, root) for case in default_cases()]


if __name__ == "__main__":
    for path in write_default_corpus():
        print(path)
