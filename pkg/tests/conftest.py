import pytest

from crashrepro.corpus import DEFAULT_CORPUS, load_case
from crashrepro.simulator import app_from_dict
from crashrepro.trace import AppMetadata

PKG = "com.example.notes"

CRASH = "\n".join([
    "java.lang.IllegalStateException: export failed for note 7",
    "\tat com.example.notes.io.NoteExporter.exportNotes(NoteExporter.java:{line})",
    "\tat com.example.notes.ExportActivity.onClick(ExportActivity.java:40)",
    "\tat android.view.View.performClick(View.java:6597)",
]) + "\n"

OTHER = "\n".join([
    "java.lang.NullPointerException",
    "\tat com.example.notes.ui.HelpActivity.onCreate(HelpActivity.java:{line})",
]) + "\n"


def tiny_dict():
    """main -> export (tap 'Export notes' crashes once 'Enable export' was toggled)."""
    return {
        "schema_version": 1,
        "package_name": PKG,
        "activity_names": ["MainActivity", "ExportActivity", "HelpActivity"],
        "entry_page": "main",
        "pages": [
            {"page_id": "main", "activity_name": "MainActivity", "widgets": [
                {"widget_id": "open_export", "text": "Export", "clickable": True},
                {"widget_id": "help", "text": "Help", "clickable": True},
                {"widget_id": "title", "text": "Notes"},
                {"widget_id": "search", "widget_class": "input", "resource_id": "search_box",
                 "accepted_text": "groceries"},
            ]},
            {"page_id": "export", "activity_name": "ExportActivity", "rotatable": True, "widgets": [
                {"widget_id": "enable", "text": "Enable export", "clickable": True},
                {"widget_id": "run", "text": "Export notes", "clickable": True, "long_clickable": True},
                {"widget_id": "share", "widget_class": "icon_like", "nearby_text": "Share", "clickable": True},
            ]},
            {"page_id": "help", "activity_name": "HelpActivity", "kind": "dialog", "widgets": [
                {"widget_id": "ok", "text": "OK", "clickable": True},
                {"widget_id": "crash_me", "text": "Report", "clickable": True},
            ]},
        ],
        "transitions": [
            {"from_page": "main", "widget": "open_export", "action": "tap",
             "outcome": {"type": "next_page", "page": "export"}},
            {"from_page": "main", "widget": "help", "action": "tap",
             "outcome": {"type": "next_page", "page": "help"}},
            {"from_page": "export", "widget": "run", "action": "tap", "outcome": {"type": "noop"},
             "invoked_apis": ["com.example.notes.io.NoteExporter.prepare"]},
            {"from_page": "export", "widget": "run", "action": "tap",
             "guard": [["export", "enable", "tap"]],
             "invoked_apis": ["com.example.notes.io.NoteExporter.exportNotes"],
             "outcome": {"type": "crash", "crash_id": "export"}},
            {"from_page": "export", "widget": "share", "action": "tap", "outcome": {"type": "out_of_app"}},
            {"from_page": "help", "widget": "ok", "action": "tap", "outcome": {"type": "next_page", "page": "main"}},
            {"from_page": "help", "widget": "crash_me", "action": "tap", "outcome": {"type": "crash", "crash_id": "help"}},
        ],
        "crashes": {"export": CRASH, "help": OTHER},
    }


@pytest.fixture
def tiny_app():
    return app_from_dict(tiny_dict())


@pytest.fixture
def tiny_meta():
    return AppMetadata(PKG, ("MainActivity", "ExportActivity", "HelpActivity"))


@pytest.fixture
def tiny_trace():
    return CRASH.replace("{line}", "88")


@pytest.fixture(scope="session")
def focus():
    return load_case(DEFAULT_CORPUS / "focus_search_engines")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
