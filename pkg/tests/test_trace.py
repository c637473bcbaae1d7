import pytest
from hypothesis import given, strategies as st

from crashrepro.trace import (
    AppMetadata, MalformedTrace, NoAppFrames, NoCrashPage, find_crash_page, parse_trace,
    parse_trace_lenient, signature_matches,
)

FOCUS = AppMetadata("org.mozilla.focus", ("MainActivity", "SettingActivity"))

FOCUS_TRACE = """\
java.lang.NullPointerException: Attempt to invoke virtual method 'int java.util.List.size()' on a null object reference
\tat org.mozilla.focus.search.SearchEngineListPreference.refetchSearchEngines(SearchEngineListPreference.java:72)
\tat org.mozilla.focus.search.SearchEngineListPreference.onBindView(SearchEngineListPreference.java:48)
\tat org.mozilla.focus.settings.InstalledSearchEnginesSettingsFragment.onPreferenceTreeClick(InstalledSearchEnginesSettingsFragment.java:93)
\tat android.preference.PreferenceScreen.onItemClick(PreferenceScreen.java:253)
\tat android.os.Looper.loop(Looper.java:164)
"""


def test_focus_trace():
    sig = parse_trace(FOCUS_TRACE, FOCUS)
    assert sig.exception_type == "java.lang.NullPointerException"
    assert sig.message.startswith("Attempt to invoke")
    assert ["refetch", "search", "engines"] in [list(a) for a in sig.crash_apis]
    assert sig.api_names[0] == "SearchEngineListPreference.refetchSearchEngines"
    assert list(sig.crash_page) == ["installed", "search", "engines", "settings"]
    assert sig.crash_page_kind == "fragment"
    assert len(sig.app_frames) == 3
    assert len(sig.frames) == 5


def test_app_frames_keep_stack_order():
    sig = parse_trace(FOCUS_TRACE, FOCUS)
    assert [f.method_name for f in sig.app_frames] == ["refetchSearchEngines", "onBindView", "onPreferenceTreeClick"]


def test_activity_match_wins_over_fragment():
    raw = FOCUS_TRACE.replace(
        "\tat android.preference",
        "\tat org.mozilla.focus.activity.SettingActivity.onResume(SettingActivity.java:10)\n\tat android.preference",
    )
    sig = parse_trace(raw, FOCUS)
    assert list(sig.crash_page) == ["setting"]
    assert sig.crash_page_kind == "activity"


def test_activity_match_is_case_insensitive():
    meta = AppMetadata("com.x", ("mainactivity",))
    sig = parse_trace("java.lang.RuntimeException: boom\n\tat com.x.MainActivity.go(M.java:1)\n", meta)
    page, kind = find_crash_page(sig.app_frames, sig.frames, meta.activity_names)
    assert (list(page), kind) == (["main"], "activity")


def test_package_prefix_is_dotted():
    meta = AppMetadata("com.example", ("MainActivity",))
    raw = "java.lang.RuntimeException: x\n\tat com.examplex.Foo.bar(Foo.java:1)\n\tat com.example.MainActivity.go(M.java:2)\n"
    sig = parse_trace(raw, meta)
    assert [f.class_path for f in sig.app_frames] == ["com.example.MainActivity"]


def test_innermost_caused_by_section():
    raw = (
        "java.lang.RuntimeException: Unable to start activity\n"
        "\tat android.app.ActivityThread.performLaunchActivity(ActivityThread.java:2416)\n"
        "Caused by: java.lang.IllegalArgumentException: bad id\n"
        "\tat com.example.data.Store.load(Store.java:12)\n"
        "\tat com.example.MainActivity.onCreate(MainActivity.java:30)\n"
        "\t... 9 more\n"
    )
    sig = parse_trace(raw, AppMetadata("com.example", ("MainActivity",)))
    assert sig.exception_type == "java.lang.IllegalArgumentException"
    assert sig.api_names == ("Store.load", "MainActivity.onCreate")


def test_no_app_frames():
    raw = "java.lang.NullPointerException\n\tat android.view.View.performClick(View.java:1)\n"
    with pytest.raises(NoAppFrames) as info:
        parse_trace(raw, AppMetadata("com.example", ("MainActivity",)))
    assert info.value.signature.app_frames == ()
    sig, warnings = parse_trace_lenient(raw, AppMetadata("com.example", ("MainActivity",)))
    assert sig.exception_type == "java.lang.NullPointerException"
    assert warnings


def test_no_crash_page():
    raw = "java.lang.ArithmeticException: divide by zero\n\tat com.example.util.MathUtil.ratio(MathUtil.java:5)\n"
    with pytest.raises(NoCrashPage) as info:
        parse_trace(raw, AppMetadata("com.example", ("MainActivity",)))
    assert info.value.signature.crash_apis == (("ratio",),)
    assert info.value.signature.crash_page == ()


@pytest.mark.parametrize("raw", ["", "hello world", "\tat com.example.A.b(A.java:1)\n", "java.lang.Oops\n"])
def test_malformed(raw):
    with pytest.raises(MalformedTrace):
        parse_trace(raw, AppMetadata("com.example", ("MainActivity",)))


def test_metadata_validation():
    with pytest.raises(ValueError):
        AppMetadata("", ("MainActivity",))


def test_signature_matching():
    a = parse_trace(FOCUS_TRACE, FOCUS)
    assert signature_matches(a, a)
    other_type = parse_trace(FOCUS_TRACE.replace("NullPointerException", "IllegalStateException", 1), FOCUS)
    assert not signature_matches(other_type, a)
    assert not signature_matches(a, other_type)
    # message and line numbers are ignored; outer frames are too
    varied = FOCUS_TRACE.replace(":72)", ":99)").replace("null object reference", "something else")
    varied = varied.replace("onBindView", "onCreateView")
    assert signature_matches(parse_trace(varied, FOCUS), a)
    moved = FOCUS_TRACE.replace("refetchSearchEngines(", "reloadSearchEngines(")
    assert not signature_matches(parse_trace(moved, FOCUS), a)


_ident = st.from_regex(r"[a-z][a-z0-9]{0,6}", fullmatch=True)
_cls = st.from_regex(r"[A-Z][A-Za-z0-9]{0,8}", fullmatch=True)


@given(st.lists(st.tuples(st.sampled_from(["com.example", "com.examplex", "android.view", "java.util"]),
                          _ident, _cls, _ident), min_size=1, max_size=8))
def test_app_frames_always_inside_package(frames):
    meta = AppMetadata("com.example", ("MainActivity",))
    lines = ["java.lang.RuntimeException: fuzz"]
    lines += [f"\tat {pkg}.{sub}.{cls}.{m}({cls}.java:1)" for pkg, sub, cls, m in frames]
    sig, _ = parse_trace_lenient("\n".join(lines) + "\n", meta)
    for f in sig.app_frames:
        assert f.class_path.startswith("com.example.")
    expected = [(f"{p}.{s}.{c}", m) for p, s, c, m in frames if p == "com.example"]
    assert [(f.class_path, f.method_name) for f in sig.app_frames] == expected
    assert signature_matches(sig, sig)
