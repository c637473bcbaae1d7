# %% [markdown]
# # Reading a stack trace
# A crash report is just text. The parser pulls out the exception, the frames
# that belong to the app's own package, the API names those frames call, and
# the page (activity or fragment) that was on screen.

# %%
from crashrepro.corpus import DEFAULT_CORPUS, load_case
from crashrepro.tokens import tokenize
from crashrepro.trace import AppMetadata, NoCrashPage, parse_trace, parse_trace_lenient

case = load_case(DEFAULT_CORPUS / "focus_search_engines")
print(case.trace_text)

# %%
meta = AppMetadata(case.app.package_name, case.app.activity_names)
sig = parse_trace(case.trace_text, meta)
sig.exception_type
# %%
sig.api_names    # only frames inside org.mozilla.focus
# %%
sig.crash_apis   # method names split into words
# %%
sig.crash_page, sig.crash_page_kind  # no activity frame, so the fragment names the page

# %% [markdown]
# ## Tokens
# Names are split on camel case and underscores, lowercased, and generic
# words like "activity" or "fragment" are dropped.

# %%
for name in ["refetchSearchEngines", "InstalledSearchEnginesSettingsFragment", "main_menu", "HTMLPage"]:
    print(f"{name:40} {tokenize(name)}")

# %% [markdown]
# ## When guidance is missing
# A trace with no page information still yields a signature. The strict parser
# raises with the partial result attached; the lenient one returns warnings.

# %%
degraded = load_case(DEFAULT_CORPUS / "degraded_no_crash_page")
try:
    parse_trace(degraded.trace_text, degraded.meta)
except NoCrashPage as exc:
    print("strict:", exc)
sig, warnings = parse_trace_lenient(degraded.trace_text, degraded.meta)
print("lenient:", sig.api_names, warnings)
