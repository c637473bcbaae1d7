# %% [markdown]
# # Driving the app simulator
# Fixtures describe pages, widgets and what each interaction does. A session
# is one launch of the app; it is deterministic for a given seed.

# %%
from crashrepro.corpus import DEFAULT_CORPUS, load_case
from crashrepro.simulator import BACK_WIDGET, restart, start_session, widget_display_name

case = load_case(DEFAULT_CORPUS / "focus_search_engines")
session = start_session(case.app, seed=0)
page, widgets = session.observe()
print(page.page_id, page.kind)
print([widget_display_name(w) for w in widgets])  # the "back" widget is always there

# %%
session.perform("more", "tap")
page, widgets = session.observe()
print(page.kind, [(widget_display_name(w), w.container_group) for w in widgets])

# %% [markdown]
# Walk to the crash. The crash event carries a freshly rendered trace whose
# line number varies with the seed and launch.

# %%
for widget in ["settings", "search", "engine"]:
    event = session.perform(widget, "tap")
    print(widget, event.kind, event.new_page or "")
print(event.raw_trace.splitlines()[1])
session.alive

# %% [markdown]
# ## Guards
# Some crashes need an earlier interaction in the same launch. Restarting the
# app forgets it.

# %%
toggle = load_case(DEFAULT_CORPUS / "d2_toggle_combo")
guarded = [t for t in toggle.app.transitions if t.guard]
for t in guarded:
    print(f"{t.from_page}/{t.widget} {t.action} needs {sorted(t.guard)} -> {t.outcome.type}")

# %%
s = start_session(toggle.app)
s = restart(s)
s.current_page, s.history, BACK_WIDGET
