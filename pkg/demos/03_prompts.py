# %% [markdown]
# # Asking for the next page
# The page-reaching scorer phrases the navigation problem as two questions:
# which page comes next, and which widget gets there. The offline predictor
# answers them by word overlap; a remote text-completion service can be
# plugged in instead.

# %%
from crashrepro.corpus import DEFAULT_CORPUS, load_case
from crashrepro.predictor import OfflinePredictor, build_context, render_prompt_p1, render_prompt_p2
from crashrepro.scorers import page_reach_scores, widget_hit_score
from crashrepro.simulator import start_session, widget_display_name
from crashrepro.tokens import tokenize

case = load_case(DEFAULT_CORPUS / "focus_search_engines")
target = case.target()[0]
session = start_session(case.app)
session.perform("more", "tap")
page, widgets = session.observe()
names = [widget_display_name(w) for w in widgets]
ctx = build_context(case.app.activity_names, page, names, [w.container_group for w in widgets], target.crash_page)

# %%
print(render_prompt_p1(ctx))
# %%
print(render_prompt_p2(ctx, "setting"))

# %%
predictor = OfflinePredictor()
nxt = predictor.predict_next_page(ctx).next_page
ranked = predictor.predict_widgets(ctx, nxt).ranked
nxt, ranked

# %% [markdown]
# Ranked widgets score 1/(rank+2); the rest score zero.

# %%
ids = {n.lower(): w.widget_id for n, w in zip(names, widgets)}
page_reach_scores([ids[n] for n in ranked], [w.widget_id for w in widgets])

# %% [markdown]
# ## Widget hitting
# Independently, each widget is compared with the crash-involved APIs. On the
# search settings page "Search engine" explains itself completely.

# %%
for label in ["Search engine", "Get search suggestions", "Restore default engines", "URL autocomplete"]:
    print(f"{label:28} {float(widget_hit_score(tokenize(label), target.crash_apis)):.2f}")
