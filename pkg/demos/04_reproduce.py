# %% [markdown]
# # Reproducing a crash
# The explorer sums three scores per widget (page reaching, widget hitting and
# a learned Q-value), picks one epsilon-greedily, and keeps going until the
# target crash fires. The recorded steps are then shortened and rendered.

# %%
from crashrepro.corpus import DEFAULT_CORPUS, load_case
from crashrepro.explorer import reproduce
from crashrepro.replayer import ReproductionTrace, emit_script, emit_steps, minimize, run_script

case = load_case(DEFAULT_CORPUS / "focus_search_engines")
target = case.target()[0]
result = reproduce(case.app, target, seed=0)
result.success, result.actions, result.restarts

# %%
for row in result.action_log[:12]:
    print(row)

# %% [markdown]
# The raw trace is every interaction since the last launch. Loops that come
# back to a state already seen are cut, and each cut is checked by replay.

# %%
trace = minimize(ReproductionTrace(tuple(result.raw_steps), target), case.app)
len(result.raw_steps), len(trace.minimized_steps)

# %%
print(emit_steps(trace, case.app))
# %%
script = emit_script(trace, case.app)
print(script)
run_script(script, case.app).message

# %% [markdown]
# ## Baseline and ablations
# The same loop with uniform random choice, or with one scorer switched off.

# %%
for label, kwargs in [("guided", {}), ("random", {"baseline": "random"}),
                      ("no_page_reach", {"ablation": "no_page_reach"}),
                      ("no_widget_hit", {"ablation": "no_widget_hit"})]:
    counts = [reproduce(case.app, target, seed=s, **kwargs).actions for s in range(5)]
    print(f"{label:14} {counts}")
