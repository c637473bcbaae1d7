# %% [markdown]
# # Benchmarking the bundled corpus
# Runs every engine on every fixture for five seeds and summarizes action
# counts. The same thing is available as `crashrepro bench`.

# %%
import statistics
import tempfile

from crashrepro.corpus import load_corpus, mean_interactables
from crashrepro.runner import format_summary, run_bench

corpus = load_corpus()
print(len(corpus), "fixtures")
print("depths:", sorted(c.depth for c in corpus if c.reproducible))
print("mean interactables per page: %.2f" % statistics.mean(mean_interactables(c.app) for c in corpus))

# %%
out = tempfile.mkdtemp(prefix="crashrepro-bench-")
summary = run_bench(corpus[0].path.parent, range(5), ["guided", "random", "no_page_reach", "no_widget_hit"],
                    out, parallel=4)
print(format_summary(summary).split("\n\n")[-1])

# %% [markdown]
# Deeper fixtures are where guidance pays off.

# %%
by_depth: dict = {}
for row in summary["rows"]:
    if row["reproducible"]:
        by_depth.setdefault((row["depth"], row["engine"]), []).append(row["mean_actions"])
for depth in range(1, 9):
    cells = [f"{e}={statistics.mean(by_depth[depth, e]):6.1f}" for e in ("guided", "random") if (depth, e) in by_depth]
    print(depth, "  ".join(cells))
print("per-run files under", out)
