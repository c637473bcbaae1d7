"""Per-widget priority components and their sum."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .tokens import stem

ABLATIONS = ("none", "no_page_reach", "no_widget_hit")


@dataclass(frozen=True)
class ScoredWidget:
    widget_id: str
    page_reach_score: Fraction
    widget_hit_score: Fraction
    q_score: float
    total: float
    action: str = "tap"

    @property
    def action_id(self) -> str:
        return f"{self.widget_id}:{self.action}"


def rank_score(rank: int) -> Fraction:
    """Score for a 1-based rank in the predicted widget list."""
    return Fraction(1, rank + 2)


def page_reach_scores(ranked, interactables) -> dict[str, Fraction]:
    """``ranked`` holds widget ids in predicted order; ``interactables`` all ids
    on the page. Unranked widgets score zero."""
    scores = {w: Fraction(0) for w in interactables}
    for rank, widget_id in enumerate(ranked, start=1):
        if widget_id in scores and scores[widget_id] == 0:
            scores[widget_id] = rank_score(rank)
    return scores


def is_abbreviation(a: str, b: str) -> bool:
    """True if the shorter token abbreviates the longer: same first letter and
    an in-order subsequence of it (``msg`` / ``message``)."""
    short, long_ = sorted((a, b), key=len)
    if len(short) < 2 or short[0] != long_[0]:
        return False
    it = iter(long_)
    return all(ch in it for ch in short)


def tokens_match(a: str, b: str) -> bool:
    return a == b or stem(a) == stem(b) or is_abbreviation(a, b)


def widget_hit_score(widget_tokens, crash_apis) -> Fraction:
    """Largest fraction of the widget's distinct tokens matched by any one
    crash-involved API."""
    unique = list(dict.fromkeys(widget_tokens))
    if not unique:
        return Fraction(0)
    best = Fraction(0)
    for api in crash_apis:
        api_tokens = set(api)
        matched = sum(1 for w in unique if any(tokens_match(w, a) for a in api_tokens))
        best = max(best, Fraction(matched, len(unique)))
    return best


def combine(widget_id, page_reach, widget_hit, q_value, ablation: str = "none", action: str = "tap") -> ScoredWidget:
    if ablation not in ABLATIONS:
        raise ValueError(f"unknown ablation {ablation!r}")
    if ablation == "no_page_reach":
        page_reach = Fraction(0)
    elif ablation == "no_widget_hit":
        widget_hit = Fraction(0)
    # rational components first so the sum is exact when q is rational too
    total = Fraction(page_reach) + Fraction(widget_hit) + q_value
    return ScoredWidget(widget_id, Fraction(page_reach), Fraction(widget_hit), q_value, total, action)
