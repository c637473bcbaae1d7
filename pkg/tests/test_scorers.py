from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crashrepro.scorers import combine, is_abbreviation, page_reach_scores, rank_score, widget_hit_score
from crashrepro.tokens import stem

API = [["refetch", "search", "engines"], ["bind"]]


def test_rank_scores():
    ids = ["a", "b", "c", "d", "e"]
    scores = page_reach_scores(ids, ids)
    assert [scores[i] for i in ids] == [Fraction(1, n) for n in range(3, 8)]


def test_empty_and_partial_rankings():
    assert set(page_reach_scores([], ["a", "b"]).values()) == {0}
    scores = page_reach_scores(["c", "a"], list("abcdef"))
    assert scores["c"] == Fraction(1, 3) and scores["a"] == Fraction(1, 4)
    assert sum(1 for v in scores.values() if v == 0) == 4


def test_unknown_ranked_ids_ignored():
    assert page_reach_scores(["zzz", "a"], ["a"]) == {"a": Fraction(1, 4)}


@pytest.mark.parametrize("widget,apis,expected", [
    (["search", "engine"], API, Fraction(1)),
    (["help"], API, Fraction(0)),
    (["msg", "list"], [["show", "message", "list"]], Fraction(1)),
    (["search", "settings"], API, Fraction(1, 2)),
    ([], API, Fraction(0)),
    (["search"], [], Fraction(0)),
])
def test_widget_hit(widget, apis, expected):
    assert widget_hit_score(widget, apis) == expected


def test_best_api_wins():
    assert widget_hit_score(["bind", "view"], [["bind"], ["bind", "view"]]) == 1


@pytest.mark.parametrize("a,b,expected", [
    ("msg", "message", True), ("pwd", "password", True), ("img", "image", True),
    ("m", "message", False), ("sgm", "message", False), ("gsm", "message", False),
])
def test_abbreviation(a, b, expected):
    assert is_abbreviation(a, b) is expected
    assert is_abbreviation(b, a) is expected


def test_combine():
    s = combine("w", Fraction(1, 3), Fraction(1), Fraction(1, 2))
    assert s.total == Fraction(11, 6)
    assert combine("w", 0, 0, 0).total == 0
    assert combine("w", Fraction(1, 3), Fraction(1), Fraction(1, 2), ablation="no_page_reach").total == Fraction(3, 2)
    assert combine("w", Fraction(1, 3), Fraction(1), Fraction(1, 2), ablation="no_widget_hit").total == Fraction(5, 6)
    with pytest.raises(ValueError):
        combine("w", 0, 0, 0, ablation="nope")


def test_combine_with_float_q():
    s = combine("w", Fraction(1, 3), Fraction(0), 0.25)
    assert abs(s.total - (1 / 3 + 0.25)) < 1e-12


_tok = st.sampled_from(["search", "engine", "engines", "msg", "message", "list", "help", "set", "settings", "refetch"])


@given(st.lists(_tok, max_size=5), st.lists(st.lists(_tok, max_size=5), max_size=3))
def test_hit_is_scale_free(widget, apis):
    doubled = widget_hit_score(widget + widget, [a + a for a in apis])
    assert doubled == widget_hit_score(widget, apis)
    assert 0 <= doubled <= 1


@given(st.integers(1, 50))
def test_rank_score_decreasing(r):
    assert rank_score(r) > rank_score(r + 1) > 0


@given(st.lists(st.tuples(st.fractions(0, 1), st.fractions(0, 1), st.fractions(-10, 10)), min_size=1, max_size=6),
       st.fractions(-5, 5))
def test_constant_q_shift_keeps_argmax(rows, shift):
    base = [combine(str(i), p, h, q).total for i, (p, h, q) in enumerate(rows)]
    moved = [combine(str(i), p, h, q + shift).total for i, (p, h, q) in enumerate(rows)]
    assert base.index(max(base)) == moved.index(max(moved))


def test_stem_used_for_matching():
    assert stem("engines") == stem("engine")
