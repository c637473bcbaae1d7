"""Identifier tokenization and stemmed comparison helpers."""

from __future__ import annotations

import re
from functools import lru_cache

from nltk.stem import PorterStemmer

# GUI boilerplate plus a short list of English function words. Kept small on
# purpose: page and widget names are short and every content word matters.
STOP_WORDS = frozenset(
    {
        "activity", "fragment", "app", "android", "view", "layout",
        "the", "a", "an", "of", "in", "to", "and", "or", "for", "on",
        "at", "by", "with", "from", "is", "be", "my", "your", "this",
    }
)

_APOSTROPHES = re.compile(r"['’`]")
_CHUNK = re.compile(r"[A-Za-z0-9]+")
# Acronym followed by a capitalised word, capitalised/lower words, bare
# acronyms, digit runs.
_WORD = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+")

_stemmer = PorterStemmer()


def tokenize(name: str) -> list[str]:
    """Split an identifier or label into lowercase content-word tokens.

    Splits on underscores and any other non-alphanumeric separator, on
    camel-case boundaries (``HTMLPage`` -> ``html page``) and between
    letters and digits, then drops stop words.
    """
    tokens = []
    for chunk in _CHUNK.findall(_APOSTROPHES.sub("", name)):
        for word in _WORD.findall(chunk):
            word = word.lower()
            if word not in STOP_WORDS:
                tokens.append(word)
    return tokens


@lru_cache(maxsize=8192)
def stem(token: str) -> str:
    return _stemmer.stem(token)


def stems(tokens) -> frozenset[str]:
    return frozenset(stem(t) for t in tokens)


def stem_overlap(a, b) -> int:
    """Number of distinct stems shared by two token sequences."""
    return len(stems(a) & stems(b))
