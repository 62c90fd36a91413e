"""Contiguous n-gram counting over cleaned messages."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_texts

STOPWORDS = frozenset("""
a about above after again against all also am an and any are as at be because been
before being below between both but by can cannot could did do does doing down during
each else ever few for from further get gets got had has have having he her here hers
herself him himself his how however if in into is it its itself just let like made make
many may me might more most much must my myself no nor not now of off on once one only
or other ought our ours ourselves out over own per rt same shall she should since so
some such than that the their theirs them themselves then there these they this those
though through thus to too under until up upon us very via was we were what when where
whether which while who whom whose why will with within without would yet you your
yours yourself yourselves amp im ive dont cant wont didnt doesnt isnt arent wasnt
werent hasnt havent hadnt us also even still well back via across around along among
""".split())


def tokenize(clean: str, stopwords: Iterable[str] | None = None) -> list[str]:
    """Split cleaned text on whitespace, optionally dropping stopwords.

    >>> tokenize("the gun control act", STOPWORDS)
    ['gun', 'control', 'act']
    """
    tokens = clean.split()
    if stopwords is None:
        return tokens
    stop = stopwords if isinstance(stopwords, (set, frozenset)) else set(stopwords)
    return [t for t in tokens if t not in stop]


@dataclass
class NgramTable:
    n: int
    counts: Counter = field(default_factory=Counter)

    def __post_init__(self):
        _check_n(self.n)

    def merge(self, other: "NgramTable") -> "NgramTable":
        if other.n != self.n:
            raise ValueError(f"cannot merge {other.n}-grams into {self.n}-grams")
        return NgramTable(self.n, self.counts + other.counts)

    def total(self) -> int:
        return sum(self.counts.values())


def _check_n(n: int) -> None:
    if not (isinstance(n, int) and 1 <= n <= 4):
        raise ValueError(f"n must be an integer in [1, 4], got {n!r}")


def extract_ngrams(tokens: Sequence[str], n: int) -> NgramTable:
    """Count width-``n`` windows of one message's tokens."""
    _check_n(n)
    counts = Counter(" ".join(tokens[i:i + n]) for i in range(len(tokens) - n + 1))
    return NgramTable(n, counts)


def top_k(table: NgramTable, k: int) -> list[tuple[str, int]]:
    """Most frequent phrases; ties broken by phrase, ascending."""
    if k < 0:
        raise ValueError("k must be non-negative")
    ranked = sorted(table.counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:k]


class NgramCounter(BaseEstimator):
    """Corpus-level n-gram frequencies.

    Windows never span messages; the corpus table is the pointwise sum of
    the per-message tables.

    Parameters
    ----------
    n : int, default=1
    stopwords : bool, default=True
        Drop :data:`STOPWORDS` before windowing.
    """

    def __init__(self, n=1, stopwords=True):
        self.n = n
        self.stopwords = stopwords

    def fit(self, X, y=None):
        _check_n(self.n)
        stop = STOPWORDS if self.stopwords else None
        table = NgramTable(self.n)
        for text in check_texts(X):
            table.counts.update(extract_ngrams(tokenize(text, stop), self.n).counts)
        self.table_ = table
        return self

    def top_k(self, k: int) -> list[tuple[str, int]]:
        check_is_fitted(self, "table_")
        return top_k(self.table_, k)
