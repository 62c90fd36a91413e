"""Tweet text normalization.

Rules are applied in a fixed order: lowercase, expand contractions,
remove URLs, delete every character outside ``[a-z0-9 ]``, drop
single-character tokens, collapse whitespace. Contraction expansion
must run before character deletion or the apostrophes are gone by the
time the table is consulted.
"""
from __future__ import annotations

import csv
import re
from pathlib import Path
from typing import Mapping

from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import check_texts
from .exceptions import InputError

DEFAULT_CONTRACTIONS: dict[str, str] = {
    "ain't": "is not", "aren't": "are not", "can't": "cannot", "can't've": "cannot have",
    "'cause": "because", "could've": "could have", "couldn't": "could not",
    "couldn't've": "could not have", "didn't": "did not", "doesn't": "does not",
    "don't": "do not", "hadn't": "had not", "hadn't've": "had not have", "hasn't": "has not",
    "haven't": "have not", "he'd": "he would", "he'd've": "he would have", "he'll": "he will",
    "he'll've": "he will have", "he's": "he is", "how'd": "how did", "how'd'y": "how do you",
    "how'll": "how will", "how's": "how is", "i'd": "i would", "i'd've": "i would have",
    "i'll": "i will", "i'll've": "i will have", "i'm": "i am", "i've": "i have",
    "isn't": "is not", "it'd": "it would", "it'd've": "it would have", "it'll": "it will",
    "it'll've": "it will have", "it's": "it is", "let's": "let us", "ma'am": "madam",
    "mayn't": "may not", "might've": "might have", "mightn't": "might not",
    "mightn't've": "might not have", "must've": "must have", "mustn't": "must not",
    "mustn't've": "must not have", "needn't": "need not", "needn't've": "need not have",
    "o'clock": "of the clock", "oughtn't": "ought not", "oughtn't've": "ought not have",
    "shan't": "shall not", "sha'n't": "shall not", "shan't've": "shall not have",
    "she'd": "she would", "she'd've": "she would have", "she'll": "she will",
    "she'll've": "she will have", "she's": "she is", "should've": "should have",
    "shouldn't": "should not", "shouldn't've": "should not have", "so've": "so have",
    "so's": "so is", "that'd": "that would", "that'd've": "that would have",
    "that's": "that is", "there'd": "there would", "there'd've": "there would have",
    "there's": "there is", "there're": "there are", "they'd": "they would",
    "they'd've": "they would have", "they'll": "they will", "they'll've": "they will have",
    "they're": "they are", "they've": "they have", "to've": "to have", "wasn't": "was not",
    "we'd": "we would", "we'd've": "we would have", "we'll": "we will",
    "we'll've": "we will have", "we're": "we are", "we've": "we have", "weren't": "were not",
    "what'll": "what will", "what'll've": "what will have", "what're": "what are",
    "what's": "what is", "what've": "what have", "when's": "when is", "when've": "when have",
    "where'd": "where did", "where's": "where is", "where've": "where have",
    "who'll": "who will", "who'll've": "who will have", "who's": "who is",
    "who've": "who have", "why's": "why is", "why've": "why have", "will've": "will have",
    "won't": "will not", "won't've": "will not have", "would've": "would have",
    "wouldn't": "would not", "wouldn't've": "would not have", "y'all": "you all",
    "y'all'd": "you all would", "y'all'd've": "you all would have", "y'all're": "you all are",
    "y'all've": "you all have", "you'd": "you would", "you'd've": "you would have",
    "you'll": "you will", "you'll've": "you will have", "you're": "you are",
    "you've": "you have", "gov't": "government", "here's": "here is", "daren't": "dare not",
}

_APOSTROPHES = str.maketrans({"’": "'", "‘": "'", "ʼ": "'"})
_URL = re.compile(r"(?<![a-z0-9])(?:https?:|www\.|t\.co/)\S*")
_MENTION = re.compile(r"(?<![a-z0-9_])@\w+")
_NON_ALNUM = re.compile(r"[^a-z0-9 ]")


def validate_contractions(table: Mapping[str, str]) -> None:
    for key, value in table.items():
        if key != key.lower():
            raise InputError(f"contraction {key!r} is not lowercase")
        if "'" in value:
            raise InputError(f"expansion of {key!r} contains an apostrophe")


def load_contractions(path) -> dict[str, str]:
    """Read a ``contraction,expansion`` file into a table."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"file not found: {path}")
    with open(path, encoding="utf-8-sig", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != ["contraction", "expansion"]:
        raise InputError(f"{path}: expected header contraction,expansion")
    table = {}
    for row_no, row in enumerate(rows[1:], start=1):
        if not row:
            continue
        if len(row) != 2:
            raise InputError(f"{path}: expected 2 columns at row {row_no}")
        table[row[0].strip().translate(_APOSTROPHES)] = row[1].strip()
    validate_contractions(table)
    return table


def _contraction_pattern(table: Mapping[str, str]) -> re.Pattern | None:
    if not table:
        return None
    keys = sorted(table, key=len, reverse=True)
    alt = "|".join(re.escape(k) for k in keys)
    return re.compile(rf"(?<![a-z0-9'])(?:{alt})(?![a-z0-9'])")


_DEFAULT_PATTERN = _contraction_pattern(DEFAULT_CONTRACTIONS)


def normalize_text(raw: str, table: Mapping[str, str] | None = None,
                   drop_mentions: bool = False) -> str:
    """Return the cleaned form of ``raw``.

    ``table`` defaults to the built-in contraction table. With
    ``drop_mentions`` an ``@handle`` token is removed whole instead of
    losing only its ``@``.

    >>> normalize_text("I DON'T back H.R. 5!! https://t.co/x #guns")
    'do not back hr guns'
    """
    if table is None:
        return _normalize(raw, DEFAULT_CONTRACTIONS, _DEFAULT_PATTERN, drop_mentions)
    return _normalize(raw, table, _contraction_pattern(table), drop_mentions)


def _normalize(raw, table, pattern, drop_mentions):
    text = raw.lower().translate(_APOSTROPHES)
    if pattern is not None:
        text = pattern.sub(lambda m: table[m.group(0)], text)
    text = _URL.sub(" ", text)
    if drop_mentions:
        text = _MENTION.sub(" ", text)
    text = re.sub(r"\s", " ", text)
    text = _NON_ALNUM.sub("", text)
    return " ".join(tok for tok in text.split() if len(tok) > 1)


class TextNormalizer(TransformerMixin, BaseEstimator):
    """Stateless transformer wrapping :func:`normalize_text`.

    Parameters
    ----------
    contractions : mapping or path, optional
        Contraction table, or a path to ``contractions.csv``. Defaults to
        the built-in table.
    drop_mentions : bool, default=False
        Remove ``@mention`` tokens entirely.
    """

    def __init__(self, contractions=None, drop_mentions=False):
        self.contractions = contractions
        self.drop_mentions = drop_mentions

    def fit(self, X=None, y=None):
        if self.contractions is None:
            self.table_ = dict(DEFAULT_CONTRACTIONS)
        elif isinstance(self.contractions, (str, Path)):
            self.table_ = load_contractions(self.contractions)
        else:
            self.table_ = dict(self.contractions)
            validate_contractions(self.table_)
        self._pattern = _contraction_pattern(self.table_)
        return self

    def transform(self, X):
        if not hasattr(self, "table_"):
            self.fit()
        return [_normalize(t, self.table_, self._pattern, self.drop_mentions)
                for t in check_texts(X)]
