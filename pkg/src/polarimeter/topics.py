"""Keyword-phrase topic assignment.

A topic matches a message when any of its phrases occurs as a contiguous
run of whole tokens. A phrase written ``prefix:transphob`` matches any
token starting with ``transphob``; in a multi-word prefix phrase only
the last word is treated as a prefix.
"""
from __future__ import annotations

import re
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_texts
from .exceptions import InputError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

PREFIX = "prefix:"
_PHRASE = re.compile(r"[a-z0-9]+( [a-z0-9]+){0,3}")


@dataclass(frozen=True)
class TopicSpec:
    name: str
    phrases: tuple[str, ...]
    provenance: str = "curated"


def validate_specs(specs: Sequence[TopicSpec]) -> list[str]:
    """Return a list of problems; empty means the specs are usable."""
    problems = []
    seen = set()
    for spec in specs:
        if not spec.name:
            problems.append("topic with empty name")
        if spec.name in seen:
            problems.append(f"duplicate topic name {spec.name!r}")
        seen.add(spec.name)
        if not spec.phrases:
            problems.append(f"{spec.name}: empty phrase list")
        for phrase in spec.phrases:
            body = phrase[len(PREFIX):] if phrase.startswith(PREFIX) else phrase
            if not _PHRASE.fullmatch(body):
                problems.append(f"{spec.name}: phrase {phrase!r} not normalized "
                                "(lowercase a-z0-9, 1-4 single-spaced words)")
    return problems


def check_specs(specs: Sequence[TopicSpec]) -> None:
    problems = validate_specs(specs)
    if problems:
        raise InputError("invalid topic configuration: " + "; ".join(problems))


def load_topic_config(path=None) -> list[TopicSpec]:
    """Read a TOML topic file (``[[topic]]`` tables); the bundled default when None."""
    if path is None:
        path = Path(str(resources.files("polarimeter") / "data" / "topics.toml"))
    path = Path(path)
    if not path.is_file():
        raise InputError(f"topic config not found: {path}")
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"{path}: {exc}")
    tables = doc.get("topic")
    if not isinstance(tables, list):
        raise InputError(f"{path}: expected one or more [[topic]] tables")
    specs = []
    for t in tables:
        if "name" not in t or "phrases" not in t:
            raise InputError(f"{path}: every [[topic]] needs name and phrases")
        specs.append(TopicSpec(str(t["name"]), tuple(t["phrases"]), str(t.get("provenance", "curated"))))
    check_specs(specs)
    return specs


def _compile(phrase: str):
    if phrase.startswith(PREFIX):
        words = phrase[len(PREFIX):].split()
        return tuple(words), True
    return tuple(phrase.split()), False


def _occurs(tokens: Sequence[str], words: tuple[str, ...], prefix: bool) -> bool:
    n = len(words)
    for i in range(len(tokens) - n + 1):
        if prefix:
            if tuple(tokens[i:i + n - 1]) == words[:-1] and tokens[i + n - 1].startswith(words[-1]):
                return True
        elif tuple(tokens[i:i + n]) == words:
            return True
    return False


def assign_topics(clean: str, specs: Iterable[TopicSpec]) -> set[str]:
    """Names of every topic with a phrase occurring in ``clean``."""
    tokens = clean.split()
    token_set = set(tokens)
    matched = set()
    for spec in specs:
        for phrase in spec.phrases:
            words, prefix = _compile(phrase)
            # cheap rejection before the window scan
            if not prefix and words[0] not in token_set:
                continue
            if _occurs(tokens, words, prefix):
                matched.add(spec.name)
                break
    return matched


class TopicAssigner(TransformerMixin, BaseEstimator):
    """Multi-label topic indicator transformer.

    Parameters
    ----------
    config : path or sequence of TopicSpec, optional
        Topic definitions; the bundled twelve-topic config when None.

    Attributes
    ----------
    specs_ : list of TopicSpec
    topics_ : list of str
        Column order of :meth:`transform` output.
    """

    def __init__(self, config=None):
        self.config = config

    def fit(self, X=None, y=None):
        if self.config is None or isinstance(self.config, (str, Path)):
            specs = load_topic_config(self.config)
        else:
            specs = list(self.config)
            check_specs(specs)
        self.specs_ = specs
        self.topics_ = [s.name for s in specs]
        return self

    def assign(self, X) -> list[set[str]]:
        check_is_fitted(self, "specs_")
        return [assign_topics(t, self.specs_) for t in check_texts(X)]

    def transform(self, X):
        sets = self.assign(X)
        out = np.zeros((len(sets), len(self.topics_)), dtype=bool)
        for i, s in enumerate(sets):
            for j, name in enumerate(self.topics_):
                out[i, j] = name in s
        return out
