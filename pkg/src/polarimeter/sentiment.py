"""Rule-based valence sentiment scoring (VADER semantics).

The rule order, constants and word lists follow VADER 3.3.2 exactly so
that scores agree with the published tool; a few of its behaviours that
look accidental (the "but" reweighting matches sentiment values rather
than positions, the three-word "so"/"this" check is looser than the
two-word one) are kept on purpose.
"""
from __future__ import annotations

import math
import string
from dataclasses import dataclass, asdict
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_texts
from .exceptions import InputError

NEGATE = frozenset([
    "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt",
    "ain't", "aren't", "can't", "couldn't", "daren't", "didn't", "doesn't",
    "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt", "mustnt", "neither",
    "don't", "hadn't", "hasn't", "haven't", "isn't", "mightn't", "mustn't",
    "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing", "nowhere",
    "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent",
    "oughtn't", "shan't", "shouldn't", "uh-uh", "wasn't", "weren't",
    "without", "wont", "wouldnt", "won't", "wouldn't", "rarely", "seldom", "despite",
])

# +1 boosts, -1 dampens; scaled by RuleConstants.booster_increment
BOOSTERS: dict[str, int] = {w: 1 for w in (
    "absolutely amazingly awfully completely considerable considerably decidedly deeply "
    "effing enormous enormously entirely especially exceptional exceptionally extreme "
    "extremely fabulously flipping flippin frackin fracking fricking frickin frigging "
    "friggin fully fuckin fucking fuggin fugging greatly hella highly hugely incredible "
    "incredibly intensely major majorly more most particularly purely quite really "
    "remarkably so substantially thoroughly total totally tremendous tremendously uber "
    "unbelievably unusually utter utterly very").split()}
BOOSTERS.update({w: -1 for w in (
    "almost", "barely", "hardly", "just enough", "kind of", "kinda", "kindof", "kind-of",
    "less", "little", "marginal", "marginally", "occasional", "occasionally", "partly",
    "scarce", "scarcely", "slight", "slightly", "somewhat", "sort of", "sorta", "sortof",
    "sort-of")})

SPECIAL_CASES: dict[str, float] = {
    "the shit": 3, "the bomb": 3, "bad ass": 1.5, "badass": 1.5, "bus stop": 0.0,
    "yeah right": -2, "kiss of death": -1.5, "to die for": 3, "beating heart": 3.5,
}


@dataclass(frozen=True)
class RuleConstants:
    """Tunable constants of the scoring rules; defaults are VADER's."""

    alpha: float = 15.0
    booster_increment: float = 0.293
    caps_increment: float = 0.733
    negation_factor: float = -0.74
    but_pre_weight: float = 0.5
    but_post_weight: float = 1.5
    exclamation_increment: float = 0.292
    max_exclamations: int = 4
    # 2-3 question marks add count * question_increment, 4+ add question_cap
    question_increment: float = 0.18
    question_cap: float = 0.96

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")


@dataclass(frozen=True)
class SentimentResult:
    neg: float
    neu: float
    pos: float
    compound: float

    def as_tuple(self):
        return (self.neg, self.neu, self.pos, self.compound)


def load_lexicon(path) -> dict[str, float]:
    """Read a tab-delimited ``token<TAB>valence[<TAB>...]`` lexicon.

    Later duplicates overwrite earlier ones. Extra columns are ignored.
    """
    path = Path(path)
    if not path.is_file():
        raise InputError(f"lexicon file not found: {path}")
    lexicon = {}
    with open(path, encoding="utf-8-sig") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) < 2:
                raise InputError(f"{path}: missing valence at line {line_no}")
            try:
                valence = float(parts[1])
            except ValueError:
                raise InputError(f"{path}: non-numeric valence {parts[1]!r} at line {line_no}")
            if not abs(valence) <= 4.0:
                raise InputError(f"{path}: valence {valence} outside [-4, 4] at line {line_no}")
            lexicon[parts[0]] = valence
    return lexicon


@lru_cache(maxsize=None)
def _bundled(name: str) -> Path:
    return Path(str(resources.files("polarimeter") / "data" / name))


@lru_cache(maxsize=None)
def default_lexicon() -> Mapping[str, float]:
    """The published VADER lexicon shipped with the package (read once)."""
    return load_lexicon(_bundled("vader_lexicon.txt"))


def load_emoji_lexicon(path) -> dict[str, str]:
    table = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                emoji, description = line.split("\t")[:2]
                table[emoji] = description
    return table


@lru_cache(maxsize=None)
def default_emoji_lexicon() -> Mapping[str, str]:
    return load_emoji_lexicon(_bundled("emoji_utf8_lexicon.txt"))


def normalize_valence(s: float, alpha: float = 15.0) -> float:
    """Map a raw valence sum onto ``(-1, 1)`` as ``s / sqrt(s**2 + alpha)``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    value = s / math.sqrt(s * s + alpha)
    return min(1.0, max(-1.0, value))


def _strip_punc_if_word(token: str) -> str:
    # short residues are probably emoticons like ":)"; keep those intact
    stripped = token.strip(string.punctuation)
    return token if len(stripped) <= 2 else stripped


def _is_negated(word: str) -> bool:
    return word in NEGATE or "n't" in word


def _translate_emoji(text: str, emojis: Mapping[str, str]) -> str:
    out = []
    prev_space = True
    for ch in text:
        if ch in emojis:
            if not prev_space:
                out.append(" ")
            out.append(emojis[ch])
            prev_space = False
        else:
            out.append(ch)
            prev_space = ch == " "
    return "".join(out).strip()


class _Scorer:
    """One text's worth of scoring state."""

    def __init__(self, text: str, lexicon: Mapping[str, float], c: RuleConstants):
        self.text = text
        self.lexicon = lexicon
        self.c = c
        self.words = [_strip_punc_if_word(w) for w in text.split()]
        self.lower = [w.lower() for w in self.words]
        n_caps = sum(1 for w in self.words if w.isupper())
        self.cap_diff = 0 < len(self.words) - n_caps < len(self.words)

    def booster_scalar(self, word: str, valence: float) -> float:
        direction = BOOSTERS.get(word.lower())
        if direction is None:
            return 0.0
        scalar = direction * self.c.booster_increment
        if valence < 0:
            scalar = -scalar
        if word.isupper() and self.cap_diff:
            scalar += self.c.caps_increment if valence > 0 else -self.c.caps_increment
        return scalar

    def negation(self, valence: float, start_i: int, i: int) -> float:
        low = self.lower
        nf = self.c.negation_factor
        if start_i == 0:
            if _is_negated(low[i - 1]):
                valence *= nf
        elif start_i == 1:
            if low[i - 2] == "never" and low[i - 1] in ("so", "this"):
                valence *= 1.25
            elif low[i - 2] == "without" and low[i - 1] == "doubt":
                pass
            elif _is_negated(low[i - 2]):
                valence *= nf
        else:
            if (low[i - 3] == "never" and low[i - 2] in ("so", "this")) or low[i - 1] in ("so", "this"):
                valence *= 1.25
            elif low[i - 3] == "without" and "doubt" in (low[i - 2], low[i - 1]):
                pass
            elif _is_negated(low[i - 3]):
                valence *= nf
        return valence

    def special_idioms(self, valence: float, i: int) -> float:
        low = self.lower
        onezero = f"{low[i - 1]} {low[i]}"
        twoonezero = f"{low[i - 2]} {low[i - 1]} {low[i]}"
        twoone = f"{low[i - 2]} {low[i - 1]}"
        threetwoone = f"{low[i - 3]} {low[i - 2]} {low[i - 1]}"
        threetwo = f"{low[i - 3]} {low[i - 2]}"
        for seq in (onezero, twoonezero, twoone, threetwoone, threetwo):
            if seq in SPECIAL_CASES:
                valence = SPECIAL_CASES[seq]
                break
        if len(low) - 1 > i:
            zeroone = f"{low[i]} {low[i + 1]}"
            if zeroone in SPECIAL_CASES:
                valence = SPECIAL_CASES[zeroone]
        if len(low) - 1 > i + 1:
            zeroonetwo = f"{low[i]} {low[i + 1]} {low[i + 2]}"
            if zeroonetwo in SPECIAL_CASES:
                valence = SPECIAL_CASES[zeroonetwo]
        for ngram in (threetwoone, threetwo, twoone):
            if ngram in BOOSTERS:
                valence += BOOSTERS[ngram] * self.c.booster_increment
        return valence

    def least(self, valence: float, i: int) -> float:
        low = self.lower
        if i > 0 and low[i - 1] == "least" and low[i - 1] not in self.lexicon:
            if i == 1 or low[i - 2] not in ("at", "very"):
                valence *= self.c.negation_factor
        return valence

    def token_valence(self, i: int) -> float:
        low, lex = self.lower, self.lexicon
        item = self.words[i]
        word = low[i]
        if word not in lex:
            return 0.0
        valence = lex[word]
        # "no" directly before a lexicon word acts as a negator, not a sentiment word
        if word == "no" and i != len(low) - 1 and low[i + 1] in lex:
            valence = 0.0
        if (i > 0 and low[i - 1] == "no") or (i > 1 and low[i - 2] == "no") or (
                i > 2 and low[i - 3] == "no" and low[i - 1] in ("or", "nor")):
            valence = lex[word] * self.c.negation_factor
        if item.isupper() and self.cap_diff:
            valence += self.c.caps_increment if valence > 0 else -self.c.caps_increment
        for start_i in range(3):
            if i > start_i and low[i - (start_i + 1)] not in lex:
                s = self.booster_scalar(self.words[i - (start_i + 1)], valence)
                if start_i == 1 and s != 0:
                    s *= 0.95
                elif start_i == 2 and s != 0:
                    s *= 0.9
                valence += s
                valence = self.negation(valence, start_i, i)
                if start_i == 2:
                    valence = self.special_idioms(valence, i)
        return self.least(valence, i)

    def sentiments(self) -> list[float]:
        low = self.lower
        out = []
        for i, word in enumerate(low):
            if word in BOOSTERS or (word == "kind" and i < len(low) - 1 and low[i + 1] == "of"):
                out.append(0.0)
            else:
                out.append(self.token_valence(i))
        if "but" in low:
            bi = low.index("but")
            for j in range(len(out)):
                value = out[j]
                # first position holding this value, as the reference does
                si = out.index(value)
                if si < bi:
                    out[si] = value * self.c.but_pre_weight
                elif si > bi:
                    out[si] = value * self.c.but_post_weight
        return out

    def punctuation_emphasis(self) -> float:
        c = self.c
        ep = min(self.text.count("!"), c.max_exclamations) * c.exclamation_increment
        qm_count = self.text.count("?")
        qm = 0.0
        if qm_count > 1:
            qm = qm_count * c.question_increment if qm_count <= 3 else c.question_cap
        return ep + qm

    def score(self) -> SentimentResult:
        sentiments = self.sentiments()
        if not sentiments:
            return SentimentResult(0.0, 0.0, 0.0, 0.0)
        total = float(sum(sentiments))
        emphasis = self.punctuation_emphasis()
        if total > 0:
            total += emphasis
        elif total < 0:
            total -= emphasis
        compound = normalize_valence(total, self.c.alpha)

        pos_sum = neg_sum = 0.0
        neu_count = 0
        for s in sentiments:
            # +/-1 offsets compensate for neutral words counting as 1
            if s > 0:
                pos_sum += s + 1
            elif s < 0:
                neg_sum += s - 1
            else:
                neu_count += 1
        if pos_sum > abs(neg_sum):
            pos_sum += emphasis
        elif pos_sum < abs(neg_sum):
            neg_sum -= emphasis
        denom = pos_sum + abs(neg_sum) + neu_count
        return SentimentResult(
            neg=abs(neg_sum / denom),
            neu=abs(neu_count / denom),
            pos=abs(pos_sum / denom),
            compound=compound,
        )


def score_text(text: str, lexicon: Mapping[str, float] | None = None,
               constants: RuleConstants | None = None,
               emojis: Mapping[str, str] | None = None) -> SentimentResult:
    """Score one text.

    Parameters
    ----------
    text : str
    lexicon : mapping, optional
        Token to valence; defaults to the bundled VADER lexicon.
    constants : RuleConstants, optional
    emojis : mapping, optional
        Emoji to description; defaults to the bundled emoji table. Pass
        ``{}`` to disable emoji translation.

    Returns
    -------
    SentimentResult
        Unrounded ``neg``, ``neu``, ``pos`` proportions and ``compound``
        in ``[-1, 1]``. Empty input scores ``(0, 0, 0, 0)``.
    """
    if lexicon is None:
        lexicon = default_lexicon()
    if emojis is None:
        emojis = default_emoji_lexicon()
    if emojis:
        text = _translate_emoji(text, emojis)
    return _Scorer(text, lexicon, constants or RuleConstants()).score()


class SentimentScorer(TransformerMixin, BaseEstimator):
    """Transform texts into ``(neg, neu, pos, compound)`` rows.

    Parameters
    ----------
    lexicon : path, optional
        Lexicon file; the bundled VADER lexicon when None.
    alpha, booster_increment, caps_increment, negation_factor,
    but_pre_weight, but_post_weight, exclamation_increment : float
        See :class:`RuleConstants`.
    """

    columns = ("neg", "neu", "pos", "compound")

    def __init__(self, lexicon=None, alpha=15.0, booster_increment=0.293,
                 caps_increment=0.733, negation_factor=-0.74, but_pre_weight=0.5,
                 but_post_weight=1.5, exclamation_increment=0.292):
        self.lexicon = lexicon
        self.alpha = alpha
        self.booster_increment = booster_increment
        self.caps_increment = caps_increment
        self.negation_factor = negation_factor
        self.but_pre_weight = but_pre_weight
        self.but_post_weight = but_post_weight
        self.exclamation_increment = exclamation_increment

    @classmethod
    def from_constants(cls, constants: RuleConstants, lexicon=None):
        params = {k: v for k, v in asdict(constants).items()
                  if k in cls._get_param_names()}
        return cls(lexicon=lexicon, **params)

    def fit(self, X=None, y=None):
        self.lexicon_ = default_lexicon() if self.lexicon is None else load_lexicon(self.lexicon)
        self.constants_ = RuleConstants(
            alpha=self.alpha, booster_increment=self.booster_increment,
            caps_increment=self.caps_increment, negation_factor=self.negation_factor,
            but_pre_weight=self.but_pre_weight, but_post_weight=self.but_post_weight,
            exclamation_increment=self.exclamation_increment)
        return self

    def score(self, text: str) -> SentimentResult:
        check_is_fitted(self, "lexicon_")
        return score_text(text, self.lexicon_, self.constants_)

    def transform(self, X):
        check_is_fitted(self, "lexicon_")
        texts = check_texts(X)
        out = np.zeros((len(texts), 4))
        for i, t in enumerate(texts):
            out[i] = score_text(t, self.lexicon_, self.constants_).as_tuple()
        return out
