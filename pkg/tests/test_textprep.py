import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarimeter.exceptions import InputError
from polarimeter.textprep import (DEFAULT_CONTRACTIONS, TextNormalizer, load_contractions,
                                  normalize_text, validate_contractions)

from conftest import write


@pytest.mark.parametrize("raw, clean", [
    ("don't", "do not"),
    ("", ""),
    ("I DON'T back H.R. 5!! https://t.co/x #guns", "do not back hr guns"),
    ("Can’t stop, won’t stop", "cannot stop will not stop"),
    ("see www.example.com/page and http://x.y now", "see and now"),
    ("thanks @SenSmith for #HR5376", "thanks sensmith for hr5376"),
    ("café naïve 🇺🇸 ok", "caf nave ok"),
    ("tabs\tand\nnewlines", "tabs and newlines"),
])
def test_examples(raw, clean):
    assert normalize_text(raw) == clean


def test_drop_mentions():
    assert normalize_text("thanks @SenSmith for this", drop_mentions=True) == "thanks for this"
    assert normalize_text("mail me a@b.com", drop_mentions=True) == "mail me abcom"


def test_contraction_before_punctuation():
    # stripping the apostrophe first would leave "dont"
    assert normalize_text("Don't") == "do not"
    assert "dont" not in normalize_text("I don't")


def test_contraction_boundaries():
    assert normalize_text("isn't it") == "is not it"
    assert normalize_text("abcan't") == "abcant"


def test_default_table_is_valid():
    validate_contractions(DEFAULT_CONTRACTIONS)
    assert 100 <= len(DEFAULT_CONTRACTIONS) <= 150


def test_invalid_tables():
    with pytest.raises(InputError, match="lowercase"):
        validate_contractions({"Don't": "do not"})
    with pytest.raises(InputError, match="apostrophe"):
        validate_contractions({"y'all": "you'all"})


def test_load_contractions(tmp_path):
    p = write(tmp_path / "c.csv", "contraction,expansion\nain't,is not\n")
    assert load_contractions(p) == {"ain't": "is not"}
    bad = write(tmp_path / "bad.csv", "from,to\n")
    with pytest.raises(InputError):
        load_contractions(bad)


def test_transformer(tmp_path):
    p = write(tmp_path / "c.csv", "contraction,expansion\nain't,am not\n")
    tn = TextNormalizer(contractions=p).fit()
    assert tn.transform(["I ain't"]) == ["am not"]
    assert TextNormalizer().transform(["Don't!"]) == ["do not"]
    assert TextNormalizer(drop_mentions=True).get_params() == {"contractions": None, "drop_mentions": True}
    with pytest.raises(TypeError):
        TextNormalizer().transform("not a list")


OUTPUT = re.compile(r"(?:[a-z0-9]{2,}(?: [a-z0-9]{2,})*)?")
text = st.text(st.characters(blacklist_categories=("Cs",)), max_size=80)
tweety = st.lists(st.sampled_from(
    ["don't", "DON'T", "can’t", "@who", "#tag", "http://t.co/a", "www.x.org", "H.R.", "5", "a",
     "I'm", "we'll", "!!", "’", "'", "t.co/z", "é", "x@y", "\t", "\n", "word", "rt"]), max_size=15).map(" ".join)


@given(st.one_of(text, tweety), st.booleans())
def test_idempotent(raw, drop):
    once = normalize_text(raw, drop_mentions=drop)
    assert normalize_text(once, drop_mentions=drop) == once


@given(st.one_of(text, tweety))
def test_output_alphabet(raw):
    assert OUTPUT.fullmatch(normalize_text(raw))
