from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarimeter.ngrams import STOPWORDS, NgramCounter, NgramTable, extract_ngrams, tokenize, top_k


def test_tokenize():
    assert tokenize("build back better act") == ["build", "back", "better", "act"]
    assert tokenize("") == []
    assert tokenize("the gun control act", STOPWORDS) == ["gun", "control", "act"]


def test_windows():
    assert extract_ngrams(list("abab"), 2).counts == {"a b": 2, "b a": 1}
    assert extract_ngrams(["a", "b"], 3).counts == {}
    with pytest.raises(ValueError):
        extract_ngrams(["a"], 5)


def test_top_k():
    t = NgramTable(1, Counter({"x": 3, "y": 1}))
    assert top_k(t, 1) == [("x", 3)]
    assert top_k(NgramTable(1, Counter({"y": 2, "x": 2})), 2) == [("x", 2), ("y", 2)]
    assert top_k(t, 0) == []


def test_merge_rejects_mixed_n():
    with pytest.raises(ValueError):
        NgramTable(1).merge(NgramTable(2))


def test_counter_never_crosses_messages():
    c = NgramCounter(n=2, stopwords=False).fit(["build back", "better act"])
    assert "back better" not in c.table_.counts
    assert c.top_k(5) == [("better act", 1), ("build back", 1)]


def test_stopword_flag():
    on = NgramCounter(n=1).fit(["the gun the law"]).table_.counts
    off = NgramCounter(n=1, stopwords=False).fit(["the gun the law"]).table_.counts
    assert "the" not in on and off["the"] == 2


def test_stopword_list_size():
    assert 150 <= len(STOPWORDS) <= 200


tokens = st.lists(st.sampled_from(["a", "b", "c", "dd"]), max_size=12)


@given(tokens, st.integers(1, 4))
def test_count_identity(toks, n):
    assert extract_ngrams(toks, n).total() == max(len(toks) - n + 1, 0)
    assert all(len(k.split()) == n for k in extract_ngrams(toks, n).counts)


@given(st.lists(tokens, max_size=8), st.integers(1, 4), st.randoms(use_true_random=False))
def test_merge_order_independent(messages, n, rnd):
    tables = [extract_ngrams(m, n) for m in messages]
    forward = NgramTable(n)
    for t in tables:
        forward = forward.merge(t)
    rnd.shuffle(tables)
    shuffled = NgramTable(n)
    for t in tables:
        shuffled = shuffled.merge(t)
    assert forward.counts == shuffled.counts
    fitted = NgramCounter(n=n, stopwords=False).fit([" ".join(m) for m in messages]).table_
    assert fitted.counts == forward.counts
