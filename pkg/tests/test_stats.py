import math
import statistics

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from polarimeter.exceptions import DegenerateVarianceError
from polarimeter.stats import (TABLE_PAIRS, DescriptiveStats, GroupPair, PairwiseTest, default_pairs,
                               describe, pooled_t_test, rank_policies, run_all_tests, stratum,
                               student_t_p, welch_t_test)


def t_density(x, df):
    return math.exp(math.lgamma((df + 1) / 2) - math.lgamma(df / 2) - 0.5 * math.log(df * math.pi)
                    - (df + 1) / 2 * math.log1p(x * x / df))


def quad_p(t, df):
    tail, _ = integrate.quad(t_density, abs(t), math.inf, args=(df,), epsabs=1e-14, epsrel=1e-13, limit=200)
    return 2 * tail


def test_describe():
    assert describe([1, 2, 3]) == DescriptiveStats(3, 2.0, 2.0, 1.0, True)
    assert describe([1, 3]).median == 2
    single = describe([0.4])
    assert single.std == 0 and not single.std_defined
    with pytest.raises(ValueError):
        describe([])


@given(st.lists(st.floats(-1, 1), min_size=2, max_size=50))
def test_describe_matches_statistics(xs):
    d = describe(xs)
    assert d.mean == pytest.approx(statistics.fmean(xs), abs=1e-12)
    assert d.std == pytest.approx(statistics.stdev(xs), abs=1e-12)


def test_student_t_p_examples():
    assert student_t_p(0, 5) == 1
    assert student_t_p(2.228, 10) == pytest.approx(0.05, abs=1e-4)
    assert student_t_p(-5.075, 1670) < 0.001
    with pytest.raises(ValueError):
        student_t_p(1.0, 0.5)


@pytest.mark.parametrize("t, df", [(0.1, 1), (1.5, 3), (3.0, 30), (0.01, 5000), (7.0, 12.5)])
def test_student_t_p_quad(t, df):
    assert student_t_p(t, df) == pytest.approx(quad_p(t, df), abs=1e-10)


@given(st.floats(0, 50), st.floats(0, 50), st.integers(1, 5000))
def test_student_t_p_shape(a, b, df):
    pa = student_t_p(a, df)
    assert 0 <= pa <= 1
    assert student_t_p(-a, df) == pa
    if a < b:
        assert student_t_p(b, df) <= pa


@given(st.floats(0, 6), st.integers(1000, 20000))
def test_normal_envelope(t, df):
    normal = math.erfc(t / math.sqrt(2))
    assert abs(student_t_p(t, df) - normal) <= 5e-3


def test_pooled_examples():
    a = DescriptiveStats.from_summary(1177, 0.191, 0.577)
    b = DescriptiveStats.from_summary(495, 0.037, 0.541)
    r = pooled_t_test(a, b)
    assert r.df == 1670 and r.t == pytest.approx(-5.075, abs=0.06) and r.p < 0.001
    g = pooled_t_test(DescriptiveStats.from_summary(2253, -0.386, 0.594),
                      DescriptiveStats.from_summary(893, -0.244, 0.587))
    assert g.df == 3144 and g.t == pytest.approx(6.086, abs=0.06)
    same = pooled_t_test(a, a)
    assert (same.t, same.p) == (0.0, 1.0)


def test_pooled_against_raw_formula():
    x, y = [0.1, 0.5, -0.2, 0.3], [0.6, 0.9, 0.2]
    r = pooled_t_test(x, y)
    sp2 = (3 * statistics.variance(x) + 2 * statistics.variance(y)) / 5
    t = (statistics.mean(y) - statistics.mean(x)) / math.sqrt(sp2 * (1 / 4 + 1 / 3))
    assert r.t == pytest.approx(t) and r.p == pytest.approx(quad_p(t, 5), abs=1e-10)


def test_degenerate():
    assert pooled_t_test([1.0, 1.0], [1.0, 1.0]).p == 1
    with pytest.raises(DegenerateVarianceError, match="degenerate variance"):
        pooled_t_test([1.0, 1.0], [2.0, 2.0])
    with pytest.raises(ValueError):
        pooled_t_test([1.0], [1.0, 2.0])


samples = st.lists(st.floats(-1, 1), min_size=2, max_size=30)


@given(samples, samples)
def test_antisymmetry(a, b):
    try:
        ab = pooled_t_test(a, b)
    except DegenerateVarianceError:
        return
    ba = pooled_t_test(b, a)
    assert ba.t == -ab.t and ba.df == ab.df and ba.p == ab.p
    if ab.t:
        assert math.copysign(1, ab.t) == math.copysign(1, describe(b).mean - describe(a).mean)


def test_welch():
    x, y = [0.1, 0.5, -0.2, 0.3], [0.6, 0.9, 0.2, 0.8, 0.85]
    w = welch_t_test(x, y)
    from scipy import stats as ss
    ref = ss.ttest_ind(y, x, equal_var=False)
    assert w.t == pytest.approx(ref.statistic) and w.p == pytest.approx(ref.pvalue, abs=1e-10)


def test_strata():
    assert [stratum(p) for p in (0.0005, 0.001, 0.009, 0.049, 0.05)] == \
        ["p<0.001", "p<0.01", "p<0.01", "p<0.05", "ns"]


def test_run_all_tests_small():
    data = {("T1", "L"): [0.1, 0.2, 0.4], ("T1", "R"): [0.5, 0.6, 0.9],
            ("T2", "L"): [0.0, 0.1], ("T2", "R"): [0.3, 0.2]}
    tests = run_all_tests(data)
    assert [(t.topic, t.pair) for t in tests] == [("T1", "L - R"), ("T2", "L - R")]


def test_run_all_tests_skips_missing_group():
    data = {("T", g): [0.1, 0.3, 0.2] for g in ("Far Left", "Left Centrist", "Right Centrist")}
    data[("T", "Far Right")] = []
    tests = run_all_tests(data)
    assert len(tests) == 6
    skipped = {t.pair for t in tests if t.skipped}
    assert skipped == {p.label for p in TABLE_PAIRS if "Far Right" in (p.first, p.second)}
    assert all(t.p is not None for t in tests if not t.skipped)


def test_default_pairs():
    core = ["Far Left", "Left Centrist", "Centrist", "Right Centrist", "Far Right"]
    assert default_pairs(core) == list(TABLE_PAIRS)
    assert len(default_pairs(core, include_centrist=True)) == 10
    assert default_pairs(["A", "B", "C"]) == [GroupPair("A - B", "A", "B"), GroupPair("A - C", "A", "C"),
                                             GroupPair("B - C", "B", "C")]


def _t(topic, s):
    return PairwiseTest(topic, "x", "a", "b", None, None, None, s)


def test_rank_ordering():
    tests = [_t("B", "p<0.05"), _t("A", "p<0.01"), _t("C", "p<0.001"), _t("D", "ns"), _t("E", "skipped")]
    assert [r.topic for r in rank_policies(tests)] == ["C", "A", "B", "D", "E"]
    assert [r.topic for r in rank_policies([_t(n, "ns") for n in "zyx"])] == ["x", "y", "z"]


@given(st.permutations([_t(t, s) for t in "ABC" for s in ("p<0.05", "ns", "p<0.001", "p<0.01")][:10]))
def test_rank_order_insensitive(tests):
    assert rank_policies(tests) == rank_policies(sorted(tests, key=lambda t: (t.topic, t.stratum)))
