"""Descriptive statistics, two-sample t-tests and polarization ranking."""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exceptions import DegenerateVarianceError

STRATA = ("p<0.001", "p<0.01", "p<0.05", "ns")
SKIPPED = "skipped"
ALPHA = 0.05

TOPICS = (
    "Abortion",
    "Broadband Internet",
    "Chinese Communist Party",
    "CHIPS and Science Act",
    "Climate Change",
    "Fossil Fuels",
    "Gun Control",
    "Immigration and Border Control",
    "LGBTQ Community",
    "Substance Abuse and Mental Health",
    "Taiwan",
    "Ukraine-Russia",
)


@dataclass(frozen=True)
class DescriptiveStats:
    """Summary of one sample.

    ``std`` is the n-1 sample deviation; for a single observation it is
    reported as 0 with ``std_defined`` False.
    """

    count: int
    mean: float
    median: float = float("nan")
    std: float = 0.0
    std_defined: bool = True

    @classmethod
    def from_summary(cls, count: int, mean: float, std: float, median: float = float("nan")):
        return cls(int(count), float(mean), float(median), float(std), count >= 2)


def describe(values: Iterable[float]) -> DescriptiveStats:
    """Count, mean, median and sample standard deviation.

    >>> describe([1, 2, 3])
    DescriptiveStats(count=3, mean=2.0, median=2.0, std=1.0, std_defined=True)
    """
    xs = [float(v) for v in values]
    if not xs:
        raise ValueError("cannot describe an empty sample")
    n = len(xs)
    mean = math.fsum(xs) / n
    median = float(statistics.median(xs))
    if n < 2:
        return DescriptiveStats(n, mean, median, 0.0, False)
    std = math.sqrt(math.fsum((x - mean) ** 2 for x in xs) / (n - 1))
    return DescriptiveStats(n, mean, median, std, True)


# Regularized incomplete beta -------------------------------------------------

_EPS = 1e-16
_TINY = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for I_x(a, b), modified Lentz."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = 1.0 / (d if abs(d) > _TINY else _TINY)
    h = d
    for m in range(1, 100_000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > _TINY else _TINY)
        c = 1.0 + aa / c
        c = c if abs(c) > _TINY else _TINY
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > _TINY else _TINY)
        c = 1.0 + aa / c
        c = c if abs(c) > _TINY else _TINY
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def betainc(a: float, b: float, x: float, y: float | None = None) -> float:
    """Regularized incomplete beta ``I_x(a, b)``.

    ``y`` may carry ``1 - x`` computed without cancellation.
    """
    if y is None:
        y = 1.0 - x
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    log_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                 + a * math.log(x) + b * math.log(y))
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, y) / b


def student_t_p(t: float, df: float) -> float:
    """Two-sided Student-t tail probability ``P(|T| >= |t|)``.

    Non-integer ``df`` is accepted (Welch).
    """
    if not df >= 1:
        raise ValueError(f"df must be >= 1, got {df!r}")
    if not math.isfinite(t):
        if math.isnan(t):
            raise ValueError("t is NaN")
        return 0.0
    t2 = t * t
    if t2 == 0.0:
        return 1.0
    denom = df + t2
    p = betainc(df / 2.0, 0.5, df / denom, t2 / denom)
    return min(1.0, max(0.0, p))


def stratum(p: float) -> str:
    if p < 0.001:
        return "p<0.001"
    if p < 0.01:
        return "p<0.01"
    if p < ALPHA:
        return "p<0.05"
    return "ns"


# Tests ----------------------------------------------------------------------

@dataclass(frozen=True)
class GroupPair:
    """A comparison column; ``t`` is ``mean(second) - mean(first)`` over the pooled SE."""

    label: str
    first: str
    second: str

    def swapped(self) -> "GroupPair":
        return GroupPair(self.label, self.second, self.first)


# Orientation per column reproduces the published sign of each comparison.
TABLE_PAIRS = (
    GroupPair("Far Left - Far Right", "Far Left", "Far Right"),
    GroupPair("Far Right - Left Centrist", "Left Centrist", "Far Right"),
    GroupPair("Right Centrist - Left Centrist", "Right Centrist", "Left Centrist"),
    GroupPair("Right Centrist - Far Left", "Far Left", "Right Centrist"),
    GroupPair("Far Right - Right Centrist", "Right Centrist", "Far Right"),
    GroupPair("Left Centrist - Far Left", "Far Left", "Left Centrist"),
)
CORE_GROUPS = ("Far Left", "Left Centrist", "Right Centrist", "Far Right")
CENTRIST = "Centrist"


@dataclass(frozen=True)
class PairwiseTest:
    topic: str
    pair: str
    group_a: str
    group_b: str
    df: float | None
    t: float | None
    p: float | None
    stratum: str
    reason: str = ""

    @property
    def skipped(self) -> bool:
        return self.stratum == SKIPPED

    @property
    def significant(self) -> bool:
        return self.p is not None and self.p < ALPHA


def _as_stats(s) -> DescriptiveStats:
    return s if isinstance(s, DescriptiveStats) else describe(s)


def _finish(topic, pair, a, b, df, t, p) -> PairwiseTest:
    label = pair if pair is not None else f"{a} - {b}"
    return PairwiseTest(topic, label, a, b, df, t, p, stratum(p))


def pooled_t_test(a, b, *, topic: str = "", group_a: str = "a", group_b: str = "b",
                  pair: str | None = None) -> PairwiseTest:
    """Equal-variance two-sample t-test, ``t = (mean_b - mean_a) / se``.

    ``a`` and ``b`` are :class:`DescriptiveStats` or raw samples.

    Raises
    ------
    ValueError
        If either sample has fewer than two observations.
    DegenerateVarianceError
        If both samples are constant with different means.
    """
    a, b = _as_stats(a), _as_stats(b)
    if a.count < 2 or b.count < 2:
        raise ValueError(f"need at least 2 observations per group, got {a.count} and {b.count}")
    df = a.count + b.count - 2
    diff = b.mean - a.mean
    sp2 = ((a.count - 1) * a.std ** 2 + (b.count - 1) * b.std ** 2) / df
    if sp2 == 0.0:
        if diff == 0.0:
            return _finish(topic, pair, group_a, group_b, df, 0.0, 1.0)
        raise DegenerateVarianceError("degenerate variance: both groups are constant with different means")
    se = math.sqrt(sp2 * (1.0 / a.count + 1.0 / b.count))
    t = diff / se
    return _finish(topic, pair, group_a, group_b, df, t, student_t_p(t, df))


def welch_t_test(a, b, *, topic: str = "", group_a: str = "a", group_b: str = "b",
                 pair: str | None = None) -> PairwiseTest:
    """Unequal-variance t-test with Welch-Satterthwaite degrees of freedom."""
    a, b = _as_stats(a), _as_stats(b)
    if a.count < 2 or b.count < 2:
        raise ValueError(f"need at least 2 observations per group, got {a.count} and {b.count}")
    diff = b.mean - a.mean
    va, vb = a.std ** 2 / a.count, b.std ** 2 / b.count
    if va + vb == 0.0:
        if diff == 0.0:
            return _finish(topic, pair, group_a, group_b, float(a.count + b.count - 2), 0.0, 1.0)
        raise DegenerateVarianceError("degenerate variance: both groups are constant with different means")
    t = diff / math.sqrt(va + vb)
    df = (va + vb) ** 2 / (va ** 2 / (a.count - 1) + vb ** 2 / (b.count - 1))
    return _finish(topic, pair, group_a, group_b, df, t, student_t_p(t, max(df, 1.0)))


def default_pairs(groups: Sequence[str], include_centrist: bool = False) -> list[GroupPair]:
    """The six canonical comparisons when all four core groups exist, else all combinations."""
    groups = list(dict.fromkeys(groups))
    if set(CORE_GROUPS) <= set(groups):
        pairs = list(TABLE_PAIRS)
        if include_centrist and CENTRIST in groups:
            pairs += [GroupPair(f"{g} - {CENTRIST}", g, CENTRIST) for g in CORE_GROUPS]
        return pairs
    if not include_centrist:
        groups = [g for g in groups if g != CENTRIST]
    return [GroupPair(f"{a} - {b}", a, b) for a, b in combinations(groups, 2)]


def run_all_tests(samples: Mapping[tuple[str, str], object],
                  pairs: Sequence[GroupPair] | None = None,
                  topics: Sequence[str] | None = None,
                  welch: bool = False) -> list[PairwiseTest]:
    """Every pair for every topic, in topic order then pair order.

    ``samples`` maps ``(topic, group)`` to a raw sample or
    :class:`DescriptiveStats`. Pairs lacking two observations on either
    side, or with degenerate variance, come back with stratum
    ``"skipped"``.
    """
    stats = {key: (v if isinstance(v, DescriptiveStats) else (describe(v) if len(v) else None))
             for key, v in samples.items()}
    if topics is None:
        topics = list(dict.fromkeys(t for t, _ in samples))
    if pairs is None:
        pairs = default_pairs([g for _, g in samples])
    test = welch_t_test if welch else pooled_t_test
    out = []
    for topic in topics:
        for pair in pairs:
            a, b = stats.get((topic, pair.first)), stats.get((topic, pair.second))
            na, nb = (a.count if a else 0), (b.count if b else 0)
            if na < 2 or nb < 2:
                out.append(PairwiseTest(topic, pair.label, pair.first, pair.second, None, None, None,
                                        SKIPPED, f"insufficient data ({na} vs {nb})"))
                continue
            try:
                out.append(test(a, b, topic=topic, group_a=pair.first, group_b=pair.second, pair=pair.label))
            except DegenerateVarianceError as exc:
                out.append(PairwiseTest(topic, pair.label, pair.first, pair.second, None, None, None,
                                        SKIPPED, str(exc)))
    return out


@dataclass(frozen=True)
class PolarizationRank:
    topic: str
    n_sig: int
    n_p001: int
    n_p01: int
    n_p05: int


def rank_policies(tests: Iterable[PairwiseTest]) -> list[PolarizationRank]:
    """Order topics by number of significant pairs.

    Ties fall to the count at p<0.001, then p<0.01, then topic name.
    Skipped tests count as not significant. Input order is irrelevant.
    """
    tally: dict[str, list[int]] = {}
    for t in tests:
        row = tally.setdefault(t.topic, [0, 0, 0])
        if t.stratum in STRATA[:3]:
            row[STRATA.index(t.stratum)] += 1
    ranks = [PolarizationRank(topic, sum(c), c[0], c[1], c[2]) for topic, c in tally.items()]
    return sorted(ranks, key=lambda r: (-r.n_sig, -r.n_p001, -r.n_p01, r.topic))
