"""Acceptance checks; each prints one PASS/FAIL/SKIP line.

Run with ``pytest tests/test_acceptance.py -v``.
"""
import csv
import json
import math
import os
import time
from pathlib import Path

import numpy as np
import pytest
from scipy import integrate

from polarimeter.corpus import load_members
from polarimeter.grouping import kmeans_1d, kmeans_1d_exact, party_summary
from polarimeter.pipeline import RunConfig, read_descriptive, run_pipeline
from polarimeter.sentiment import score_text
from polarimeter.stats import TABLE_PAIRS, TOPICS, rank_policies, run_all_tests, student_t_p

from conftest import FIXTURES

DATASET_ENV = "POLARIMETER_DATASET"


@pytest.fixture
def report(capsys):
    def emit(n, name, ok, detail=""):
        with capsys.disabled():
            status = {True: "PASS", False: "FAIL", None: "SKIP"}[ok]
            print(f"\n[criterion {n}] {status} {name}" + (f": {detail}" if detail else ""))
    return emit


def published_tests():
    stats = read_descriptive(FIXTURES / "published_descriptive.csv")
    return run_all_tests(stats, TABLE_PAIRS, TOPICS)


def test_1_significance_table_from_descriptive(report):
    with open(FIXTURES / "published_ttests.csv", newline="") as fh:
        expected = {(r["topic"], r["pair"]): r for r in csv.DictReader(fh)}
    start = time.perf_counter()
    tests = published_tests()
    elapsed = time.perf_counter() - start
    bad = []
    for t in tests:
        e = expected[(t.topic, t.pair)]
        problems = []
        if t.df != int(e["df"]):
            problems.append(f"df {t.df} vs {e['df']}")
        if abs(t.t - float(e["t"])) > 0.06:
            problems.append(f"t {t.t:.4f} vs {e['t']}")
        if t.stratum != e["stratum"]:
            problems.append(f"{t.stratum} (p={t.p:.6f}) vs {e['stratum']}")
        if problems:
            bad.append(f"{t.topic} / {t.pair}: " + ", ".join(problems))
    ok = len(tests) == 72 and not bad and elapsed < 1.0
    report(1, "72 cells (df exact, |dt|<=0.06, stratum exact)", ok,
           f"{72 - len(bad)}/72 cells match, {elapsed:.3f}s" + ("; " + "; ".join(bad) if bad else ""))
    assert len(tests) == 72
    assert elapsed < 1.0
    assert not bad, "\n".join(bad)


EXPECTED_RANKING = {
    "Gun Control": 6,
    "Immigration and Border Control": 5, "Fossil Fuels": 5, "Ukraine-Russia": 5,
    "Substance Abuse and Mental Health": 5,
    "Abortion": 4, "Climate Change": 4, "Broadband Internet": 4, "CHIPS and Science Act": 4,
    "Chinese Communist Party": 2,
    "Taiwan": 0, "LGBTQ Community": 0,
}


def test_2_polarization_ranking(report):
    ranks = rank_policies(published_tests())
    got = {r.topic: r.n_sig for r in ranks}
    gun = next(r for r in ranks if r.topic == "Gun Control")
    ok = got == EXPECTED_RANKING and gun.n_p001 == 4 and ranks[0].topic == "Gun Control" \
        and {r.topic for r in ranks[-2:]} == {"Taiwan", "LGBTQ Community"}
    report(2, "ranking counts", ok, ", ".join(f"{r.topic}={r.n_sig}" for r in ranks))
    assert got == EXPECTED_RANKING
    assert gun.n_p001 == 4
    assert ranks[0].topic == "Gun Control"


def test_3_sentiment_conformance(report):
    cases = json.loads((FIXTURES / "vader_conformance.json").read_text(encoding="utf-8"))["cases"]
    start = time.perf_counter()
    results = [score_text(c["text"]) for c in cases]
    elapsed = time.perf_counter() - start
    worst = max(abs(r.compound - c["compound"]) for r, c in zip(results, cases))
    sums = [abs(r.neg + r.neu + r.pos - 1) for r, c in zip(results, cases) if c["text"].strip()]
    ok = len(cases) == 200 and worst <= 1e-4 and max(sums) <= 1e-6 and elapsed < 1.0
    report(3, "200-sentence conformance", ok,
           f"max |dcompound|={worst:.2e}, max |sum-1|={max(sums):.1e}, {elapsed:.3f}s")
    assert len(cases) == 200
    assert worst <= 1e-4
    assert max(sums) <= 1e-6
    assert elapsed < 1.0


def _quad_p(t, df):
    def density(x):
        return math.exp(math.lgamma((df + 1) / 2) - math.lgamma(df / 2) - 0.5 * math.log(df * math.pi)
                        - (df + 1) / 2 * math.log1p(x * x / df))
    tail, _ = integrate.quad(density, t, math.inf, epsabs=1e-14, epsrel=1e-13, limit=200)
    return 2 * tail


def test_4_p_value_oracle(report):
    worst = 0.0
    for t in (0, 0.5, 1, 2, 5, 10):
        for df in (1, 2, 10, 100, 3144):
            worst = max(worst, abs(student_t_p(t, df) - _quad_p(t, df)))
    report(4, "student_t_p vs numeric integration", worst <= 1e-8, f"max |dp|={worst:.2e}")
    assert worst <= 1e-8


def test_5_clustering_oracle(report):
    rng = np.random.default_rng(20210101)
    misses = []
    for i in range(50):
        n = int(rng.integers(6, 65))
        k = int(rng.choice([2, 3, 4, 5]))
        x = rng.random(n)
        lloyd, exact = kmeans_1d(x, k).objective, kmeans_1d_exact(x, k).objective
        if abs(lloyd - exact) > 1e-9:
            misses.append(f"#{i} n={n} k={k} lloyd={lloyd:.6f} optimum={exact:.6f}")
    report(5, "Lloyd objective equals the 1-d optimum on 50 instances", not misses,
           f"{50 - len(misses)}/50 match" + ("; first: " + "; ".join(misses[:3]) if misses else ""))
    assert not misses, "\n".join(misses)


def test_6_full_corpus(report, tmp_path):
    root = os.environ.get(DATASET_ENV)
    if not root:
        report(6, "party summaries on the full dataset", None, f"set {DATASET_ENV} to a directory "
               "holding members.csv (and tweets.csv)")
        pytest.skip(f"{DATASET_ENV} not set")
    summary = {s.party: s for s in party_summary(load_members(Path(root) / "members.csv"))}
    dem, rep = summary["Democrat"], summary["Republican"]
    checks = {
        "Democrat mean": abs(dem.mean - 0.28) <= 0.005, "Democrat mode": dem.mode == 0.3,
        "Democrat min": round(dem.min, 2) == 0.0, "Democrat max": round(dem.max, 2) == 0.64,
        "Republican mean": abs(rep.mean - 0.71) <= 0.005, "Republican mode": rep.mode == 0.7,
        "Republican min": round(rep.min, 2) == 0.44, "Republican max": round(rep.max, 2) == 1.0,
    }
    if (Path(root) / "tweets.csv").is_file():
        run_pipeline(RunConfig(members=str(Path(root) / "members.csv"), tweets=str(Path(root) / "tweets.csv"),
                               output_dir=str(tmp_path)))
    failed = [k for k, v in checks.items() if not v]
    report(6, "party summaries on the full dataset", not failed,
           f"Democrat {dem.mean:.3f}/{dem.mode}/{dem.min}/{dem.max}, "
           f"Republican {rep.mean:.3f}/{rep.mode}/{rep.min}/{rep.max}")
    assert not failed, failed


def test_7_property_suites(report, tmp_path):
    import test_ngrams
    import test_sentiment
    import test_stats
    import test_textprep

    suites = {
        "textprep idempotence": test_textprep.test_idempotent,
        "valence odd/bounded/monotone": test_sentiment.test_normalize_valence_properties,
        "n-gram count identity": test_ngrams.test_count_identity,
        "n-gram merge order": test_ngrams.test_merge_order_independent,
        "t-test antisymmetry": test_stats.test_antisymmetry,
    }
    failed = []
    for name, check in suites.items():
        try:
            check()
        except Exception as exc:  # noqa: BLE001 - reported below
            failed.append(f"{name} ({type(exc).__name__})")

    smoke = FIXTURES / "smoke"
    outs = []
    for label, jobs in (("a", 1), ("b", 1), ("c", 4)):
        out = tmp_path / label
        run_pipeline(RunConfig(members=str(smoke / "members.csv"), tweets=str(smoke / "tweets.csv"),
                               output_dir=str(out), jobs=jobs))
        outs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    if not (outs[0] == outs[1] == outs[2]):
        failed.append("end-to-end determinism")
    report(7, "property suites", not failed,
           f"{len(suites) + 1 - len(failed)}/{len(suites) + 1} pass" + (": " + ", ".join(failed) if failed else ""))
    assert not failed, failed
