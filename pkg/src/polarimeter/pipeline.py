"""File-based stages and the end-to-end run.

Every stage reads the previous stage's CSV and writes its own into an
output directory; :func:`run_pipeline` simply chains them, so running
the stages one by one gives the same bytes as a full run. Reals are
written with six significant digits.

Stage files::

    corpus.csv        tweet_id,handle,date,text,retweets,likes
    clean.csv         tweet_id,handle,date,text,clean_text
    sentiment.csv     tweet_id,handle,neg,neu,pos,compound
    ngrams_n{n}.csv   phrase,count
    assignments.csv   tweet_id,topic
    groups.csv        handle,score,cluster,label
    descriptive.csv   topic,group,count,mean,median,std
    ttests.csv        topic,pair,df,t,p,stratum
    ranking.csv       rank,topic,n_sig,n_p001,n_p01,n_p05
"""
from __future__ import annotations

import csv
import dataclasses
import datetime as dt
import functools
import hashlib
import json
import math
import os
import sys
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import corpus as _corpus
from ._version import __version__
from .exceptions import InputError, PolarimeterError, StageError
from .grouping import IdeologyClusterer, _bin, party_summary
from .ngrams import NgramCounter, top_k
from .sentiment import SentimentScorer
from .stats import (SKIPPED, STRATA, DescriptiveStats, PairwiseTest, default_pairs,
                    describe, rank_policies, run_all_tests)
from .textprep import TextNormalizer
from .topics import TopicAssigner

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

CONFIG_ENV = "POLARIMETER_CONFIG"

CORPUS_COLUMNS = ("tweet_id", "handle", "date", "text", "retweets", "likes")
CLEAN_COLUMNS = ("tweet_id", "handle", "date", "text", "clean_text")
SENTIMENT_COLUMNS = ("tweet_id", "handle", "neg", "neu", "pos", "compound")
NGRAM_COLUMNS = ("phrase", "count")
ASSIGNMENT_COLUMNS = ("tweet_id", "topic")
GROUP_COLUMNS = ("handle", "score", "cluster", "label")
DESCRIPTIVE_COLUMNS = ("topic", "group", "count", "mean", "median", "std")
TTEST_COLUMNS = ("topic", "pair", "df", "t", "p", "stratum")
RANKING_COLUMNS = ("rank", "topic", "n_sig", "n_p001", "n_p01", "n_p05")

SENTIMENT_KEYS = tuple(k for k in SentimentScorer._get_param_names() if k != "lexicon")


# Formatting and CSV helpers -------------------------------------------------

def fmt(x) -> str:
    """Six significant digits; ``None`` is an empty cell and -0 prints as 0."""
    if x is None:
        return ""
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    x = float(x)
    if x == 0:
        return "0"
    return format(x, ".6g")


def _write_csv(path: Path, columns: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)


def _read_csv(path, columns: Sequence[str]) -> list[dict[str, str]]:
    path = Path(path)
    if not path.is_file():
        raise InputError(f"file not found: {path}")
    with open(path, encoding="utf-8-sig", newline="") as fh:
        reader = csv.reader(fh, strict=True)
        try:
            header = next(reader, None)
            if header is None or tuple(header) != tuple(columns):
                raise InputError(f"{path}: expected header {','.join(columns)}")
            rows = []
            for i, row in enumerate(reader, start=1):
                if len(row) != len(columns):
                    raise InputError(f"{path}: expected {len(columns)} columns at row {i}, got {len(row)}")
                rows.append(dict(zip(columns, row)))
        except csv.Error as exc:
            raise InputError(f"{path}: malformed CSV ({exc})")
    return rows


def _number(row: dict, key: str, path, kind=float):
    try:
        return kind(row[key])
    except ValueError:
        raise InputError(f"{path}: bad {key} value {row[key]!r}")


def _pmap(fn: Callable[[list], list], items: list, jobs: int) -> list:
    """Apply ``fn`` to contiguous chunks, concatenating results in order."""
    if jobs <= 1 or len(items) < 2:
        return fn(items)
    size = math.ceil(len(items) / jobs)
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return [x for part in pool.map(fn, chunks) for x in part]


def _stage(name: str):
    """Re-raise input and value errors raised inside a stage as :class:`StageError`."""
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            try:
                return fn(*args, **kwargs)
            except StageError:
                raise
            except (PolarimeterError, ValueError, OSError) as exc:
                raise StageError(name, str(exc)) from exc
        return inner
    return wrap


def _out(out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


# Stages ---------------------------------------------------------------------

@_stage("ingest")
def stage_ingest(members, tweets, out_dir, start=None, end=None) -> dict:
    """Join roster and tweets, keep the date window, write ``corpus.csv``."""
    start = start or _corpus.DEFAULT_WINDOW[0]
    end = end or _corpus.DEFAULT_WINDOW[1]
    if start > end:
        raise InputError(f"window start {start} is after end {end}")
    roster = _corpus.load_members(members)
    joined = _corpus.join(roster, _corpus.load_tweets(tweets), (start, end))
    _write_csv(_out(out_dir) / "corpus.csv", CORPUS_COLUMNS, (
        (t.tweet_id, t.handle, t.timestamp.isoformat(), t.text, t.retweets, t.likes)
        for t in joined.tweets))
    return {"ingested": joined.input_count, "kept": len(joined.tweets),
            "dropped_unknown_author": joined.dropped_unknown_author,
            "dropped_out_of_window": joined.dropped_out_of_window,
            "members": len(roster)}


@_stage("prep")
def stage_prep(corpus_csv, out_dir, contractions=None, drop_mentions=False, jobs=1) -> dict:
    """Normalize message text into ``clean.csv``."""
    rows = _read_csv(corpus_csv, CORPUS_COLUMNS)
    norm = TextNormalizer(contractions, drop_mentions).fit()
    clean = _pmap(lambda chunk: norm.transform([r["text"] for r in chunk]), rows, jobs)
    _write_csv(_out(out_dir) / "clean.csv", CLEAN_COLUMNS, (
        (r["tweet_id"], r["handle"], r["date"], r["text"], c) for r, c in zip(rows, clean)))
    return {"cleaned": len(rows)}


@_stage("sentiment")
def stage_sentiment(clean_csv, out_dir, lexicon=None, constants=None, score_raw=False, jobs=1) -> dict:
    """Score each message; cleaned text by default, raw text with ``score_raw``."""
    if lexicon is not None and not Path(lexicon).is_file():
        raise InputError(f"lexicon file not found: {lexicon}")
    unknown = set(constants or {}) - set(SENTIMENT_KEYS)
    if unknown:
        raise InputError(f"unknown sentiment constants: {', '.join(sorted(unknown))}")
    rows = _read_csv(clean_csv, CLEAN_COLUMNS)
    scorer = SentimentScorer(lexicon=lexicon, **(constants or {})).fit()
    field = "text" if score_raw else "clean_text"
    scores = _pmap(lambda chunk: list(scorer.transform([r[field] for r in chunk])), rows, jobs)
    _write_csv(_out(out_dir) / "sentiment.csv", SENTIMENT_COLUMNS, (
        (r["tweet_id"], r["handle"], *(fmt(v) for v in s)) for r, s in zip(rows, scores)))
    return {"scored": len(rows)}


@_stage("ngrams")
def stage_ngrams(clean_csv, out_dir, n=1, top=50, stopwords=True) -> dict:
    """Write the ``top`` most frequent n-grams to ``ngrams_n{n}.csv``."""
    rows = _read_csv(clean_csv, CLEAN_COLUMNS)
    counter = NgramCounter(n=n, stopwords=stopwords).fit([r["clean_text"] for r in rows])
    _write_csv(_out(out_dir) / f"ngrams_n{n}.csv", NGRAM_COLUMNS, top_k(counter.table_, top))
    return {f"distinct_n{n}": len(counter.table_.counts)}


@_stage("topics")
def stage_topics(clean_csv, out_dir, config=None, jobs=1) -> dict:
    """Write one ``assignments.csv`` row per matching (message, topic)."""
    assigner = TopicAssigner(config).fit()
    rows = _read_csv(clean_csv, CLEAN_COLUMNS)
    sets = _pmap(lambda chunk: assigner.assign([r["clean_text"] for r in chunk]), rows, jobs)
    out_rows = [(r["tweet_id"], name) for r, s in zip(rows, sets)
                for name in assigner.topics_ if name in s]
    _write_csv(_out(out_dir) / "assignments.csv", ASSIGNMENT_COLUMNS, out_rows)
    matched = Counter(name for _, name in out_rows)
    return {"topic_matches": {name: matched.get(name, 0) for name in assigner.topics_}}


@_stage("cluster")
def stage_cluster(members, out_dir, k=5, tol=1e-9, max_iter=200) -> dict:
    """Cluster roster scores and write ``groups.csv`` in roster order."""
    roster = _corpus.load_members(members)
    scores = [m.ideology_score for m in roster]
    model = IdeologyClusterer(n_clusters=k, tol=tol, max_iter=max_iter).fit(scores)
    idx = model.labels_
    _write_csv(_out(out_dir) / "groups.csv", GROUP_COLUMNS, (
        (m.handle, fmt(m.ideology_score), int(i), model.group_names_[i]) for m, i in zip(roster, idx)))
    sizes = Counter(int(i) for i in idx)
    return {"group_sizes": {name: sizes.get(i, 0) for i, name in enumerate(model.group_names_)},
            "centroids": [float(fmt(c)) for c in model.model_.centroids],
            "lloyd_iterations": model.model_.n_iter}


def _write_tests(out: Path, tests) -> dict:
    _write_csv(out / "ttests.csv", TTEST_COLUMNS, (
        (t.topic, t.pair, fmt(t.df), fmt(t.t), fmt(t.p), t.stratum) for t in tests))
    return {"tests": len(tests), "skipped": sum(t.skipped for t in tests),
            "significant": sum(t.significant for t in tests)}


@_stage("analyze")
def stage_analyze(sentiment_csv, assignments_csv, groups_csv, out_dir, topics=None,
                  include_centrist=False, welch=False) -> dict:
    """Describe every (topic, group) sample and run the pairwise t-tests.

    Topics follow the topic configuration order; only topics with at
    least one scored message are tested.
    """
    sent = _read_csv(sentiment_csv, SENTIMENT_COLUMNS)
    compound = {r["tweet_id"]: _number(r, "compound", sentiment_csv) for r in sent}
    author = {r["tweet_id"]: _corpus.normalize_handle(r["handle"]) for r in sent}
    groups = _read_csv(groups_csv, GROUP_COLUMNS)
    label_of = {_corpus.normalize_handle(g["handle"]): g["label"] for g in groups}
    cluster_order = {}
    for g in groups:
        cluster_order.setdefault(g["label"], _number(g, "cluster", groups_csv, int))
    group_order = sorted(cluster_order, key=cluster_order.get)

    topic_order = list(TopicAssigner(topics).fit().topics_)
    samples: dict[tuple[str, str], list[float]] = defaultdict(list)
    for r in _read_csv(assignments_csv, ASSIGNMENT_COLUMNS):
        tid = r["tweet_id"]
        if tid not in compound:
            raise InputError(f"{assignments_csv}: tweet_id {tid} has no sentiment score")
        label = label_of.get(author[tid])
        if label is None:
            raise InputError(f"{groups_csv}: no group for handle {author[tid]!r}")
        if r["topic"] not in topic_order:
            topic_order.append(r["topic"])
        samples[(r["topic"], label)].append(compound[tid])

    stats = {key: describe(v) for key, v in samples.items()}
    out = _out(out_dir)
    _write_descriptive(out, stats, topic_order, group_order)
    present = [t for t in topic_order if any(key[0] == t for key in stats)]
    tests = run_all_tests(stats, default_pairs(group_order, include_centrist), present, welch)
    return _write_tests(out, tests)


def _write_descriptive(out: Path, stats: dict, topic_order, group_order) -> None:
    rows = []
    for topic in topic_order:
        for group in group_order:
            s = stats.get((topic, group))
            if s is not None:
                rows.append((topic, group, s.count, fmt(s.mean), fmt(s.median),
                             fmt(s.std) if s.std_defined else ""))
    _write_csv(out / "descriptive.csv", DESCRIPTIVE_COLUMNS, rows)


def read_descriptive(path) -> dict[tuple[str, str], DescriptiveStats]:
    """Load ``descriptive.csv`` as a mapping keyed by ``(topic, group)``, in file order."""
    out = {}
    for r in _read_csv(path, DESCRIPTIVE_COLUMNS):
        count = _number(r, "count", path, int)
        median = _number(r, "median", path) if r["median"] else float("nan")
        std = _number(r, "std", path) if r["std"] else 0.0
        out[(r["topic"], r["group"])] = DescriptiveStats(
            count, _number(r, "mean", path), median, std, bool(r["std"]) and count >= 2)
    return out


@_stage("analyze")
def stage_analyze_descriptive(descriptive_csv, out_dir, include_centrist=False, welch=False) -> dict:
    """t-tests straight from summary statistics, without message-level data."""
    stats = read_descriptive(descriptive_csv)
    topics = list(dict.fromkeys(t for t, _ in stats))
    groups = list(dict.fromkeys(g for _, g in stats))
    tests = run_all_tests(stats, default_pairs(groups, include_centrist), topics, welch)
    return _write_tests(_out(out_dir), tests)


@_stage("rank")
def stage_rank(ttests_csv, out_dir) -> dict:
    """Rank topics by significant pair count; input row order does not matter."""
    tests = []
    for r in _read_csv(ttests_csv, TTEST_COLUMNS):
        if r["stratum"] not in STRATA + (SKIPPED,):
            raise InputError(f"{ttests_csv}: unknown stratum {r['stratum']!r}")
        tests.append(PairwiseTest(r["topic"], r["pair"], "", "", None, None, None, r["stratum"]))
    ranks = rank_policies(tests)
    _write_csv(_out(out_dir) / "ranking.csv", RANKING_COLUMNS, (
        (i, r.topic, r.n_sig, r.n_p001, r.n_p01, r.n_p05) for i, r in enumerate(ranks, start=1)))
    return {"ranked_topics": len(ranks)}


# Full run -------------------------------------------------------------------

def _date(value, key: str) -> dt.date:
    if isinstance(value, dt.date):
        return value
    try:
        return dt.date.fromisoformat(str(value))
    except ValueError:
        raise InputError(f"{key} must be an ISO date (YYYY-MM-DD), got {value!r}")


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Everything a full run needs.

    ``output_dir`` and ``jobs`` do not affect results and are left out of
    the manifest's config echo.
    """

    members: str | None = None
    tweets: str | None = None
    output_dir: str = "polarimeter-out"
    lexicon: str | None = None
    topics: str | None = None
    contractions: str | None = None
    start: dt.date = _corpus.DEFAULT_WINDOW[0]
    end: dt.date = _corpus.DEFAULT_WINDOW[1]
    k: int = 5
    tol: float = 1e-9
    max_iter: int = 200
    sentiment: dict = dataclasses.field(default_factory=dict)
    score_raw: bool = False
    drop_mentions: bool = False
    stopwords: bool = True
    ngram_sizes: tuple = (1, 2, 3, 4)
    top: int = 50
    include_centrist: bool = False
    welch: bool = False
    jobs: int = 1

    _PATHS = ("members", "tweets", "output_dir", "lexicon", "topics", "contractions")

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        """Read a TOML run file; relative paths resolve against its directory."""
        path = Path(path)
        if not path.is_file():
            raise InputError(f"config file not found: {path}")
        try:
            with open(path, "rb") as fh:
                doc = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise InputError(f"{path}: {exc}")
        fields = {f.name for f in dataclasses.fields(cls)}
        unknown = set(doc) - fields
        if unknown:
            raise InputError(f"{path}: unknown config keys: {', '.join(sorted(unknown))}")
        for key in cls._PATHS:
            if doc.get(key) is not None:
                doc[key] = str(path.parent / doc[key])
        return cls().replace(**doc)

    def replace(self, **changes) -> "RunConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        for key in ("start", "end"):
            if key in changes:
                changes[key] = _date(changes[key], key)
        if "ngram_sizes" in changes:
            changes["ngram_sizes"] = tuple(changes["ngram_sizes"])
        if "sentiment" in changes:
            changes["sentiment"] = {**self.sentiment, **changes["sentiment"]}
        return dataclasses.replace(self, **changes)

    def echo(self) -> dict:
        d = dataclasses.asdict(self)
        for key in ("output_dir", "jobs"):
            d.pop(key)
        d["start"], d["end"] = self.start.isoformat(), self.end.isoformat()
        d["ngram_sizes"] = list(self.ngram_sizes)
        return d


@dataclasses.dataclass
class RunManifest:
    config: dict
    inputs: dict
    counts: dict
    outputs: dict
    version: str = __version__

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def _dump_json(obj, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")


def _check_inputs(cfg: RunConfig) -> dict:
    needed = [("ingest", "members", cfg.members), ("ingest", "tweets", cfg.tweets)]
    for stage, key in (("prep", "contractions"), ("sentiment", "lexicon"), ("topics", "topics")):
        if getattr(cfg, key) is not None:
            needed.append((stage, key, getattr(cfg, key)))
    digests = {}
    for stage, key, value in needed:
        if value is None:
            raise StageError(stage, f"no {key} file configured")
        if not Path(value).is_file():
            raise StageError(stage, f"{key} file not found: {value}")
        digests[key] = _sha256(value)
    return digests


def _plotdata(out: Path, members_path) -> dict:
    means = defaultdict(dict)
    for (topic, group), s in read_descriptive(out / "descriptive.csv").items():
        means[topic][group] = s.mean
    roster = _corpus.load_members(members_path)
    hist = defaultdict(Counter)
    for m in roster:
        hist[m.party][str(_bin(m.ideology_score))] += 1
    summary = {s.party: {"count": s.count, "mean": float(fmt(s.mean)), "mode": s.mode,
                         "min": s.min, "max": s.max, "range": float(fmt(s.range))}
               for s in party_summary(roster)}
    return {"topic_group_mean_sentiment": means,
            "party_score_histogram": {p: dict(c) for p, c in hist.items()},
            "party_summary": summary}


def run_pipeline(config: RunConfig) -> RunManifest:
    """Run every stage into ``config.output_dir`` and write the manifest.

    Raises
    ------
    StageError
        Naming the stage that failed.
    """
    cfg = config
    inputs = _check_inputs(cfg)
    try:
        out = _out(cfg.output_dir)
    except OSError as exc:
        raise StageError("ingest", f"cannot create output directory: {exc}")
    counts = {"ingest": stage_ingest(cfg.members, cfg.tweets, out, cfg.start, cfg.end)}
    counts["prep"] = stage_prep(out / "corpus.csv", out, cfg.contractions, cfg.drop_mentions, cfg.jobs)
    counts["sentiment"] = stage_sentiment(out / "clean.csv", out, cfg.lexicon, cfg.sentiment,
                                          cfg.score_raw, cfg.jobs)
    counts["ngrams"] = {}
    for n in cfg.ngram_sizes:
        counts["ngrams"].update(stage_ngrams(out / "clean.csv", out, n, cfg.top, cfg.stopwords))
    counts["topics"] = stage_topics(out / "clean.csv", out, cfg.topics, cfg.jobs)
    counts["cluster"] = stage_cluster(cfg.members, out, cfg.k, cfg.tol, cfg.max_iter)
    counts["analyze"] = stage_analyze(out / "sentiment.csv", out / "assignments.csv", out / "groups.csv",
                                      out, cfg.topics, cfg.include_centrist, cfg.welch)
    counts["rank"] = stage_rank(out / "ttests.csv", out)
    _dump_json(_plotdata(out, cfg.members), out / "plotdata.json")

    outputs = ["corpus.csv", "clean.csv", "sentiment.csv",
               *(f"ngrams_n{n}.csv" for n in cfg.ngram_sizes), "assignments.csv", "groups.csv",
               "descriptive.csv", "ttests.csv", "ranking.csv", "plotdata.json"]
    manifest = RunManifest(cfg.echo(), inputs, counts, {name: _sha256(out / name) for name in outputs})
    _dump_json(manifest.to_dict(), out / "manifest.json")
    return manifest


def config_from_env() -> RunConfig | None:
    path = os.environ.get(CONFIG_ENV)
    return RunConfig.from_file(path) if path else None
