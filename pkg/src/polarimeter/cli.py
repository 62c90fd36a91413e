"""Command-line entry point: ``polarimeter <stage> ...`` or ``polarimeter run``.

Exit codes: 0 success, 1 usage error, 2 input or stage error.
"""
from __future__ import annotations

import argparse
import datetime as dt
import sys

from . import pipeline
from ._version import __version__
from .exceptions import PolarimeterError, StageError

EXIT_OK, EXIT_USAGE, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _date(value: str) -> dt.date:
    try:
        return dt.date.fromisoformat(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got {value!r}")


def _ngram_n(value: str) -> int:
    n = int(value)
    if not 1 <= n <= 4:
        raise argparse.ArgumentTypeError("n must be between 1 and 4")
    return n


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _nonneg(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _add_out(p):
    p.add_argument("--out", default=".", metavar="DIR", help="output directory (default: current)")


def _add_jobs(p):
    p.add_argument("--jobs", type=_positive, default=None, help="worker threads")


def _add_sentiment(p):
    p.add_argument("--lexicon", help="tab-delimited lexicon file (default: bundled)")
    p.add_argument("--score-raw", action="store_true", default=None,
                   help="score unnormalized message text")
    for key in pipeline.SENTIMENT_KEYS:
        p.add_argument(f"--{key.replace('_', '-')}", dest=key, type=float, default=None,
                       help=argparse.SUPPRESS)


def _add_window(p):
    p.add_argument("--start", type=_date, help="first date kept (inclusive)")
    p.add_argument("--end", type=_date, help="last date kept (inclusive)")


def _add_cluster(p):
    p.add_argument("--k", type=_positive, default=None, help="number of groups (default 5)")
    p.add_argument("--tol", type=float, default=None, help="centroid shift tolerance")
    p.add_argument("--max-iter", type=_positive, default=None, help="Lloyd iteration cap")


def _add_analysis(p):
    p.add_argument("--include-centrist", action="store_true", default=None,
                   help="also compare the Centrist group")
    p.add_argument("--welch", action="store_true", default=None,
                   help="unequal-variance t-tests (sensitivity analysis)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polarimeter", description="Sentiment polarization analysis of legislators' messages.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("ingest", help="join roster and tweets into corpus.csv")
    p.add_argument("--members", required=True)
    p.add_argument("--tweets", required=True)
    _add_window(p)
    _add_out(p)

    p = sub.add_parser("prep", help="normalize text into clean.csv")
    p.add_argument("corpus", help="corpus.csv")
    p.add_argument("--contractions", help="contraction,expansion CSV (default: built-in)")
    p.add_argument("--drop-mentions", action="store_true", help="remove @mentions entirely")
    _add_jobs(p)
    _add_out(p)

    p = sub.add_parser("sentiment", help="score clean.csv into sentiment.csv")
    p.add_argument("clean", help="clean.csv")
    _add_sentiment(p)
    _add_jobs(p)
    _add_out(p)

    p = sub.add_parser("ngrams", help="top n-grams of clean.csv")
    p.add_argument("clean", help="clean.csv")
    p.add_argument("--n", type=_ngram_n, default=1)
    p.add_argument("--top", type=_nonneg, default=50)
    p.add_argument("--no-stopwords", action="store_true", help="keep stopwords")
    _add_out(p)

    p = sub.add_parser("topics", help="assign topics into assignments.csv")
    p.add_argument("clean", help="clean.csv")
    p.add_argument("--config", help="topic TOML file (default: bundled)")
    _add_jobs(p)
    _add_out(p)

    p = sub.add_parser("cluster", help="group members into groups.csv")
    p.add_argument("members", help="members.csv")
    _add_cluster(p)
    _add_out(p)

    p = sub.add_parser("analyze", help="descriptive statistics and t-tests")
    p.add_argument("--sentiment", help="sentiment.csv")
    p.add_argument("--assignments", help="assignments.csv")
    p.add_argument("--groups", help="groups.csv")
    p.add_argument("--topics", help="topic TOML file, for topic order (default: bundled)")
    p.add_argument("--from-descriptive", metavar="CSV",
                   help="run the t-tests from a descriptive.csv instead")
    _add_analysis(p)
    _add_out(p)

    p = sub.add_parser("rank", help="rank topics from ttests.csv")
    p.add_argument("ttests", help="ttests.csv")
    _add_out(p)

    p = sub.add_parser("run", help="run every stage")
    p.add_argument("--config", help=f"TOML run config (default: ${pipeline.CONFIG_ENV})")
    p.add_argument("--members")
    p.add_argument("--tweets")
    p.add_argument("--out", dest="output_dir", metavar="DIR")
    p.add_argument("--topics", help="topic TOML file")
    p.add_argument("--contractions")
    p.add_argument("--drop-mentions", action="store_true", default=None)
    p.add_argument("--no-stopwords", dest="stopwords", action="store_false", default=None)
    p.add_argument("--n", dest="ngram_sizes", type=_ngram_n, action="append",
                   help="n-gram size (repeatable; default 1-4)")
    p.add_argument("--top", type=_nonneg)
    _add_window(p)
    _add_sentiment(p)
    _add_cluster(p)
    _add_analysis(p)
    _add_jobs(p)
    return parser


def _run(args, parser) -> dict:
    cmd = args.command
    if cmd == "ingest":
        return pipeline.stage_ingest(args.members, args.tweets, args.out, args.start, args.end)
    if cmd == "prep":
        return pipeline.stage_prep(args.corpus, args.out, args.contractions, args.drop_mentions, args.jobs or 1)
    if cmd == "sentiment":
        constants = {k: getattr(args, k) for k in pipeline.SENTIMENT_KEYS if getattr(args, k) is not None}
        return pipeline.stage_sentiment(args.clean, args.out, args.lexicon, constants,
                                        bool(args.score_raw), args.jobs or 1)
    if cmd == "ngrams":
        return pipeline.stage_ngrams(args.clean, args.out, args.n, args.top, not args.no_stopwords)
    if cmd == "topics":
        return pipeline.stage_topics(args.clean, args.out, args.config, args.jobs or 1)
    if cmd == "cluster":
        return pipeline.stage_cluster(args.members, args.out, args.k or 5,
                                      1e-9 if args.tol is None else args.tol, args.max_iter or 200)
    if cmd == "analyze":
        flags = dict(include_centrist=bool(args.include_centrist), welch=bool(args.welch))
        if args.from_descriptive:
            if args.sentiment or args.assignments or args.groups:
                parser.error("--from-descriptive cannot be combined with --sentiment/--assignments/--groups")
            return pipeline.stage_analyze_descriptive(args.from_descriptive, args.out, **flags)
        if not (args.sentiment and args.assignments and args.groups):
            parser.error("analyze needs --sentiment, --assignments and --groups (or --from-descriptive)")
        return pipeline.stage_analyze(args.sentiment, args.assignments, args.groups, args.out,
                                      args.topics, **flags)
    if cmd == "rank":
        return pipeline.stage_rank(args.ttests, args.out)
    if cmd == "run":
        cfg = pipeline.RunConfig.from_file(args.config) if args.config else pipeline.config_from_env()
        cfg = cfg or pipeline.RunConfig()
        overrides = {k: getattr(args, k) for k in (
            "members", "tweets", "output_dir", "topics", "contractions", "lexicon", "start", "end",
            "k", "tol", "max_iter", "score_raw", "drop_mentions", "stopwords", "ngram_sizes", "top",
            "include_centrist", "welch", "jobs")}
        constants = {k: getattr(args, k) for k in pipeline.SENTIMENT_KEYS if getattr(args, k) is not None}
        cfg = cfg.replace(**overrides, sentiment=constants or None)
        return pipeline.run_pipeline(cfg).counts
    raise AssertionError(cmd)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        counts = _run(args, parser)
    except StageError as exc:
        print(f"polarimeter: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PolarimeterError as exc:
        # raised outside any stage, e.g. while reading the run config
        print(f"polarimeter: error: [config] {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"{args.command}: ok {counts}" if counts else f"{args.command}: ok")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
