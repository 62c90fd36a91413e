"""Sentiment polarization analysis of legislators' social media messages.

Each stage is usable on its own through sklearn-style estimators
(:class:`TextNormalizer`, :class:`SentimentScorer`, :class:`NgramCounter`,
:class:`TopicAssigner`, :class:`IdeologyClusterer`) or as a file-to-file
stage in :mod:`polarimeter.pipeline`.
"""
from ._version import __version__
from .corpus import Corpus, MemberRecord, TweetRecord, join, load_members, load_tweets
from .exceptions import DegenerateVarianceError, InputError, PolarimeterError, StageError
from .grouping import ClusterModel, IdeologyClusterer, assign_group, kmeans_1d, kmeans_1d_exact, party_summary
from .ngrams import NgramCounter, extract_ngrams, top_k
from .pipeline import RunConfig, run_pipeline
from .sentiment import RuleConstants, SentimentResult, SentimentScorer, normalize_valence, score_text
from .stats import (DescriptiveStats, PairwiseTest, PolarizationRank, describe, pooled_t_test,
                    rank_policies, run_all_tests, student_t_p, welch_t_test)
from .textprep import TextNormalizer, normalize_text
from .topics import TopicAssigner, TopicSpec, assign_topics, load_topic_config

__all__ = [
    "__version__",
    "ClusterModel", "Corpus", "DegenerateVarianceError", "DescriptiveStats", "IdeologyClusterer",
    "InputError", "MemberRecord", "NgramCounter", "PairwiseTest", "PolarimeterError",
    "PolarizationRank", "RuleConstants", "RunConfig", "SentimentResult", "SentimentScorer",
    "StageError", "TextNormalizer", "TopicAssigner", "TopicSpec", "TweetRecord",
    "assign_group", "assign_topics", "describe", "extract_ngrams", "join", "kmeans_1d",
    "kmeans_1d_exact", "load_members", "load_topic_config", "load_tweets", "normalize_text",
    "normalize_valence", "party_summary", "pooled_t_test", "rank_policies", "run_all_tests",
    "run_pipeline", "score_text", "student_t_p", "top_k", "welch_t_test",
]
