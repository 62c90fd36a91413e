"""Ideological grouping of members by one-dimensional k-means."""
from __future__ import annotations

import bisect
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_scores
from .corpus import PARTIES, MemberRecord

FIVE_GROUPS = ("Far Left", "Left Centrist", "Centrist", "Right Centrist", "Far Right")
FOUR_GROUPS = ("Far Left", "Left Centrist", "Right Centrist", "Far Right")


def default_labels(k: int) -> tuple[str, ...]:
    if k == 5:
        return FIVE_GROUPS
    if k == 4:
        return FOUR_GROUPS
    return tuple(f"Cluster {i + 1}" for i in range(k))


@dataclass(frozen=True)
class ClusterModel:
    """Sorted centroids of a 1-d clustering.

    ``history`` holds the objective after each Lloyd update (empty for
    the exact solver).
    """

    centroids: tuple[float, ...]
    objective: float = float("nan")
    n_iter: int = 0
    history: tuple[float, ...] = field(default=(), repr=False)

    def __post_init__(self):
        c = self.centroids
        if not c:
            raise ValueError("a cluster model needs at least one centroid")
        if any(b <= a for a, b in zip(c, c[1:])):
            raise ValueError("centroids must be strictly ascending")

    @property
    def k(self) -> int:
        return len(self.centroids)

    @property
    def boundaries(self) -> tuple[float, ...]:
        c = self.centroids
        return tuple((a + b) / 2 for a, b in zip(c, c[1:]))

    def predict(self, scores) -> np.ndarray:
        # side="left": a score exactly on a boundary goes to the lower cluster
        return np.searchsorted(np.asarray(self.boundaries), np.asarray(scores, dtype=float), side="left")


def kmeans_objective(scores, centroids: Sequence[float]) -> float:
    """Sum of squared distances from each score to its nearest centroid."""
    x = np.asarray(scores, dtype=float)
    c = np.asarray(centroids, dtype=float)
    b = (c[:-1] + c[1:]) / 2
    idx = np.searchsorted(b, x, side="left")
    return float(np.sum((x - c[idx]) ** 2))



def _check_k(x: np.ndarray, k: int) -> None:
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if np.unique(x).size < k:
        raise ValueError(f"insufficient distinct scores: need {k}, have {np.unique(x).size}")


def kmeans_1d(scores, k: int, max_iter: int = 200, tol: float = 1e-9) -> ClusterModel:
    """Lloyd's algorithm from quantile initialization.

    Centroid ``i`` starts at the ``(2i + 1) / (2k)`` quantile of the
    scores (of the distinct scores if that produces ties). Iteration
    stops when assignments no longer change or no centroid moves by
    ``tol`` or more. A cluster that empties is re-seeded at the point
    farthest from its centroid.

    Raises
    ------
    ValueError
        If there are fewer distinct scores than ``k``.
    """
    x = np.sort(check_scores(scores))
    _check_k(x, k)
    q = (2 * np.arange(k) + 1) / (2 * k)
    c = np.quantile(x, q)
    if np.unique(c).size < k:
        c = np.quantile(np.unique(x), q)

    labels = None
    history = []
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        new = np.searchsorted((c[:-1] + c[1:]) / 2, x, side="left")
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        updated = c.copy()
        for j in range(k):
            members = x[labels == j]
            if members.size:
                updated[j] = members.mean()
        empty = [j for j in range(k) if not np.any(labels == j)]
        for j in empty:
            far = int(np.argmax(np.abs(x - updated[labels])))
            updated[j] = x[far]
            labels = labels.copy()
            labels[far] = j
        shift = float(np.max(np.abs(updated - c)))
        c = np.sort(updated)
        history.append(kmeans_objective(x, c))
        if shift < tol:
            break
    return ClusterModel(tuple(float(v) for v in c), kmeans_objective(x, c), n_iter, tuple(history))


def kmeans_1d_exact(scores, k: int) -> ClusterModel:
    """Globally optimal 1-d k-means by dynamic programming over contiguous splits.

    ``O(k n^2)``; intended for small inputs and as a reference for
    :func:`kmeans_1d`.
    """
    x = np.sort(check_scores(scores))
    _check_k(x, k)
    n = x.size
    ps = np.concatenate([[0.0], np.cumsum(x)])
    pq = np.concatenate([[0.0], np.cumsum(x * x)])

    def cost(i, j):  # points x[i:j]
        s = ps[j] - ps[i]
        return max(0.0, (pq[j] - pq[i]) - s * s / (j - i))

    inf = float("inf")
    best = [[inf] * (n + 1) for _ in range(k + 1)]
    split = [[0] * (n + 1) for _ in range(k + 1)]
    best[0][0] = 0.0
    for m in range(1, k + 1):
        for j in range(m, n + 1):
            for i in range(m - 1, j):
                v = best[m - 1][i] + cost(i, j)
                if v < best[m][j]:
                    best[m][j], split[m][j] = v, i
    bounds = []
    j = n
    for m in range(k, 0, -1):
        i = split[m][j]
        bounds.append((i, j))
        j = i
    centroids = sorted(float(x[i:j].mean()) for i, j in bounds)
    return ClusterModel(tuple(centroids), float(best[k][n]))


def assign_group(score: float, model: ClusterModel, labels: Sequence[str]) -> str:
    """Label of the nearest centroid; exact midpoints go to the left cluster."""
    if len(labels) != model.k:
        raise ValueError(f"need {model.k} labels, got {len(labels)}")
    return labels[bisect.bisect_left(model.boundaries, score)]


@dataclass(frozen=True)
class PartySummary:
    party: str
    count: int
    mean: float
    mode: float
    min: float
    max: float

    @property
    def range(self) -> float:
        return self.max - self.min


def _bin(score: float) -> Decimal:
    return Decimal(repr(score)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)


def party_summary(members: Sequence[MemberRecord]) -> list[PartySummary]:
    """Score statistics per party; the mode is taken over 0.1-wide bins (ties: lower bin)."""
    by_party = defaultdict(list)
    for m in members:
        by_party[m.party].append(m.ideology_score)
    out = []
    for party in sorted(by_party, key=lambda p: (PARTIES.index(p) if p in PARTIES else len(PARTIES), p)):
        scores = by_party[party]
        bins = Counter(_bin(s) for s in scores)
        mode = min(bins, key=lambda b: (-bins[b], b))
        out.append(PartySummary(party, len(scores), float(np.mean(scores)), float(mode),
                                min(scores), max(scores)))
    return out


class IdeologyClusterer(ClusterMixin, BaseEstimator):
    """Cluster ideology scores and name the clusters left to right.

    Parameters
    ----------
    n_clusters : int, default=5
    max_iter : int, default=200
    tol : float, default=1e-9
    labels : sequence of str, optional
        Names in ascending-centroid order; defaults to the five (or four)
        Far Left .. Far Right groups.
    algorithm : {"lloyd", "exact"}, default="lloyd"
        ``"exact"`` uses the dynamic-programming optimum.

    Attributes
    ----------
    model_ : ClusterModel
    cluster_centers_ : ndarray of shape (n_clusters, 1)
    labels_ : ndarray of int
        Cluster index of each training score.
    group_names_ : tuple of str
    """

    def __init__(self, n_clusters=5, max_iter=200, tol=1e-9, labels=None, algorithm="lloyd"):
        self.n_clusters = n_clusters
        self.max_iter = max_iter
        self.tol = tol
        self.labels = labels
        self.algorithm = algorithm

    def fit(self, X, y=None):
        x = check_scores(X)
        if self.algorithm == "lloyd":
            model = kmeans_1d(x, self.n_clusters, self.max_iter, self.tol)
        elif self.algorithm == "exact":
            model = kmeans_1d_exact(x, self.n_clusters)
        else:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        names = tuple(self.labels) if self.labels is not None else default_labels(self.n_clusters)
        if len(names) != self.n_clusters:
            raise ValueError(f"need {self.n_clusters} labels, got {len(names)}")
        self.model_ = model
        self.group_names_ = names
        self.cluster_centers_ = np.asarray(model.centroids).reshape(-1, 1)
        self.labels_ = model.predict(x)
        return self

    def predict(self, X):
        check_is_fitted(self, "model_")
        return self.model_.predict(check_scores(X))

    def predict_group(self, X) -> list[str]:
        return [self.group_names_[i] for i in self.predict(X)]
