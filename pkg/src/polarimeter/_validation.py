"""Input checks shared by the estimators."""
from __future__ import annotations

import numpy as np


def check_texts(X) -> list[str]:
    """Coerce a 1-d collection of strings to a list, rejecting anything else."""
    if isinstance(X, str):
        raise TypeError("expected a sequence of strings, got a single string")
    if isinstance(X, np.ndarray):
        if X.ndim != 1:
            raise ValueError(f"expected a 1-d array of strings, got shape {X.shape}")
        X = X.tolist()
    texts = list(X)
    for i, t in enumerate(texts):
        if not isinstance(t, str):
            raise TypeError(f"element {i} is {type(t).__name__}, expected str")
    return texts


def check_scores(X, *, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
    """Return ``X`` as a 1-d float array with values in ``[lo, hi]``.

    A column vector of shape ``(n, 1)`` is accepted and flattened, so the
    clusterers work on the usual ``X`` layout as well as on plain lists.
    """
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"expected 1-d scores or an (n, 1) array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("scores must be finite")
    if arr.size and (arr.min() < lo or arr.max() > hi):
        raise ValueError(f"scores must lie in [{lo}, {hi}]")
    return arr
