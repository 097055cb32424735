"""Input validation shared by the decoders and estimators."""
from __future__ import annotations

from enum import Enum

import numpy as np


class Variant(str, Enum):
    """Where the MIDDLE split word goes: right daughter (R) or left (L)."""

    R = "R"
    L = "L"


class TieRule(str, Enum):
    LEFTMOST = "leftmost"
    RIGHTMOST = "rightmost"


def check_variant(variant) -> Variant:
    if isinstance(variant, Variant):
        return variant
    try:
        return Variant(str(variant).upper())
    except ValueError:
        raise ValueError(f"variant must be 'R' or 'L', got {variant!r}") from None


def check_tie(tie) -> TieRule:
    if isinstance(tie, TieRule):
        return tie
    try:
        return TieRule(str(tie).lower())
    except ValueError:
        raise ValueError(f"tie must be 'leftmost' or 'rightmost', got {tie!r}") from None


def check_scores(scores, *, name: str = "scores", allow_empty: bool = False) -> np.ndarray:
    """Return ``scores`` as a finite 1-D float array."""
    arr = np.asarray(scores, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0 and not allow_empty:
        raise ValueError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def argmax(values, lo: int, hi: int, tie: TieRule) -> int:
    """Index of the maximum of ``values[lo:hi+1]`` (inclusive bounds)."""
    best = lo
    top = values[lo]
    if tie is TieRule.LEFTMOST:
        for i in range(lo + 1, hi + 1):
            if values[i] > top:
                best, top = i, values[i]
    else:
        for i in range(lo + 1, hi + 1):
            if values[i] >= top:
                best, top = i, values[i]
    return best
