"""scikit-learn style wrappers around the decoders.

The decoders have nothing to learn, so ``fit`` only validates its input.
They still follow the estimator protocol (``get_params``/``set_params``,
``fit``/``predict``/``score``) so they can be cloned, grid-searched over
``variant`` or ``tie``, and placed at the end of a Pipeline that emits
per-word scores.
"""
from __future__ import annotations

from sklearn.base import BaseEstimator

from .decoders import gap_split_parse, span_split_parse
from .evaluation import EvalConfig, corpus_f1
from .parser import coo_parse
from .trees import to_bracket_string
from .validation import check_scores, check_tie, check_variant


def _check_corpus(X, allow_empty=False):
    if isinstance(X, (str, bytes)):
        raise TypeError("expected a sequence of score vectors, got a string")
    out = [check_scores(x, allow_empty=allow_empty) for x in X]
    if not out:
        raise ValueError("empty corpus")
    return out


class _SplitParser(BaseEstimator):
    _allow_empty = False

    def fit(self, X, y=None):
        _check_corpus(X, self._allow_empty)
        self._validate_params()
        return self

    def _validate_params(self):
        check_tie(self.tie)

    def predict(self, X):
        self._validate_params()
        return [self._decode(x) for x in _check_corpus(X, self._allow_empty)]

    def transform(self, X):
        """Canonical bracket strings, one per sentence."""
        return [to_bracket_string(t) for t in self.predict(X)]

    def score(self, X, y, config: EvalConfig | None = None):
        """Corpus bracket F1 of the decoded trees against gold trees ``y``."""
        return corpus_f1(self.predict(X), list(y), config).f1


class COOParser(_SplitParser):
    """Greedy splitting around the highest-scoring word.

    Parameters
    ----------
    variant : {"R", "L"}
        Which daughter keeps the splitting word after a MIDDLE split.
    tie : {"leftmost", "rightmost"}
        Which of several equal maxima wins.
    """

    def __init__(self, variant="R", tie="leftmost"):
        self.variant = variant
        self.tie = tie

    def _validate_params(self):
        check_variant(self.variant)
        check_tie(self.tie)

    def _decode(self, x):
        return coo_parse(x, self.variant, self.tie)


class GapSplitParser(_SplitParser):
    """Splitting at the highest-scoring word boundary (n - 1 scores per sentence)."""

    _allow_empty = True

    def __init__(self, tie="leftmost"):
        self.tie = tie

    def _decode(self, x):
        return gap_split_parse(x, self.tie)


class SpanSplitParser(BaseEstimator):
    """Splitting on the best pair of daughter span scores.

    Each sample is a mapping ``(i, j) -> score`` over the full upper triangle.
    """

    def __init__(self, tie="leftmost"):
        self.tie = tie

    def fit(self, X, y=None):
        check_tie(self.tie)
        if not list(X):
            raise ValueError("empty corpus")
        return self

    def predict(self, X):
        check_tie(self.tie)
        return [span_split_parse(table, tie=self.tie) for table in X]

    def transform(self, X):
        return [to_bracket_string(t) for t in self.predict(X)]

    def score(self, X, y, config: EvalConfig | None = None):
        return corpus_f1(self.predict(X), list(y), config).f1
