"""Greedy top-down (COO) constituency parsing, its coverage and its bias."""

__version__ = "0.1.0"

from .trees import (  # noqa: E402
    BinaryTree,
    GoldTree,
    Leaf,
    Node,
    Span,
    TreeFormatError,
    catalan,
    enumerate_binary_trees,
    left_comb,
    mirror,
    parse_tree_text,
    right_comb,
    sample_uniform_tree,
    spans,
    to_bracket_string,
)
from .validation import TieRule, Variant  # noqa: E402
from .parser import coo_parse, coo_parse_ternary, count_derivations  # noqa: E402
from .reachability import (  # noqa: E402
    count_recoverable_dp,
    enumerate_reachable,
    is_recoverable,
    is_recoverable_structural,
    reachability_report,
    recurrence_a,
    witness_scores,
)
from .bias import MarginalTable, coo_marginals_exact, coo_marginals_mc, uniform_tree_marginals  # noqa: E402
from .evaluation import (  # noqa: E402
    EvalConfig,
    F1Result,
    TreeDistribution,
    bracket_f1,
    corpus_f1,
    decode_corpus,
    expected_f1_mc,
    sample_skew_tree,
)
from .decoders import completeness_image, gap_split_parse, indicator_table, span_split_parse  # noqa: E402
from .estimators import COOParser, GapSplitParser, SpanSplitParser  # noqa: E402

__all__ = [
    "BinaryTree",
    "GoldTree",
    "Leaf",
    "Node",
    "Span",
    "TreeFormatError",
    "catalan",
    "enumerate_binary_trees",
    "left_comb",
    "mirror",
    "parse_tree_text",
    "right_comb",
    "sample_uniform_tree",
    "spans",
    "to_bracket_string",
    "count_recoverable_dp",
    "enumerate_reachable",
    "is_recoverable",
    "is_recoverable_structural",
    "reachability_report",
    "recurrence_a",
    "witness_scores",
    "EvalConfig",
    "F1Result",
    "TreeDistribution",
    "bracket_f1",
    "corpus_f1",
    "decode_corpus",
    "expected_f1_mc",
    "sample_skew_tree",
    "TieRule",
    "Variant",
    "coo_parse",
    "coo_parse_ternary",
    "count_derivations",
    "MarginalTable",
    "coo_marginals_exact",
    "coo_marginals_mc",
    "uniform_tree_marginals",
    "completeness_image",
    "gap_split_parse",
    "indicator_table",
    "span_split_parse",
    "COOParser",
    "GapSplitParser",
    "SpanSplitParser",
]
