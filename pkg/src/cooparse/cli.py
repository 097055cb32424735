"""Command-line interface: ``cooparse <subcommand> ...``."""
from __future__ import annotations

import argparse
import logging
import sys

from .bias import coo_marginals_exact, coo_marginals_mc, uniform_tree_marginals
from .decoders import completeness_image
from .evaluation import PUNCTUATION_TAGS, EvalConfig, LengthMismatchError, corpus_f1, decode_corpus, expected_f1_mc
from .io import (
    RunConfig,
    config_line,
    filter_by_length,
    read_scores_file,
    read_tree_file,
    read_treebank,
    render_csv,
    render_json,
    render_table,
)
from .reachability import is_recoverable, reachability_report, witness_scores
from .synthetic import branching_corpus
from .trees import parse_canonical, to_bracket_string
from .validation import check_tie, check_variant

log = logging.getLogger("cooparse")


def _fmt(x) -> str:
    return repr(float(x))


def _eval_config(args) -> EvalConfig:
    if args.no_strip_punct:
        tags = frozenset()
    elif args.punct_tags is not None:
        tags = frozenset(t for t in args.punct_tags.split(",") if t)
    else:
        tags = PUNCTUATION_TAGS
    return EvalConfig(
        include_single_word_spans=args.include_trivial,
        include_whole_sentence_span=not args.exclude_whole,
        punctuation_tags=tags,
        aggregation="micro_corpus" if args.aggregation == "micro" else "macro_sentence_mean",
    )


def _load_gold(args, config: EvalConfig):
    corpus = read_treebank(args.gold, config.punctuation_tags)
    if args.max_length is not None:
        corpus = filter_by_length(corpus, args.max_length)
    return corpus


# -- subcommands -----------------------------------------------------------------


def cmd_parse(args) -> str:
    variant, tie = check_variant(args.variant), check_tie(args.tie)
    trees = decode_corpus(read_scores_file(args.scores), variant, tie)
    config = RunConfig("parse", variant=variant.value, tie=tie.value, output_format="trees",
                       options={"scores": str(args.scores)})
    lines = [config_line(config)]
    lines.extend(to_bracket_string(t) for t in trees)
    return "\n".join(lines) + "\n"


def cmd_reach(args) -> str:
    rows = reachability_report(args.max_n, enumerate_max=args.enumerate_max)
    config = RunConfig("reach", output_format=args.format,
                       options={"max_n": args.max_n, "enumerate_max": args.enumerate_max})
    header = ["n", "catalan", "reachable_dp", "reachable_enum", "recurrence_a", "derivations",
              "ratio", "ratio_exact", "flags"]
    table = [
        [r.n, r.catalan_count, r.reachable_count_dp, r.reachable_count_enumerated, r.recurrence_a_n,
         r.derivation_count, r.ratio_decimal, str(r.ratio), ";".join(r.flags)]
        for r in rows
    ]
    if args.format == "json":
        return render_json({"rows": [dict(zip(header, row)) for row in table]}, config)
    if args.format == "table":
        return render_table(header, table, config)
    return render_csv(header, table, config)


def cmd_check(args) -> str:
    variant = check_variant(args.variant)
    tree = parse_canonical(args.tree)
    ok = is_recoverable(tree, variant)
    witness = witness_scores(tree, variant) if ok else None
    config = RunConfig("check", variant=variant.value, output_format=args.format,
                       options={"tree": to_bracket_string(tree)})
    if args.format == "json":
        return render_json({"tree": to_bracket_string(tree), "recoverable": ok, "witness": witness}, config)
    status = "recoverable" if ok else "unreachable"
    out = config_line(config) + "\n" + f"{status} ({variant.value}-variant)\n"
    if witness is not None:
        out += "witness: " + " ".join(map(str, witness)) + "\n"
    return out


def cmd_marginals(args) -> str:
    variant = check_variant(args.variant)
    opts = {"n": args.n, "mode": args.mode}
    if args.mode == "uniform":
        table = uniform_tree_marginals(args.n)
        variant_name, seed = None, None
    elif args.mode == "coo-exact":
        table = coo_marginals_exact(args.n, variant)
        variant_name, seed = variant.value, None
    else:
        table = coo_marginals_mc(args.n, variant, samples=args.samples, seed=args.seed, n_jobs=args.jobs)
        variant_name, seed = variant.value, args.seed
        opts["samples"] = args.samples
    config = RunConfig("marginals", seed=seed, variant=variant_name, output_format="csv", options=opts)
    rows = [(args.n, i, j, _fmt(p)) for i, j, p in table.rows()]
    return render_csv(["n", "i", "j", "probability"], rows, config)


def cmd_eval(args) -> str:
    config = _eval_config(args)
    pred = read_tree_file(args.pred)
    corpus = read_treebank(args.gold, config.punctuation_tags)
    if len(pred) != len(corpus):
        raise LengthMismatchError(
            f"line count mismatch: {args.pred} has {len(pred)} trees, {args.gold} has {len(corpus)} sentences"
            + (f" ({len(corpus.dropped)} dropped as empty)" if corpus.dropped else "")
        )
    pairs = list(zip(pred, corpus.gold))
    if args.max_length is not None:
        pairs = [(p, g) for p, g in pairs if len(g) <= args.max_length]
    result = corpus_f1([p for p, _ in pairs], [g for _, g in pairs], config,
                       keep_per_sentence=args.per_sentence)
    run = RunConfig("eval", eval=config.to_dict(), output_format="json",
                    options={"pred": str(args.pred), "gold": str(args.gold), "max_length": args.max_length})
    payload = {"precision": result.precision, "recall": result.recall, "f1": result.f1,
               "sentences": len(pairs)}
    if args.per_sentence:
        payload["per_sentence"] = result.per_sentence
    return render_json(payload, run)


def cmd_mc_f1(args) -> str:
    config = _eval_config(args)
    corpus = _load_gold(args, config)
    result = expected_f1_mc(corpus.gold, args.dist, samples_per_sentence=args.samples,
                            replicates=args.replicates, seed=args.seed, config=config, n_jobs=args.jobs)
    run = RunConfig("mc-f1", seed=args.seed, eval=config.to_dict(), output_format="json",
                    options={"gold": str(args.gold), "dist": result.distribution, "samples": args.samples,
                             "replicates": args.replicates, "max_length": args.max_length})
    payload = {"mean": result.mean, "sigma": result.sigma, "replicate_scores": result.replicate_scores,
               "distribution": result.distribution, "sentences": len(corpus)}
    return render_json(payload, run)


def cmd_complete(args) -> str:
    res = completeness_image(args.decoder, args.n)
    config = RunConfig("complete", output_format=args.format, options={"decoder": args.decoder, "n": args.n})
    header = ["decoder", "n", "reachable", "catalan", "coverage", "coverage_exact"]
    row = [res.decoder, res.n, len(res.trees), res.total, _fmt(res.coverage), str(res.coverage)]
    if args.format == "json":
        return render_json(dict(zip(header, row)), config)
    if args.format == "csv":
        return render_csv(header, [row], config)
    return render_table(header, [row], config)


def cmd_synth(args) -> str:
    trees = branching_corpus(args.sentences, args.min_length, args.max_length, args.comb_prob,
                             args.direction, args.seed)
    config = RunConfig("synth", seed=args.seed, output_format="treebank",
                       options={"sentences": args.sentences, "min_length": args.min_length,
                                "max_length": args.max_length, "comb_prob": args.comb_prob,
                                "direction": args.direction})
    return config_line(config) + "\n" + "".join(t.to_string() + "\n" for t in trees)


# -- argument parsing -----------------------------------------------------------


def _add_eval_flags(p):
    p.add_argument("--include-trivial", action="store_true", help="count single-word spans")
    p.add_argument("--exclude-whole", action="store_true", help="drop the whole-sentence span")
    p.add_argument("--punct-tags", help="comma-separated tags to strip (default: PTB punctuation)")
    p.add_argument("--no-strip-punct", action="store_true", help="keep every token")
    p.add_argument("--aggregation", choices=["macro", "micro"], default="macro")
    p.add_argument("--max-length", type=int, help="only sentences with at most this many tokens")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cooparse", description=__doc__)
    parser.add_argument("-o", "--output", help="write to this file instead of stdout")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="decode a score file into bracketed trees")
    p.add_argument("--scores", required=True)
    p.add_argument("--variant", default="r", choices=["r", "l", "R", "L"])
    p.add_argument("--tie", default="leftmost", choices=["leftmost", "rightmost"])
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("reach", help="reachable-tree counts per sentence length")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--enumerate-max", type=int, default=8, help="also enumerate decodes up to this length")
    p.add_argument("--format", choices=["csv", "json", "table"], default="csv")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("check", help="is a tree recoverable, and by which scores")
    p.add_argument("--tree", required=True)
    p.add_argument("--variant", default="r", choices=["r", "l", "R", "L"])
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("marginals", help="span marginal heatmap as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["uniform", "coo-exact", "coo-mc"], default="coo-exact")
    p.add_argument("--variant", default="r", choices=["r", "l", "R", "L"])
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_marginals)

    p = sub.add_parser("eval", help="bracket F1 of predicted trees against a treebank")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--per-sentence", action="store_true")
    _add_eval_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("mc-f1", help="expected F1 under random trees")
    p.add_argument("--gold", required=True)
    p.add_argument("--dist", choices=["left", "uniform", "right"], required=True)
    p.add_argument("--samples", type=int, default=10, help="draws per sentence per replicate")
    p.add_argument("--replicates", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    _add_eval_flags(p)
    p.set_defaults(func=cmd_mc_f1)

    p = sub.add_parser("complete", help="coverage of a decoder over all binary trees")
    p.add_argument("--decoder", choices=["coo-r", "coo-l", "gap", "span"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json", "table"], default="table")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("synth", help="write a synthetic gold treebank")
    p.add_argument("--sentences", type=int, default=200)
    p.add_argument("--min-length", type=int, default=3)
    p.add_argument("--max-length", type=int, default=10)
    p.add_argument("--comb-prob", type=float, default=0.7)
    p.add_argument("--direction", choices=["right", "left"], default="right")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        text = args.func(args)
    except (ValueError, KeyError, TypeError, OSError) as exc:
        print(f"cooparse {args.command}: error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
