"""Reading score files and treebanks; writing CSV/JSON/table artifacts."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .trees import BinaryTree, GoldTree, TreeFormatError, parse_canonical, parse_treebank

log = logging.getLogger(__name__)

__all__ = [
    "ScoreFileError",
    "Sentence",
    "Corpus",
    "RunConfig",
    "read_scores_file",
    "read_treebank",
    "read_tree_file",
    "filter_by_length",
    "render_csv",
    "render_json",
    "render_table",
    "config_line",
]


class ScoreFileError(ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def _content_lines(text: str):
    """Yield ``(lineno, line)`` skipping ``#`` comment lines (artifact headers)."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("#"):
            continue
        yield lineno, line


def parse_scores(text: str) -> list[list[float]]:
    vectors = []
    for lineno, line in _content_lines(text):
        if not line.strip():
            raise ScoreFileError("empty line", lineno)
        vec = []
        for col, tok in enumerate(line.split(), start=1):
            try:
                v = float(tok)
            except ValueError:
                raise ScoreFileError(f"non-numeric token {tok!r}", lineno, col) from None
            if not math.isfinite(v):
                raise ScoreFileError(f"non-finite value {tok!r}", lineno, col)
            vec.append(v)
        vectors.append(vec)
    return vectors


def read_scores_file(path) -> list[list[float]]:
    """One sentence per line, whitespace-separated decimals."""
    return parse_scores(Path(path).read_text(encoding="utf-8"))


def read_gap_file(path) -> list[list[float]]:
    """Like :func:`read_scores_file` but one-word sentences give empty lines."""
    vectors = []
    for lineno, line in _content_lines(Path(path).read_text(encoding="utf-8")):
        try:
            vectors.append([float(t) for t in line.split()])
        except ValueError as exc:
            raise ScoreFileError(str(exc), lineno) from None
    return vectors


def read_tree_file(path) -> list[BinaryTree]:
    """Canonical bracketings, one per line."""
    trees = []
    for lineno, line in _content_lines(Path(path).read_text(encoding="utf-8")):
        if not line.strip():
            continue
        try:
            trees.append(parse_canonical(line))
        except TreeFormatError as exc:
            raise TreeFormatError(f"line {lineno}: {exc}") from None
    return trees


@dataclass
class Sentence:
    tokens: list
    gold: GoldTree | None = None


@dataclass
class Corpus:
    sentences: list
    provenance: str = ""
    dropped: list = field(default_factory=list)

    def __len__(self):
        return len(self.sentences)

    @property
    def gold(self) -> list:
        return [s.gold for s in self.sentences]


def read_treebank(path, strip_punct_tags: Iterable[str] = ()) -> Corpus:
    """Read labeled S-expressions and strip the given preterminal tags.

    Sentences left with no tokens are dropped (their indices are kept in
    ``Corpus.dropped``) with a warning.
    """
    text = Path(path).read_text(encoding="utf-8")
    text = "\n".join(line for _, line in _content_lines(text))
    try:
        trees = parse_treebank(text)
    except TreeFormatError as exc:
        raise TreeFormatError(f"{path}: {exc}") from None
    tags = frozenset(strip_punct_tags)
    sentences, dropped = [], []
    for idx, tree in enumerate(trees):
        stripped = tree.strip(tags) if tags else tree
        if stripped is None:
            dropped.append(idx)
            continue
        sentences.append(Sentence(stripped.tokens, stripped))
    if dropped:
        log.warning("%s: dropped %d sentence(s) with no tokens after stripping", path, len(dropped))
    return Corpus(sentences, str(path), dropped)


def filter_by_length(corpus: Corpus, max_length: int) -> Corpus:
    """Keep sentences of at most ``max_length`` tokens (e.g. 10 for a WSJ10-style set)."""
    kept = [s for s in corpus.sentences if len(s.tokens) <= max_length]
    return Corpus(kept, corpus.provenance, list(corpus.dropped))


@dataclass
class RunConfig:
    command: str
    seed: int | None = None
    variant: str | None = None
    tie: str | None = None
    eval: dict | None = None
    output_format: str = "json"
    options: dict = field(default_factory=dict)
    tool_version: str = __version__

    def to_dict(self) -> dict:
        return asdict(self)


def config_line(config: RunConfig) -> str:
    return "# config: " + json.dumps(config.to_dict(), sort_keys=True)


def render_csv(header: Sequence[str], rows: Iterable[Sequence], config: RunConfig) -> str:
    buf = io.StringIO()
    buf.write(config_line(config) + "\n")
    writer = csv.writer(buf, delimiter=",", lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


def render_json(result: dict, config: RunConfig) -> str:
    return json.dumps({"config": config.to_dict(), "result": result}, indent=2, sort_keys=True) + "\n"


def render_table(header: Sequence[str], rows: Iterable[Sequence], config: RunConfig) -> str:
    rows = [["" if v is None else str(v) for v in row] for row in rows]
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    lines = [config_line(config)]
    lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    for row in rows:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines) + "\n"
