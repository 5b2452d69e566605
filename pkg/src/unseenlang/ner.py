"""IOB2 NER corpora: parsing, validation/repair, writing, span extraction
and label-preserving transliteration.

File format: ``token<TAB>label`` per line, blank line between sentences.
WikiAnn-style ``lang:token`` prefixes can be stripped at parse time.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import IO, Iterable

from .translit import RuleSet, transliterate_tokens

__all__ = [
    "NerSentence",
    "NerError",
    "Span",
    "parse_ner",
    "write_ner",
    "extract_spans",
    "transliterate_ner",
]


class NerError(ValueError):
    pass


@dataclass(frozen=True)
class Span:
    """Entity span: token indices [start, end] inclusive, plus type."""

    start: int
    end: int
    type: str


@dataclass(frozen=True)
class NerSentence:
    tokens: tuple[str, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.tokens) != len(self.labels):
            raise NerError(
                f"{len(self.tokens)} tokens but {len(self.labels)} labels"
            )


def _check_label(label: str) -> None:
    if label == "O":
        return
    if label[:2] in ("B-", "I-") and len(label) > 2:
        return
    raise NerError(f"bad IOB2 label {label!r}")


def _validate_iob2(labels: list[str], repair: bool) -> list[str]:
    """Strict IOB2: I-X may only follow B-X or I-X of the same type.
    In repair mode a dangling I-X is rewritten to B-X."""
    out = []
    prev = "O"
    for label in labels:
        _check_label(label)
        if label.startswith("I-"):
            expected = prev[2:] if prev != "O" else None
            if expected != label[2:]:
                if not repair:
                    raise NerError(f"dangling {label} after {prev}")
                label = "B-" + label[2:]
        out.append(label)
        prev = label
    return out


def parse_ner(
    stream: IO[str] | str,
    repair: bool = False,
    strip_prefix: bool = False,
) -> list[NerSentence]:
    """Parse a NER TSV stream. Strict mode (default) rejects IOB2
    violations, naming the offending sentence; ``repair=True`` rewrites a
    dangling I-X to B-X. ``strip_prefix`` removes a WikiAnn ``lang:``
    token prefix."""
    if isinstance(stream, str):
        lines = stream.split("\n")
    else:
        lines = [line.rstrip("\n") for line in stream]
    sentences: list[NerSentence] = []
    tokens: list[str] = []
    labels: list[str] = []

    def flush():
        if not tokens:
            return
        try:
            fixed = _validate_iob2(labels, repair)
        except NerError as exc:
            raise NerError(f"sentence {len(sentences) + 1}: {exc}")
        sentences.append(NerSentence(tuple(tokens), tuple(fixed)))
        tokens.clear()
        labels.clear()

    for lineno, line in enumerate(lines, start=1):
        line = unicodedata.normalize("NFC", line)
        if not line.strip():
            flush()
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise NerError(f"line {lineno}: expected token<TAB>label, got {line!r}")
        token, label = parts
        if strip_prefix and ":" in token:
            token = token.split(":", 1)[1]
        tokens.append(token)
        labels.append(label)
    flush()
    return sentences


def write_ner(sentences: Iterable[NerSentence]) -> str:
    blocks = [
        "\n".join(f"{tok}\t{lab}" for tok, lab in zip(s.tokens, s.labels))
        for s in sentences
    ]
    return "\n\n".join(blocks) + "\n" if blocks else ""


def extract_spans(labels: Iterable[str]) -> list[Span]:
    """Extract entity spans from a valid IOB2 label sequence."""
    labels = list(labels)
    spans = []
    start = None
    etype = None
    for i, label in enumerate(labels):
        if start is not None and not (label.startswith("I-") and label[2:] == etype):
            spans.append(Span(start, i - 1, etype))
            start, etype = None, None
        if label.startswith("B-"):
            start, etype = i, label[2:]
    if start is not None:
        spans.append(Span(start, len(labels) - 1, etype))
    return spans


def transliterate_ner(sentences: Iterable[NerSentence], rs: RuleSet) -> list[NerSentence]:
    """Transliterate tokens; labels are carried over unchanged."""
    return [
        NerSentence(tuple(transliterate_tokens(s.tokens, rs)), s.labels)
        for s in sentences
    ]
