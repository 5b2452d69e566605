"""Deterministic, context-aware, longest-match grapheme rewrite engine.

A ruleset maps graphemes of a source script onto the orthographic
conventions of a related Latin-script language. The mapping is one-way by
design: it maximizes surface similarity with the target language and is
neither reversible nor a phonetization.

Rule file format (UTF-8, NFC, line-oriented):

    # comment
    @name cyrillic_latin
    @source Cyrillic
    @target Latin
    LHS<TAB>RHS[<TAB>LEFTCTX<TAB>RIGHTCTX]

A literal ``∅`` in the RHS field deletes the LHS; in a context field it
means "no constraint" (needed for an absent right context, since trailing
whitespace is forbidden).
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .scripts import ScriptClass, segment_graphemes

__all__ = [
    "Rule",
    "RuleSet",
    "RuleFileError",
    "ValidationReport",
    "parse_ruleset",
    "validate_ruleset",
    "transliterate",
    "transliterate_tokens",
    "load_builtin",
    "builtin_names",
]

DELETE_MARK = "∅"

BUILTIN_NAMES = ("uyghur_latin", "sorani_latin", "cyrillic_latin", "georgian_latin")


class RuleFileError(ValueError):
    """Malformed rule file. Carries the 1-based offending line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Rule:
    """One rewrite decision: LHS graphemes become RHS, optionally only
    between the given left/right contexts (matched on the original text)."""

    lhs: str
    rhs: str
    left_context: str | None = None
    right_context: str | None = None

    def __post_init__(self):
        if not self.lhs:
            raise ValueError("rule lhs must be non-empty")
        if self.left_context == "" or self.right_context == "":
            raise ValueError("rule contexts, when present, must be non-empty")

    @property
    def key(self) -> tuple[str, str | None, str | None]:
        return (self.lhs, self.left_context, self.right_context)


@dataclass
class ValidationReport:
    duplicate_keys: list[tuple[str, str | None, str | None]] = field(default_factory=list)
    idempotence_violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.duplicate_keys and not self.idempotence_violations

    def describe(self) -> str:
        if self.ok:
            return "ok"
        parts = []
        for key in self.duplicate_keys:
            parts.append(f"duplicate rule key: {key!r}")
        for g in self.idempotence_violations:
            parts.append(f"idempotence violation: rhs grapheme {g!r} occurs in an lhs")
        return "\n".join(parts)


@dataclass
class RuleSet:
    """Ordered collection of rewrite rules defining one transliteration
    scheme. ``validated`` is set by :func:`validate_ruleset` on a clean
    report; :func:`transliterate` refuses unvalidated rulesets."""

    name: str
    source_scripts: frozenset[ScriptClass]
    target_script: ScriptClass
    rules: tuple[Rule, ...]
    target_language_note: str = ""
    validated: bool = False

    def __post_init__(self):
        # Format characters (ZWNJ/ZWJ) attach to the preceding grapheme
        # cluster, so an unconditional deletion rule for one of them could
        # never match cluster-wise; such rules are applied as a pre-pass
        # character strip instead.
        strip = {
            rule.lhs
            for rule in self.rules
            if rule.rhs == ""
            and rule.left_context is None
            and rule.right_context is None
            and len(rule.lhs) == 1
            and unicodedata.category(rule.lhs) == "Cf"
        }
        self._strip_table = str.maketrans({ch: None for ch in strip})
        # (first grapheme) -> candidate rules sorted longest-lhs first,
        # then file order; used by the matcher.
        index: dict[str, list[tuple[int, Rule, tuple[str, ...]]]] = {}
        for order, rule in enumerate(self.rules):
            gs = tuple(segment_graphemes(rule.lhs))
            index.setdefault(gs[0], []).append((order, rule, gs))
        for cands in index.values():
            cands.sort(key=lambda item: (-len(item[2]), item[0]))
        self._index = index


def parse_ruleset(text: str) -> RuleSet:
    """Parse a rule file. Rules keep file order; header directives populate
    name and scripts. Raises :class:`RuleFileError` on malformed input."""
    name = None
    sources: list[ScriptClass] = []
    target = None
    note = ""
    rules: list[Rule] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        if raw != raw.rstrip():
            raise RuleFileError("trailing whitespace", lineno)
        if not raw or raw.startswith("#"):
            continue
        if raw.startswith("@"):
            try:
                directive, value = raw.split(" ", 1)
            except ValueError:
                raise RuleFileError(f"directive without value: {raw!r}", lineno)
            value = value.strip()
            if directive == "@name":
                name = value
            elif directive == "@source":
                sources = [_script(v, lineno) for v in value.split(",")]
            elif directive == "@target":
                target = _script(value, lineno)
            elif directive == "@note":
                note = value
            else:
                raise RuleFileError(f"unknown directive {directive!r}", lineno)
            continue
        fields = raw.split("\t")
        if len(fields) not in (2, 4):
            raise RuleFileError(
                f"expected 2 or 4 tab-separated fields, got {len(fields)}", lineno
            )
        lhs = unicodedata.normalize("NFC", fields[0])
        rhs = "" if fields[1] == DELETE_MARK else unicodedata.normalize("NFC", fields[1])
        left = right = None
        if len(fields) == 4:
            left = _context(fields[2])
            right = _context(fields[3])
        try:
            rules.append(Rule(lhs, rhs, left, right))
        except ValueError as exc:
            raise RuleFileError(str(exc), lineno)
    if name is None or target is None or not sources:
        raise RuleFileError("missing @name, @source or @target header")
    return RuleSet(
        name=name,
        source_scripts=frozenset(sources),
        target_script=target,
        rules=tuple(rules),
        target_language_note=note,
    )


def _context(field_text: str) -> str | None:
    if field_text in ("", DELETE_MARK):
        return None
    return unicodedata.normalize("NFC", field_text)


def _script(value: str, lineno: int) -> ScriptClass:
    try:
        return ScriptClass(value.strip())
    except ValueError:
        raise RuleFileError(f"unknown script {value.strip()!r}", lineno)


def validate_ruleset(rs: RuleSet) -> ValidationReport:
    """Check structural soundness. An empty report additionally marks the
    ruleset as validated (usable by the engine).

    Idempotence condition: no grapheme occurring in any rhs occurs in any
    lhs, so applying the ruleset twice equals applying it once.
    """
    report = ValidationReport()
    seen = set()
    for rule in rs.rules:
        if rule.key in seen:
            report.duplicate_keys.append(rule.key)
        seen.add(rule.key)
    lhs_graphemes = set()
    for rule in rs.rules:
        lhs_graphemes.update(segment_graphemes(rule.lhs))
    flagged = set()
    for rule in rs.rules:
        for g in segment_graphemes(rule.rhs):
            if g in lhs_graphemes and g not in flagged:
                report.idempotence_violations.append(g)
                flagged.add(g)
    if report.ok:
        rs.validated = True
    return report


def transliterate(text: str, rs: RuleSet) -> str:
    """Rewrite ``text`` with a validated ruleset.

    Single left-to-right pass over the NFC-normalized input. At each
    grapheme position the applicable rule with the longest lhs wins (file
    order breaks ties); contexts are matched against the original text,
    never against already-emitted output. Unmatched graphemes pass through.
    """
    if not rs.validated:
        raise ValueError(
            f"ruleset {rs.name!r} has not passed validation; run validate_ruleset first"
        )
    text = unicodedata.normalize("NFC", text).translate(rs._strip_table)
    graphemes = segment_graphemes(text)
    # char offset of each grapheme boundary, for context matching
    offsets = [0]
    for g in graphemes:
        offsets.append(offsets[-1] + len(g))
    out: list[str] = []
    i = 0
    n = len(graphemes)
    while i < n:
        match = _best_match(rs, graphemes, offsets, text, i)
        if match is None:
            out.append(graphemes[i])
            i += 1
        else:
            rule, length = match
            out.append(rule.rhs)
            i += length
    return "".join(out)


def _best_match(rs, graphemes, offsets, text, i):
    cands = rs._index.get(graphemes[i])
    if not cands:
        return None
    n = len(graphemes)
    for _, rule, lhs_gs in cands:
        length = len(lhs_gs)
        if i + length > n:
            continue
        if tuple(graphemes[i : i + length]) != lhs_gs:
            continue
        if rule.left_context is not None and not text.endswith(
            rule.left_context, 0, offsets[i]
        ):
            continue
        if rule.right_context is not None and not text.startswith(
            rule.right_context, offsets[i + length]
        ):
            continue
        return rule, length
    return None


def transliterate_tokens(tokens, rs: RuleSet) -> list[str]:
    """Element-wise transliteration; output length equals input length."""
    return [transliterate(tok, rs) for tok in tokens]


@lru_cache(maxsize=None)
def load_builtin(name: str) -> RuleSet:
    """Load and validate one of the built-in rulesets by name."""
    if name not in BUILTIN_NAMES:
        raise KeyError(f"unknown built-in ruleset {name!r}; have {BUILTIN_NAMES}")
    text = (resources.files(__package__) / "rules" / f"{name}.rules").read_text("utf-8")
    rs = parse_ruleset(text)
    report = validate_ruleset(rs)
    if not report.ok:
        raise RuleFileError(f"built-in ruleset {name} failed validation:\n{report.describe()}")
    return rs


def builtin_names() -> tuple[str, ...]:
    return BUILTIN_NAMES
