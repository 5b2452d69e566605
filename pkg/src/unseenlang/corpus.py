"""Raw-text utilities and the registry of the 15 studied languages.

Deduplication reproduces OSCAR-style line-level dedup for the sources
that ship without it (Wiki dumps and other collections).
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Iterable

from .scripts import ScriptClass

__all__ = ["dedup_lines", "LanguageRecord", "language_table", "lookup"]


def dedup_lines(lines: Iterable[str]) -> list[str]:
    """Drop duplicate lines, keeping the first occurrence in order.

    Equality is computed on the NFC-normalized, whitespace-trimmed line;
    empty (or whitespace-only) lines are dropped.
    """
    seen: set[str] = set()
    out: list[str] = []
    for line in lines:
        key = unicodedata.normalize("NFC", line).strip()
        if not key or key in seen:
            continue
        seen.add(key)
        out.append(line)
    return out


@dataclass(frozen=True)
class LanguageRecord:
    iso: str
    name: str
    script: ScriptClass
    family: str
    sents: int  # raw sentences available for unsupervised tuning
    source: str  # OSCAR | Wiki | Leipzig | Other


_L = ScriptClass.LATIN
_C = ScriptClass.CYRILLIC
_A = ScriptClass.ARABIC
_G = ScriptClass.GEORGIAN

_REGISTRY = {
    r.iso: r
    for r in (
        LanguageRecord("bm", "Bambara", _L, "Niger-Congo", 1_000, "OSCAR"),
        LanguageRecord("wo", "Wolof", _L, "Niger-Congo", 10_000, "OSCAR"),
        LanguageRecord("gsw", "Swiss German", _L, "West Germanic", 250_000, "OSCAR"),
        LanguageRecord("pcm", "Naija", _L, "Pidgin (En)", 237_000, "Other"),
        LanguageRecord("fao", "Faroese", _L, "North Germanic", 297_000, "Leipzig"),
        LanguageRecord("mlt", "Maltese", _L, "Semitic", 50_000, "OSCAR"),
        LanguageRecord("nrz", "Narabizi", _L, "Semitic", 87_000, "Other"),
        LanguageRecord("ckb", "Sorani", _A, "Indo-Iranian", 380_000, "OSCAR"),
        LanguageRecord("ug", "Uyghur", _A, "Turkic", 105_000, "OSCAR"),
        LanguageRecord("sd", "Sindhi", _A, "Indo-Aryan", 375_000, "OSCAR"),
        LanguageRecord("xmf", "Mingrelian", _G, "Kartvelian", 29_000, "Wiki"),
        LanguageRecord("bxu", "Buryat", _C, "Mongolic", 7_000, "Wiki"),
        LanguageRecord("mhr", "Mari", _C, "Uralic", 58_000, "Wiki"),
        LanguageRecord("myv", "Erzya", _C, "Uralic", 20_000, "Wiki"),
        LanguageRecord("olo", "Livvi", _L, "Uralic", 9_400, "Wiki"),
    )
}


def language_table() -> list[LanguageRecord]:
    return list(_REGISTRY.values())


def lookup(iso: str) -> LanguageRecord:
    try:
        return _REGISTRY[iso]
    except KeyError:
        raise LookupError(f"unknown language code {iso!r}") from None


def registry_tsv() -> str:
    lines = ["iso\tname\tscript\tfamily\tsents\tsource"]
    for r in language_table():
        lines.append(f"{r.iso}\t{r.name}\t{r.script.value}\t{r.family}\t{r.sents}\t{r.source}")
    return "\n".join(lines) + "\n"
