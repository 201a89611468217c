"""Ending-based word classification.

Romanian attaches definite articles and case endings as suffixes, so the
ending alone often tells the role of a noun: "-ul" marks an articled direct
object, "-ilor" an indirect object or a possessive attribute. This module
segments a word against the three ending tables and composes words back,
applying the a->e stem alternance ("fată" + "ei" = "fetei").

Ending analysis runs on the canonical lowercase form, *with* diacritics:
"fata" (articled) ends in table suffix "a", while "fată" does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .lexicon import ENDING_TABLES, Lexicon

MIN_STEM = 2  # "el" must not segment as "e" + "l"; shortest real stems are longer

_FRONT_VOWELS = "ei"
_VOWELS = "aăâeiîou"


@dataclass(frozen=True)
class EndingAnalysis:
    word: str
    stem: str
    ending: str
    tables: frozenset[str]
    alternance_applied: bool = False


def analyze_ending(
    word: str, lex: Lexicon, known_bases: Iterable[str] = ()
) -> EndingAnalysis | None:
    """Longest table ending that is a proper suffix and leaves a stem >= 2 chars.

    `tables` holds every ending table containing the suffix ("-ilor" is both
    t_pos and t_io; the caller resolves that). `known_bases` lets the analysis
    flag that the stem arose through the a->e alternance (stem "fet" with base
    "fată" known).
    """
    if not word:
        return None
    word = word.lower()
    endings = {e for name in ENDING_TABLES for e in lex.table(name)}
    best = None
    for ending in endings:
        if len(word) - len(ending) >= MIN_STEM and word.endswith(ending):
            if best is None or len(ending) > len(best):
                best = ending
    if best is None:
        return None
    stem = word[: -len(best)]
    tables = frozenset(name for name in ENDING_TABLES if best in lex.table(name))
    alternance = _unalternated_bases(stem) & {b.lower() for b in known_bases}
    return EndingAnalysis(
        word=word,
        stem=stem,
        ending=best,
        tables=tables,
        alternance_applied=bool(alternance),
    )


def _unalternated_bases(stem: str) -> set[str]:
    """Candidate base forms reachable by undoing e->a in the stem's last syllable."""
    idx = _last_vowel(stem)
    if idx is None or stem[idx] != "e":
        return set()
    reverted = stem[:idx] + "a" + stem[idx + 1 :]
    return {reverted, reverted + "a", reverted + "ă", reverted + "e"}


def _last_vowel(word: str) -> int | None:
    for i in range(len(word) - 1, -1, -1):
        if word[i] in _VOWELS:
            return i
    return None


def attach_ending(base: str, ending: str) -> str:
    """Concatenate a base word with an ending, applying the a->e alternance.

    The alternance fires when the base's final vowel nucleus is a/ă and the
    ending begins with a front vowel: "fată" + "ei" -> "fetei". Otherwise the
    result is plain concatenation: "fete" + "lor" -> "fetelor".
    """
    if not base:
        raise ValueError("base must be non-empty")
    if not ending:
        return base
    if ending[0] in _FRONT_VOWELS and base[-1] in "aă":
        stem = base[:-1]
        idx = _last_vowel(stem)
        if idx is not None and stem[idx] in "aă":
            stem = stem[:idx] + "e" + stem[idx + 1 :]
        return stem + ending
    return base + ending
