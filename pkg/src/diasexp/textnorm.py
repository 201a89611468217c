"""Text normalization, tokenization and sentence-kind detection for Romanian input.

Everything here is pure and unicode-careful: the canonical form keeps proper
Romanian diacritics (comma-below ș/ț), while a folded key (lowercase, diacritics
stripped) is carried on every token so that diacritic-free user input still
matches the vocabulary tables.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass

# Legacy cedilla codepoints seen in many Romanian texts; the correct letters
# use comma-below.
_CEDILLA_MAP = {
    "ş": "ș",  # ş -> ș
    "Ş": "Ș",  # Ş -> Ș
    "ţ": "ț",  # ţ -> ț
    "Ţ": "Ț",  # Ţ -> Ț
}

_SPLIT_PUNCT = {",": "comma", ".": "period", "?": "question-mark"}

#: Folded interrogative openers ("pe cine" and "de ce" are two-token phrases).
WH_OPENERS = frozenset(
    {"cine", "ce", "cui", "cum", "unde", "cand", "pe cine", "de ce", "pentru ce"}
)


class EmptyInput(ValueError):
    """Raised when an operation requires at least one token."""


class TokenKind(enum.Enum):
    WORD = "word"
    COMMA = "comma"
    PERIOD = "period"
    QUESTION_MARK = "question-mark"


class SentenceKind(enum.Enum):
    ASSERTIVE = "assertive"
    INTERROGATIVE = "interrogative"


@dataclass(frozen=True)
class NormText:
    original: str
    canonical: str


@dataclass(frozen=True)
class Token:
    surface: str
    folded: str
    kind: TokenKind
    span: tuple[int, int]  # [start, end) offsets into the canonical text


def fold(word: str) -> str:
    """Lowercased, diacritic-stripped matching key ("Frumoasă" -> "frumoasa")."""
    decomposed = unicodedata.normalize("NFD", word.casefold())
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def normalize(raw: str) -> NormText:
    """Canonicalize a raw line: NFC, cedilla->comma-below, whitespace collapse."""
    text = unicodedata.normalize("NFC", raw)
    for bad, good in _CEDILLA_MAP.items():
        text = text.replace(bad, good)
    text = " ".join(text.split())
    return NormText(original=raw, canonical=text)


def tokenize(text: NormText | str) -> list[Token]:
    """Split canonical text into word and punctuation tokens.

    Whitespace separates words; `,` `.` `?` become their own tokens even when
    glued to a word. Hyphens stay inside the word, keeping clitic forms like
    "s-ar" intact.
    """
    canonical = text.canonical if isinstance(text, NormText) else text
    tokens: list[Token] = []
    i = 0
    n = len(canonical)
    while i < n:
        if canonical[i] == " ":
            i += 1
            continue
        if canonical[i] in _SPLIT_PUNCT:
            tokens.append(_make_token(canonical, i, i + 1))
            i += 1
            continue
        j = i
        while j < n and canonical[j] != " " and canonical[j] not in _SPLIT_PUNCT:
            j += 1
        tokens.append(_make_token(canonical, i, j))
        i = j
    return tokens


def _make_token(canonical: str, start: int, end: int) -> Token:
    surface = canonical[start:end]
    kind = TokenKind.WORD
    if surface in _SPLIT_PUNCT:
        kind = TokenKind(_SPLIT_PUNCT[surface])
    return Token(surface=surface, folded=fold(surface), kind=kind, span=(start, end))


def classify_sentence(tokens: list[Token]) -> SentenceKind:
    """Interrogative iff the line ends in "?" or opens with a question word.

    The opener test also checks the first two words so that "pe cine" and
    "de ce" questions ending in "." are still recognized.
    """
    if not tokens:
        raise EmptyInput("cannot classify an empty token list")
    if tokens[-1].kind is TokenKind.QUESTION_MARK:
        return SentenceKind.INTERROGATIVE
    words = [t for t in tokens if t.kind is TokenKind.WORD]
    if words:
        if words[0].folded in WH_OPENERS:
            return SentenceKind.INTERROGATIVE
        if len(words) > 1 and f"{words[0].folded} {words[1].folded}" in WH_OPENERS:
            return SentenceKind.INTERROGATIVE
    return SentenceKind.ASSERTIVE
