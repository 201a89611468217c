"""Indicator vocabularies: prefix tables, adverb/adjective/possession lists,
copula forms and ending tables, plus the line-based `.lex` file format.

The whole point of the approach is that this small keyword inventory (a few
dozen indicators and endings, no content-word dictionary) is enough to chunk an
assertive sentence into its parts. Tables are immutable after load; learning
produces a new value.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Iterable

from .textnorm import fold

PREFIX_TABLES = (
    "pref_attrib",
    "pref_do",
    "pref_io",
    "pref_where",
    "pref_when",
    "pref_how",
    "pref_goal",
    "pref_why",
)

WORD_TABLES = (
    "adv_where",
    "adv_when",
    "adv_how",
    "adjectives",
    "possession_words",
    "forms_of_to_be",
)

ENDING_TABLES = ("t_pos", "t_do", "t_io")

ALL_TABLES = PREFIX_TABLES + WORD_TABLES + ENDING_TABLES


class LexiconError(ValueError):
    pass


class UnknownTable(LexiconError):
    def __init__(self, name: str):
        super().__init__(f"unknown lexicon table: {name!r}")
        self.table = name


class ParseError(LexiconError):
    def __init__(self, source: str, line: int, reason: str):
        super().__init__(f"{source}:{line}: {reason}")
        self.source = source
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class LexiconDelta:
    table: str
    entry: str
    source: str = "learned"  # builtin | user-file | learned


@dataclass(frozen=True)
class Lexicon:
    """All entries are stored as folded keys; multiword phrases are space-joined."""

    pref_attrib: frozenset[str] = frozenset()
    pref_do: frozenset[str] = frozenset()
    pref_io: frozenset[str] = frozenset()
    pref_where: frozenset[str] = frozenset()
    pref_when: frozenset[str] = frozenset()
    pref_how: frozenset[str] = frozenset()
    pref_goal: frozenset[str] = frozenset()
    pref_why: frozenset[str] = frozenset()
    adv_where: frozenset[str] = frozenset()
    adv_when: frozenset[str] = frozenset()
    adv_how: frozenset[str] = frozenset()
    adjectives: frozenset[str] = frozenset()
    possession_words: frozenset[str] = frozenset()
    forms_of_to_be: frozenset[str] = frozenset()
    t_pos: frozenset[str] = frozenset()
    t_do: frozenset[str] = frozenset()
    t_io: frozenset[str] = frozenset()

    def table(self, name: str) -> frozenset[str]:
        if name not in ALL_TABLES:
            raise UnknownTable(name)
        return getattr(self, name)

    def total_entries(self) -> int:
        """Size of the whole keyword inventory (words, phrases and endings)."""
        return sum(len(getattr(self, f.name)) for f in fields(self))


# The default vocabulary. Single-letter comments name the justification:
# either the grammar table the literal belongs to, or the dialogue row that
# requires it. Phrases are written with diacritics and folded at build time.
_BUILTIN: dict[str, tuple[str, ...]] = {
    "pref_attrib": (
        "al", "a", "ai", "ale", "cu", "de", "din",
        "cel", "cea", "cei", "cele", "ce", "care",
    ),
    "pref_do": (
        "pe",
        # indefinite articles open a direct-object group ("o floare", "un caiet")
        "o", "un",
    ),
    "pref_io": ("lui", "de", "despre", "cu", "cui"),
    "pref_where": (
        "la", "în", "din", "de la", "lângă", "în spatele", "în josul",
        "spre", "unde", "aproape de", "către",
        "în fața",  # needed for "în fața școlii"
    ),
    "pref_when": ("când", "peste", "pe", "înainte de", "după"),
    "pref_how": ("altfel decât", "astfel ca", "în felul", "cum", "așa ca", "în modul"),
    "pref_goal": ("pentru", "pentru ca să", "în vederea", "cu scopul", "pentru ca"),
    "pref_why": ("căci", "pentru că", "deoarece", "fiindcă", "întrucât"),
    "adv_where": ("aici", "acolo", "dincolo", "oriunde", "sus", "jos"),
    "adv_when": (
        "acum", "atunci", "vara", "iarna", "luni", "totdeauna", "seara",
        "dimineața", "miercuri",
        # required by the bundled story ("sociabilă mereu", "azi", "mâine")
        "mereu", "astăzi", "azi", "mâine",
    ),
    "adv_how": (
        "așa", "bine", "frumos", "oricum", "greu", "repede",
        "politicos",  # bundled story: manner segment "politicos"
    ),
    "adjectives": (
        "mare", "mic", "bun", "frumos", "înalt", "roșu",
        "silitoare",  # bundled story: "elevă silitoare" splits noun + attribute
    ),
    "possession_words": (
        "meu", "tău", "lor", "tuturor", "nimănui",
        "ei",  # bundled story: "pe părinții ei"
    ),
    "forms_of_to_be": ("este", "e", "sunt", "ești", "fi"),
    "t_pos": ("lui", "ei", "ilor", "elor"),
    "t_do": (
        "a", "ul", "ele", "ile",
        "ii",  # masculine plural definite article ("părinții"), needed by the story
    ),
    "t_io": ("ei", "ului", "elor", "ilor"),
}


def _normalize_entry(table: str, entry: str) -> str:
    words = [fold(w) for w in entry.split()]
    if not words or any(not w for w in words):
        raise ParseError("<entry>", 0, f"empty entry for table {table!r}")
    if len(words) > 1 and table not in PREFIX_TABLES:
        raise ParseError(
            "<entry>", 0, f"multiword entries are only allowed in prefix tables, got {entry!r}"
        )
    if table in ENDING_TABLES and len(words) != 1:
        raise ParseError("<entry>", 0, f"endings must be single strings, got {entry!r}")
    return " ".join(words)


def builtin_lexicon() -> Lexicon:
    data = {
        name: frozenset(_normalize_entry(name, e) for e in entries)
        for name, entries in _BUILTIN.items()
    }
    return Lexicon(**data)


def parse_lexicon_file(text: str, source: str = "<string>") -> dict[str, set[str]]:
    """Parse the `[table]` / one-entry-per-line format. `#` starts a comment."""
    tables: dict[str, set[str]] = {}
    current: str | None = None
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in ALL_TABLES:
                raise UnknownTable(name)
            current = name
            tables.setdefault(name, set())
            continue
        if current is None:
            raise ParseError(source, lineno, "entry before any [table] header")
        try:
            entry = _normalize_entry(current, line)
        except ParseError as exc:
            raise ParseError(source, lineno, exc.reason) from None
        tables[current].add(entry)
    return tables


def load(paths: Iterable[str | Path] = ()) -> Lexicon:
    """Union of the builtin tables and any number of `.lex` files."""
    lex = builtin_lexicon()
    merged = {name: set(lex.table(name)) for name in ALL_TABLES}
    for path in paths:
        path = Path(path)
        parsed = parse_lexicon_file(path.read_text(encoding="utf-8"), source=str(path))
        for name, entries in parsed.items():
            merged[name].update(entries)
    return Lexicon(**{name: frozenset(entries) for name, entries in merged.items()})


def load_dir(directory: str | Path) -> Lexicon:
    """Load all `*.lex` files from a directory, sorted by file name."""
    return load(sorted(Path(directory).glob("*.lex")))


def serialize(lex: Lexicon) -> str:
    out: list[str] = []
    for name in ALL_TABLES:
        entries = sorted(lex.table(name))
        if not entries:
            continue
        out.append(f"[{name}]")
        out.extend(entries)
        out.append("")
    return "\n".join(out)


def add_entry(lex: Lexicon, delta: LexiconDelta) -> Lexicon:
    """Return a lexicon with the entry added (set semantics: adding twice is a no-op)."""
    entry = _normalize_entry(delta.table, delta.entry)
    table = lex.table(delta.table)
    if entry in table:
        return lex
    return replace(lex, **{delta.table: table | {entry}})


def append_learned(path: str | Path, delta: LexiconDelta) -> None:
    """Persist a learned entry to the user-file layer (appends to a .lex file)."""
    path = Path(path)
    entry = _normalize_entry(delta.table, delta.entry)
    existing = path.read_text(encoding="utf-8") if path.exists() else ""
    parsed = parse_lexicon_file(existing, source=str(path)) if existing else {}
    if entry in parsed.get(delta.table, set()):
        return
    with path.open("a", encoding="utf-8") as fh:
        fh.write(f"[{delta.table}]\n{entry}\n")


def _folded_at(tokens, index: int) -> str:
    tok = tokens[index]
    return fold(tok) if isinstance(tok, str) else tok.folded


def match_prefix_all(lex: Lexicon, tokens, at: int, max_len: int = 4) -> tuple[list[str], int]:
    """All prefix tables matching the longest phrase at `at`.

    Returns ([], 0) when nothing matches. Multiword entries win over shorter
    ones across *all* tables ("de la" in pref_where beats "de" in pref_io).
    """
    if not 0 <= at < len(tokens):
        raise IndexError(at)
    limit = min(max_len, len(tokens) - at)
    for length in range(limit, 0, -1):
        phrase = " ".join(_folded_at(tokens, at + k) for k in range(length))
        hits = [name for name in PREFIX_TABLES if phrase in lex.table(name)]
        if hits:
            return hits, length
    return [], 0


def match_prefix(lex: Lexicon, tokens, at: int) -> tuple[str, int] | None:
    """Longest-match across all prefix tables starting at `at`.

    Ties between tables at the same phrase length are broken by PREFIX_TABLES
    order; callers that disambiguate by context use `match_prefix_all`.
    """
    hits, length = match_prefix_all(lex, tokens, at)
    if not hits:
        return None
    return hits[0], length
