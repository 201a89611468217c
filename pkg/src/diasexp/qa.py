"""Interrogative sentences: map a question word to a target field, read the
rest of the question as constraints, match records, and render answers.

Matching is folded and structural: predicates compare by auxiliary sequence
plus head verb (clitics and negation are transparent, present-tense copula
forms are interchangeable), all other fields compare as folded strings.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import analyzer
from .analyzer import Role, AUXILIARIES, CLITIC_PRONOUNS, NEGATION
from .factstore import ROLE_FIELDS, Story
from .lexicon import Lexicon
from .textnorm import Token, TokenKind, fold, normalize, tokenize

NO_ANSWER = "Nu am găsit niciun răspuns."

#: Present-tense copula forms treated as one head during matching.
_COPULA_HEADS = frozenset({"este", "e", "sunt", "esti", "fi"})

#: A bare-copula question ("Cum este X?") retrieves unconditioned predicatives:
#: records whose predicative is tied to an indirect object or a time adverbial
#: do not answer it.
_COPULAR_BLOCKERS = ("indir_obj", "when")

#: wh-phrase -> (canonical name, target field); None resolves by copularity.
_WH_TABLE: dict[str, tuple[str, Role | None]] = {
    "cine": ("Cine", Role.SUBJECT),
    "pe cine": ("PeCine", Role.DIR_OBJ),
    "ce": ("Ce", Role.DIR_OBJ),
    "cui": ("Cui", Role.INDIR_OBJ),
    "cum": ("Cum", None),  # manner, or the predicative after a copula
    "unde": ("Unde", Role.WHERE),
    "cand": ("Când", Role.WHEN),
    "de ce": ("DeCe", Role.WHY),
    "pentru ce": ("PentruCe", Role.GOAL),
}


class UnknownWhWord(ValueError):
    pass


@dataclass(frozen=True)
class Question:
    wh: str
    target_field: Role
    constraints: dict[str, str]
    raw: str
    copular: bool = False


def head_verb(predicate: str) -> str:
    """Folded head of a verb group: clitics, auxiliaries and negation stripped.

    "nu iubește" -> "iubește", "îl vor invita" -> "invita", "este" -> "este".
    """
    words = [fold(w) for w in predicate.split()]
    if not words:
        raise ValueError("empty predicate")
    content = [w for w in words if not _is_marker_word(w)]
    return content[-1] if content else words[-1]


def _is_marker_word(word: str) -> bool:
    if word in AUXILIARIES or word in CLITIC_PRONOUNS or word in NEGATION:
        return True
    if "-" in word:
        parts = [p for p in word.split("-") if p]
        extras = AUXILIARIES | CLITIC_PRONOUNS | {"s", "n", "i", "si", "v"}
        return bool(parts) and all(p in extras for p in parts)
    return False


def _aux_sequence(predicate: str) -> tuple[str, ...]:
    out = []
    for w in predicate.split():
        w = fold(w)
        if w in AUXILIARIES:
            out.append(w)
        elif "-" in w and _is_marker_word(w):
            out.append(w)
    return tuple(out)


def predicate_matches(stored: str, wanted: str) -> bool:
    """Same auxiliary sequence and same head; "e"/"este"/"sunt" unify but
    "va fi" stays distinct from "este" (different tense)."""
    stored_head = head_verb(stored)
    wanted_head = head_verb(wanted)
    if stored_head in _COPULA_HEADS and wanted_head in _COPULA_HEADS:
        heads_equal = True
    else:
        heads_equal = stored_head == wanted_head
    return heads_equal and _aux_sequence(stored) == _aux_sequence(wanted)


def is_bare_copula(predicate: str) -> bool:
    return head_verb(predicate) in _COPULA_HEADS and not _aux_sequence(predicate)


def parse_question(
    tokens: list[Token], lex: Lexicon, mem: analyzer.ResolutionMemory
) -> Question:
    """Consume the wh-phrase, analyze the remainder into constraints."""
    words = [(idx, t) for idx, t in enumerate(tokens) if t.kind is TokenKind.WORD]
    if not words:
        raise UnknownWhWord("empty question")
    wh_key = None
    consumed = 0
    if len(words) >= 2:
        bigram = f"{words[0][1].folded} {words[1][1].folded}"
        if bigram in _WH_TABLE:
            wh_key, consumed = bigram, 2
    if wh_key is None:
        unigram = words[0][1].folded
        if unigram in _WH_TABLE:
            wh_key, consumed = unigram, 1
    if wh_key is None:
        raise UnknownWhWord(words[0][1].surface)

    rest_start = words[consumed - 1][0] + 1 if consumed <= len(words) else len(tokens)
    remainder = tokens[rest_start:]
    constituents, copular = analyzer.analyze_question_body(remainder, lex, mem)

    constraints: dict[str, str] = {}
    for const in constituents:
        constraints.setdefault(const.role.value, const.text)

    name, target = _WH_TABLE[wh_key]
    if target is None:  # "cum"
        target = Role.DIR_OBJ if copular else Role.HOW
    constraints.pop(target.value, None)

    raw = " ".join(t.surface for t in tokens)
    return Question(
        wh=name, target_field=target, constraints=constraints, raw=raw, copular=copular
    )


def parse_question_text(
    text: str, lex: Lexicon, mem: analyzer.ResolutionMemory
) -> Question:
    return parse_question(tokenize(normalize(text)), lex, mem)


def answer(q: Question, story: Story) -> list[str]:
    """Render one answer sentence per matching record, deduplicated in story
    order; a fixed no-answer sentence when nothing matches."""
    wanted_predicate = q.constraints.get("predicate")
    strict_copular = wanted_predicate is not None and is_bare_copula(wanted_predicate)

    rendered: list[str] = []
    seen: set[str] = set()
    for record in story.records:
        if not _record_matches(record, q, strict_copular):
            continue
        sentence = _render(record, q)
        if sentence not in seen:
            seen.add(sentence)
            rendered.append(sentence)
    return rendered if rendered else [NO_ANSWER]


def _record_matches(record, q: Question, strict_copular: bool) -> bool:
    target = q.target_field.value
    if not getattr(record, target):
        return False
    for field_name, want in q.constraints.items():
        if field_name == "predicate":
            if not record.predicate or not predicate_matches(record.predicate, want):
                return False
        else:
            have = record.folded(field_name)
            if have is None or have != fold(want):
                return False
    if strict_copular:
        for blocker in _COPULAR_BLOCKERS:
            if blocker == target or blocker in q.constraints:
                continue
            if getattr(record, blocker):
                return False
    return True


def _render(record, q: Question) -> str:
    tail_fields = {q.target_field.value}
    tail_fields.update(q.constraints)
    tail_fields -= {"subject", "predicate"}  # always lead the sentence
    ordered = [name for name in ROLE_FIELDS if name in tail_fields]
    # the indirect object reads before the direct object ("va dărui Elenei o floare")
    if "dir_obj" in ordered and "indir_obj" in ordered:
        ordered.remove("indir_obj")
        ordered.insert(ordered.index("dir_obj"), "indir_obj")

    parts: list[str] = []
    if record.subject:
        parts.append(record.subject)
    if record.predicate:
        parts.append(_render_predicate(record.predicate))
    for name in ordered:
        value = getattr(record, name)
        if value:
            parts.append(value)
    sentence = " ".join(parts).strip() + "."
    return sentence[0].upper() + sentence[1:] if sentence else sentence


def _render_predicate(predicate: str) -> str:
    """Drop clitic pronouns for readability and spell the bare copula out
    ("e" -> "este"); negation and auxiliaries stay."""
    kept = []
    for w in predicate.split():
        f = fold(w)
        if f in CLITIC_PRONOUNS:
            continue
        kept.append("este" if f == "e" else w)
    return " ".join(kept) if kept else predicate
