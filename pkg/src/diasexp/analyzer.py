"""Staged pattern-based constituent analysis of assertive sentences.

The pipeline mirrors how the indicator approach reads a sentence:

1. split the sentence at commas into segments;
2. locate the predicate group (copula forms, or auxiliary/clitic/negation
   markers plus a head verb, or the first bare word after the subject zone);
3. scan each post-predicate position for indicator prefixes: cause/goal/place/
   time/manner prefixes consume to the segment end, object prefixes consume the
   indicator plus one noun word, attribute prefixes open an attribute group;
4. classify remaining articled nouns by their endings (t_do -> direct object,
   t_io -> indirect object, t_pos -> possessive attribute of the neighbour);
5. the words before the predicate form the subject plus its attributes, and
   after a copula the first bare group is the predicative, stored in the
   direct-object column.

A word left with two or three live role hypotheses becomes a clarification
request; answers are remembered by context key so the same situation is never
asked twice.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .factstore import SentenceRecord
from .lexicon import Lexicon, match_prefix_all
from .morphology import analyze_ending
from .textnorm import Token, TokenKind


class AnalysisError(ValueError):
    pass


class EmptySentence(AnalysisError):
    pass


class NoPredicate(AnalysisError):
    pass


class UnknownClarification(KeyError):
    pass


class InvalidChoice(ValueError):
    pass


class Role(str, enum.Enum):
    SUBJECT = "subject"
    ATTRIB_SUB = "attrib_sub"
    PREDICATE = "predicate"
    DIR_OBJ = "dir_obj"
    ATTRIBUTE_DO = "attribute_do"
    INDIR_OBJ = "indir_obj"
    ATTRIBUTE_IO = "attribute_io"
    WHEN = "when"
    WHERE = "where"
    HOW = "how"
    GOAL = "goal"
    WHY = "why"


#: Human-facing option labels for clarification prompts.
ROLE_LABELS = {
    Role.SUBJECT: "subject",
    Role.ATTRIB_SUB: "attribute of the subject",
    Role.PREDICATE: "predicate",
    Role.DIR_OBJ: "direct object",
    Role.ATTRIBUTE_DO: "attribute of the direct object",
    Role.INDIR_OBJ: "indirect object",
    Role.ATTRIBUTE_IO: "attribute of the indirect object",
    Role.WHEN: "time adverbial",
    Role.WHERE: "place adverbial",
    Role.HOW: "manner adverbial",
    Role.GOAL: "goal adverbial",
    Role.WHY: "cause adverbial",
}

NOMINAL_ROLES = frozenset({Role.SUBJECT, Role.DIR_OBJ, Role.INDIR_OBJ})
ATTRIBUTE_OF = {
    Role.SUBJECT: Role.ATTRIB_SUB,
    Role.DIR_OBJ: Role.ATTRIBUTE_DO,
    Role.INDIR_OBJ: Role.ATTRIBUTE_IO,
}
ATTRIBUTE_ROLES = frozenset(ATTRIBUTE_OF.values())
ADVERBIAL_PREFIX_ROLE = {
    "pref_where": Role.WHERE,
    "pref_when": Role.WHEN,
    "pref_how": Role.HOW,
    "pref_goal": Role.GOAL,
    "pref_why": Role.WHY,
}
ADVERB_LIST_ROLE = {
    "adv_where": Role.WHERE,
    "adv_when": Role.WHEN,
    "adv_how": Role.HOW,
}

# Verb-group markers (folded). These are absorbed into the predicate field,
# which is why stored predicates look like "îl vor invita" or "nu iubește".
AUXILIARIES = frozenset(
    {"va", "vor", "au", "am", "ai", "ati", "a", "ar", "as", "vom", "veti", "voi"}
)
CLITIC_PRONOUNS = frozenset(
    {"o", "il", "ii", "le", "se", "ne", "ma", "te", "mi", "ti", "ni", "vi", "li", "isi"}
)
NEGATION = frozenset({"nu"})
_HYPHEN_PARTS = AUXILIARIES | CLITIC_PRONOUNS | {"s", "n", "i", "si", "v"}


@dataclass(frozen=True)
class Constituent:
    role: Role
    text: str
    token_range: tuple[int, int]  # inclusive word-token indices
    trigger: str  # "position", "to-be-form", "prefix:<table>", "ending:<table>",
    #               "adverb:<table>", "user-choice"


@dataclass(frozen=True)
class Clarification:
    id: str
    word_range: tuple[int, int]
    prompt: str
    options: tuple[Role, ...]  # 2 or 3 distinct roles
    context_key: str


@dataclass(frozen=True)
class ResolutionMemory:
    """Learned clarification answers, keyed by (trigger, neighbour role,
    copular flag). Lookups are exact; persists across sessions via stories."""

    entries: tuple[tuple[str, str], ...] = ()

    def lookup(self, key: str) -> Role | None:
        for k, v in self.entries:
            if k == key:
                return Role(v)
        return None

    def remember(self, key: str, role: Role) -> "ResolutionMemory":
        if self.lookup(key) == role:
            return self
        kept = tuple((k, v) for k, v in self.entries if k != key)
        return ResolutionMemory(entries=kept + ((key, role.value),))

    def to_dict(self) -> dict[str, str]:
        return dict(self.entries)

    @classmethod
    def from_dict(cls, data: dict[str, str]) -> "ResolutionMemory":
        return cls(entries=tuple(data.items()))


@dataclass(frozen=True)
class AnalysisOutcome:
    record: SentenceRecord | None = None
    clarification: Clarification | None = None
    deferred: tuple[tuple[str, tuple[Role, ...]], ...] = ()
    _resume: "_ResumeState | None" = field(default=None, compare=False)

    @property
    def pending(self) -> bool:
        return self.clarification is not None


@dataclass(frozen=True)
class _ResumeState:
    tokens: tuple[Token, ...]
    overrides: tuple[tuple[int, str], ...]


class _NeedsClarification(Exception):
    def __init__(self, clarification: Clarification):
        self.clarification = clarification


class _DeferWord(Exception):
    def __init__(self, index: int, word: str, options: tuple[Role, ...]):
        self.index = index
        self.word = word
        self.options = options


def _is_marker(token: Token) -> bool:
    word = token.folded
    if word in AUXILIARIES or word in CLITIC_PRONOUNS or word in NEGATION:
        return True
    if "-" in word:
        parts = [p for p in word.split("-") if p]
        return bool(parts) and all(p in _HYPHEN_PARTS for p in parts)
    return False


def _is_capitalized(token: Token) -> bool:
    return bool(token.surface) and token.surface[0].isupper()


class _Scanner:
    """Single pass over one sentence. Raises _NeedsClarification (or _DeferWord
    in deferred mode) when a word keeps two or more live hypotheses."""

    def __init__(
        self,
        tokens: list[Token],
        lex: Lexicon,
        mem: ResolutionMemory,
        overrides: dict[int, Role],
        skipped: frozenset[int] = frozenset(),
        question_mode: bool = False,
        defer: bool = False,
    ):
        self.words = [t for t in tokens if t.kind is TokenKind.WORD]
        self.lex = lex
        self.mem = mem
        self.overrides = overrides
        self.skipped = skipped
        self.question_mode = question_mode
        self.defer = defer
        self.segments = self._split_segments(tokens)
        self.constituents: list[Constituent] = []
        self.copular = False
        # post-predicate adjacency state (reset at segment boundaries)
        self.last_nominal: Constituent | None = None
        self.last_const: Constituent | None = None

    # -- plumbing -----------------------------------------------------------

    @staticmethod
    def _split_segments(tokens: list[Token]) -> list[tuple[int, int]]:
        """Comma-delimited [first, last] word-index ranges."""
        segments = []
        start = 0
        word_idx = -1
        for tok in tokens:
            if tok.kind is TokenKind.WORD:
                word_idx += 1
            elif tok.kind is TokenKind.COMMA:
                if word_idx >= start:
                    segments.append((start, word_idx))
                start = word_idx + 1
        if word_idx >= start:
            segments.append((start, word_idx))
        return segments

    def _surface(self, first: int, last: int) -> str:
        return " ".join(w.surface for w in self.words[first : last + 1])

    def _add(self, role: Role, first: int, last: int, trigger: str) -> Constituent:
        const = Constituent(
            role=role, text=self._surface(first, last), token_range=(first, last),
            trigger=trigger,
        )
        self.constituents.append(const)
        self.last_const = const
        if role in NOMINAL_ROLES:
            self.last_nominal = const
        return const

    def _extend(self, const: Constituent, last: int) -> Constituent:
        grown = replace(
            const,
            text=self._surface(const.token_range[0], last),
            token_range=(const.token_range[0], last),
        )
        self.constituents[self.constituents.index(const)] = grown
        if self.last_const is const:
            self.last_const = grown
        if self.last_nominal is const:
            self.last_nominal = grown
        return grown

    def _filled(self, role: Role) -> bool:
        return any(c.role is role for c in self.constituents)

    def _segment_end(self, i: int) -> int:
        for first, last in self.segments:
            if first <= i <= last:
                return last
        return len(self.words) - 1

    def _prefix_at(self, i: int) -> tuple[list[str], int]:
        seg_end = self._segment_end(i)
        window = self.words[i : seg_end + 1]
        return match_prefix_all(self.lex, window, 0) if window else ([], 0)

    def _in_adverb_lists(self, folded: str) -> str | None:
        for table in ("adv_where", "adv_when", "adv_how"):
            if folded in self.lex.table(table):
                return table
        return None

    def _is_plain(self, i: int) -> bool:
        """No trigger of any kind fires at word i."""
        w = self.words[i]
        if _is_marker(w) or w.folded in self.lex.forms_of_to_be:
            return False
        if self._prefix_at(i)[0]:
            return False
        if self._in_adverb_lists(w.folded):
            return False
        if w.folded in self.lex.adjectives or w.folded in self.lex.possession_words:
            return False
        if analyze_ending(w.surface, self.lex):
            return False
        return True

    # -- predicate ----------------------------------------------------------

    def find_predicate(self) -> tuple[int, int]:
        """Return the [first, last] word range of the predicate group."""
        if not self.words:
            raise EmptySentence("no words to analyze")
        if self.question_mode:
            return self._absorb_predicate(0)

        seg_last = self.segments[0][1]
        i = self._subject_span() + 1
        while i <= seg_last:
            w = self.words[i]
            if _is_marker(w) or w.folded in self.lex.forms_of_to_be:
                return self._absorb_predicate(i)
            hits, length = self._prefix_at(i)
            if "pref_attrib" in hits:
                i = self._attr_group_end(i, length, seg_last) + 1
                continue
            if w.folded in self.lex.adjectives or w.folded in self.lex.possession_words:
                i += 1
                continue
            ea = analyze_ending(w.surface, self.lex)
            if ea and (ea.tables & {"t_pos", "t_io"}) and _is_capitalized(w):
                i += 1
                continue
            # a plain word right after the subject zone is the bare verb
            return self._absorb_predicate(i)
        # predicate not in the first segment: later segments opening with a
        # marker or copula hold it; bare-opening segments are appositions
        bare_candidates = []
        for first, _ in self.segments[1:]:
            head = self.words[first]
            if _is_marker(head) or head.folded in self.lex.forms_of_to_be:
                return self._absorb_predicate(first)
            if self._is_plain(first):
                bare_candidates.append(first)
        if bare_candidates:
            return self._absorb_predicate(bare_candidates[-1])
        raise NoPredicate(
            f"no verb group found in: {self._surface(0, len(self.words) - 1)!r}"
        )

    def _subject_span(self) -> int:
        """Last word index of the simple subject (an indefinite article is
        absorbed within its segment: "O fată ..." keeps "o fată" together)."""
        first, seg_last = self.segments[0]
        w = self.words[first]
        if w.folded in {"o", "un"} and first + 1 <= seg_last:
            nxt = self.words[first + 1]
            if not _is_marker(nxt) and nxt.folded not in self.lex.forms_of_to_be:
                return first + 1
        return first

    def _absorb_predicate(self, start: int) -> tuple[int, int]:
        """Greedily absorb negation/clitics/auxiliaries, then one head word."""
        end = self._segment_end(start)
        i = start
        while i <= end:
            w = self.words[i]
            if w.folded in self.lex.forms_of_to_be:
                self.copular = True
                return (start, i)
            if _is_marker(w):
                i += 1
                continue
            return (start, i)  # plain head verb
        raise NoPredicate("verb group has no head word")

    def _attr_group_end(self, i: int, pref_len: int, seg_last: int) -> int:
        """Attribute groups run from the prefix over plain-ish words up to the
        next trigger or segment end (endings and adjectives stay inside)."""
        j = i + pref_len - 1
        while j + 1 <= seg_last:
            nxt = self.words[j + 1]
            if _is_marker(nxt) or nxt.folded in self.lex.forms_of_to_be:
                break
            if self._prefix_at(j + 1)[0]:
                break
            if self._in_adverb_lists(nxt.folded):
                break
            j += 1
        return j

    # -- main ---------------------------------------------------------------

    def run(self) -> None:
        pred_first, pred_last = self.find_predicate()
        pred_trigger = "to-be-form" if self.copular else "position"

        if not self.question_mode:
            subj_end = self._subject_span()
            self._add(Role.SUBJECT, self.segments[0][0], subj_end, "position")
            self._collect_pre_predicate(subj_end + 1, pred_first)

        self._add(Role.PREDICATE, pred_first, pred_last, pred_trigger)

        for seg_first, seg_last in self.segments:
            start = max(seg_first, pred_last + 1)
            if start > seg_last:
                continue  # segment lies before or inside the predicate group
            self.last_nominal = None
            self.last_const = None
            i = start
            while i <= seg_last:
                i = self._classify(i, seg_last)

    def _collect_pre_predicate(self, start: int, pred_first: int) -> None:
        i = start
        while i < pred_first:
            w = self.words[i]
            seg_last = min(self._segment_end(i), pred_first - 1)
            hits, length = self._prefix_at(i)
            if "pref_attrib" in hits:
                end = min(self._attr_group_end(i, length, seg_last), pred_first - 1)
                self._add(Role.ATTRIB_SUB, i, end, "prefix:pref_attrib")
                i = end + 1
                continue
            if w.folded in self.lex.possession_words:
                self._add(Role.ATTRIB_SUB, i, i, "adverb:possession_words")
                i += 1
                continue
            if w.folded in self.lex.adjectives:
                self._add(Role.ATTRIB_SUB, i, i, "adverb:adjectives")
                i += 1
                continue
            ea = analyze_ending(w.surface, self.lex)
            if ea and (ea.tables & {"t_pos", "t_io"}) and _is_capitalized(w):
                table = "t_pos" if "t_pos" in ea.tables else "t_io"
                self._add(Role.ATTRIB_SUB, i, i, f"ending:{table}")
                i += 1
                continue
            # apposition segments and leftovers before the predicate
            self._add(Role.ATTRIB_SUB, i, seg_last, "position")
            i = seg_last + 1

    def _classify(self, i: int, seg_last: int) -> int:
        if i in self.skipped:
            # a deferred ambiguous word breaks adjacency: nothing may extend
            # across the hole it leaves
            self.last_nominal = None
            self.last_const = None
            return i + 1
        w = self.words[i]
        forced = self.overrides.get(i)

        hits, length = self._prefix_at(i)
        if hits:
            return self._handle_prefix(i, hits, length, seg_last, forced)

        if forced is not None:
            self._assign_role(i, forced, "user-choice")
            return i + 1

        if w.folded in self.lex.possession_words:
            self._attach_attribute(i, i, "adverb:possession_words")
            return i + 1

        adv_table = self._in_adverb_lists(w.folded)
        if adv_table is not None:
            # "este bine făcut": a manner adverb gluing a following plain word
            # right after a copula is part of the predicative, not an adverbial
            if (
                adv_table == "adv_how"
                and self.copular
                and self.last_const is None
                and not self._filled(Role.DIR_OBJ)
                and i + 1 <= seg_last
                and self._is_plain(i + 1)
            ):
                self._open_bare(i)
                return i + 1
            self._add(ADVERB_LIST_ROLE[adv_table], i, i, f"adverb:{adv_table}")
            return i + 1

        if w.folded in self.lex.adjectives:
            if self.last_nominal is not None:
                self._attach_attribute(i, i, "adverb:adjectives")
            else:
                self._open_bare(i)
            return i + 1

        ea = analyze_ending(w.surface, self.lex)
        if ea and self._handle_ending(i, ea):
            return i + 1

        return self._handle_plain(i)

    def _handle_plain(self, i: int) -> int:
        w = self.words[i]
        if (
            self.question_mode
            and _is_capitalized(w)
            and not self._filled(Role.SUBJECT)
        ):
            # questions put the subject after the predicate
            self._add(Role.SUBJECT, i, i, "position")
            return i + 1
        last = self.last_const
        if last is not None:
            if last.role is Role.DIR_OBJ and last.trigger.startswith("position"):
                self._extend(last, i)  # open bare group grows
                return i + 1
            if last.role in ATTRIBUTE_ROLES:
                self._extend(last, i)
                return i + 1
            if last.role in NOMINAL_ROLES:
                self._attach_attribute(i, i, "position")
                return i + 1
        if not self._filled(Role.DIR_OBJ):
            self._open_bare(i)
            return i + 1
        if last is not None:
            self._extend(last, i)
            return i + 1
        self._attach_attribute(i, i, "position")
        return i + 1

    def _open_bare(self, i: int) -> None:
        trigger = "position-after-copula" if self.copular else "position"
        self._add(Role.DIR_OBJ, i, i, trigger)

    def _attach_attribute(self, first: int, last: int, trigger: str) -> None:
        host = self.last_nominal.role if self.last_nominal is not None else Role.SUBJECT
        attr_role = ATTRIBUTE_OF.get(host, Role.ATTRIBUTE_DO)
        const = Constituent(
            role=attr_role, text=self._surface(first, last),
            token_range=(first, last), trigger=trigger,
        )
        self.constituents.append(const)
        self.last_const = const

    def _assign_role(self, i: int, role: Role, trigger: str) -> None:
        if role in ATTRIBUTE_ROLES:
            self._attach_attribute(i, i, trigger)
        else:
            self._add(role, i, i, trigger)

    # -- prefix handling ----------------------------------------------------

    def _handle_prefix(
        self, i: int, hits: list[str], length: int, seg_last: int, forced: Role | None
    ) -> int:
        table = self._resolve_prefix_table(i, hits, length, forced)
        if table in ADVERBIAL_PREFIX_ROLE:
            self._add(ADVERBIAL_PREFIX_ROLE[table], i, seg_last, f"prefix:{table}")
            self.last_nominal = None
            return seg_last + 1
        if table in ("pref_do", "pref_io"):
            end = i + length if i + length <= seg_last else seg_last
            if table == "pref_do":
                role = Role.DIR_OBJ if not self._filled(Role.DIR_OBJ) else (
                    Role.INDIR_OBJ if not self._filled(Role.INDIR_OBJ)
                    else Role.ATTRIBUTE_DO
                )
            else:
                role = (
                    Role.INDIR_OBJ
                    if not self._filled(Role.INDIR_OBJ)
                    else Role.ATTRIBUTE_IO
                )
            if role in ATTRIBUTE_ROLES:
                self._attach_attribute(i, end, f"prefix:{table}")
            else:
                self._add(role, i, end, f"prefix:{table}")
            return end + 1
        # pref_attrib: attribute group over the following plain words
        end = self._attr_group_end(i, length, seg_last)
        if self.last_const is None and not self._filled(Role.DIR_OBJ):
            self._open_bare(i)
            self._extend(self.last_const, end)
        else:
            self._attach_attribute(i, end, "prefix:pref_attrib")
        return end + 1

    def _resolve_prefix_table(
        self, i: int, hits: list[str], length: int, forced: Role | None
    ) -> str:
        if len(hits) == 1:
            return hits[0]
        if forced is not None:
            for table in hits:
                if ADVERBIAL_PREFIX_ROLE.get(table) is forced:
                    return table
                if table == "pref_do" and forced is Role.DIR_OBJ:
                    return table
                if table == "pref_io" and forced is Role.INDIR_OBJ:
                    return table
                if table == "pref_attrib" and forced in ATTRIBUTE_ROLES:
                    return table

        if "pref_attrib" in hits:
            # "de"/"cu"/"din" read as an attribute right after an articled or
            # pe-marked noun, otherwise as the object/place prefix
            after_nominal_object = self.last_nominal is not None and (
                self.last_nominal.trigger.startswith("ending:")
                or self.last_nominal.trigger == "prefix:pref_do"
                or self.last_nominal.trigger == "user-choice"
            )
            others = [t for t in hits if t != "pref_attrib"]
            return "pref_attrib" if after_nominal_object else others[0]

        if "pref_do" in hits and "pref_when" in hits:
            # "pe": direct object when a noun follows, time phrase otherwise
            nxt = self.words[i + length] if i + length < len(self.words) else None
            if nxt is not None and (
                _is_capitalized(nxt) or analyze_ending(nxt.surface, self.lex)
            ):
                return "pref_do"
            key = self._context_key(self.words[i].folded)
            remembered = self.mem.lookup(key)
            if remembered is Role.DIR_OBJ:
                return "pref_do"
            if remembered is Role.WHEN:
                return "pref_when"
            if self.question_mode:
                return "pref_do"
            self._request_clarification(i, (Role.DIR_OBJ, Role.WHEN), key)
        return hits[0]

    # -- endings ------------------------------------------------------------

    def _handle_ending(self, i: int, ea) -> bool:
        w = self.words[i]
        live: list[tuple[Role, str]] = []
        if "t_io" in ea.tables and not self._filled(Role.INDIR_OBJ):
            live.append((Role.INDIR_OBJ, "ending:t_io"))
        if "t_pos" in ea.tables and self.last_nominal is not None:
            live.append((ATTRIBUTE_OF[self.last_nominal.role], "ending:t_pos"))
        if "t_do" in ea.tables and not self._filled(Role.DIR_OBJ):
            live.append((Role.DIR_OBJ, "ending:t_do"))
        if not live:
            return False

        if _is_capitalized(w):
            # mid-sentence capitalized nouns ("Elenei") read as indirect objects
            if len(live) > 1 or self.question_mode:
                for role, trigger in live:
                    if role is Role.INDIR_OBJ:
                        self._assign_role(i, role, trigger)
                        return True
            if self.question_mode and not self._filled(Role.SUBJECT):
                # a proper noun like "Elena" carries an article-like final -a
                # but is the inverted subject of the question, not an object
                return False

        if len(live) == 1:
            role, trigger = live[0]
            self._assign_role(i, role, trigger)
            return True

        key = self._context_key(ea.ending)
        remembered = self.mem.lookup(key)
        if remembered is not None and remembered in [r for r, _ in live]:
            self._assign_role(i, remembered, "user-choice")
            return True
        if self.question_mode:
            for wanted in (Role.INDIR_OBJ, Role.DIR_OBJ):
                for role, trigger in live:
                    if role is wanted:
                        self._assign_role(i, role, trigger)
                        return True
            self._assign_role(i, live[0][0], live[0][1])
            return True
        self._request_clarification(i, tuple(r for r, _ in live), key)
        return True  # not reached: _request_clarification always raises

    # -- clarifications -----------------------------------------------------

    def _context_key(self, trigger: str) -> str:
        prev = self.last_const.role.value if self.last_const is not None else "none"
        mode = "cop" if self.copular else "verb"
        return f"{trigger}|{prev}|{mode}"

    def _request_clarification(self, i: int, options: tuple[Role, ...], key: str) -> None:
        word = self.words[i].surface
        if self.defer:
            raise _DeferWord(i, word, options)
        labels = " / ".join(ROLE_LABELS[r] for r in options)
        raise _NeedsClarification(
            Clarification(
                id=f"q{i}",
                word_range=(i, i),
                prompt=f'Which part of the sentence is "{word}"? ({labels})',
                options=options,
                context_key=key,
            )
        )


def analyze(
    tokens: list[Token],
    lex: Lexicon,
    mem: ResolutionMemory,
    overrides: dict[int, Role] | None = None,
    defer: bool = False,
) -> AnalysisOutcome:
    """Analyze one assertive sentence into a record or a pending clarification.

    With `defer` set, ambiguities never interrupt: the ambiguous word is left
    out of the record and reported in `outcome.deferred`.
    """
    overrides = dict(overrides or {})
    skipped: set[int] = set()
    deferred: list[tuple[str, tuple[Role, ...]]] = []
    while True:
        scanner = _Scanner(
            tokens, lex, mem, overrides, skipped=frozenset(skipped), defer=defer
        )
        try:
            scanner.run()
        except _NeedsClarification as need:
            return AnalysisOutcome(
                clarification=need.clarification,
                _resume=_ResumeState(
                    tokens=tuple(tokens),
                    overrides=tuple((k, v.value) for k, v in overrides.items()),
                ),
            )
        except _DeferWord as skip:
            skipped.add(skip.index)
            deferred.append((skip.word, skip.options))
            continue
        return AnalysisOutcome(
            record=_build_record(scanner, tokens), deferred=tuple(deferred)
        )


def analyze_question_body(
    tokens: list[Token], lex: Lexicon, mem: ResolutionMemory
) -> tuple[list[Constituent], bool]:
    """Constituents of an interrogative remainder (after the wh-phrase).

    Questions never raise clarifications: ambiguous endings resolve toward the
    indirect object, and the subject may follow the predicate.
    """
    scanner = _Scanner(tokens, lex, mem, overrides={}, question_mode=True)
    scanner.run()
    return scanner.constituents, scanner.copular


def _build_record(scanner: _Scanner, tokens: list[Token]) -> SentenceRecord:
    parts: dict[str, list[Constituent]] = {}
    for const in scanner.constituents:
        parts.setdefault(const.role.value, []).append(const)
    fields_out = {
        name: " ".join(c.text for c in sorted(consts, key=lambda c: c.token_range[0]))
        for name, consts in parts.items()
    }
    raw = _reconstruct(tokens)
    provenance = tuple(
        (c.role.value, c.text, c.trigger)
        for c in sorted(scanner.constituents, key=lambda c: c.token_range[0])
    )
    return SentenceRecord(
        **fields_out,
        predicative=scanner.copular,
        raw=raw,
        constituents=provenance,
    )


def _reconstruct(tokens: list[Token]) -> str:
    out = []
    cursor = None
    for tok in tokens:
        if cursor is not None and tok.span[0] > cursor:
            out.append(" " * (tok.span[0] - cursor))
        out.append(tok.surface)
        cursor = tok.span[1]
    return "".join(out)


def resolve_clarification(
    outcome: AnalysisOutcome,
    clarification_id: str,
    choice: Role,
    mem: ResolutionMemory,
    lex: Lexicon,
) -> tuple[AnalysisOutcome, ResolutionMemory]:
    """Apply a user's choice, remember it, and resume the analysis."""
    clar = outcome.clarification
    if clar is None or outcome._resume is None:
        raise UnknownClarification("no clarification is pending")
    if clar.id != clarification_id:
        raise UnknownClarification(clarification_id)
    if choice not in clar.options:
        raise InvalidChoice(
            f"{choice.value} is not among: {', '.join(r.value for r in clar.options)}"
        )
    mem = mem.remember(clar.context_key, choice)
    overrides = {k: Role(v) for k, v in outcome._resume.overrides}
    overrides[clar.word_range[0]] = choice
    next_outcome = analyze(list(outcome._resume.tokens), lex, mem, overrides=overrides)
    return next_outcome, mem


def explain(record: SentenceRecord) -> list[tuple[str, str, str]]:
    """(role, text, trigger) per analyzed constituent, in sentence order."""
    if not record.constituents:
        raise ValueError("record has no retained analysis provenance")
    return [tuple(item) for item in record.constituents]
