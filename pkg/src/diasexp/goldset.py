"""Bundled reference data: the gold story, the reference questions, and
field-level accuracy scoring used by the batch command and the test suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .analyzer import ResolutionMemory, analyze, resolve_clarification
from .factstore import ROLE_FIELDS, FormatVersionError, SentenceRecord, Story, append
from .lexicon import Lexicon, builtin_lexicon
from .textnorm import fold, normalize, tokenize


@dataclass(frozen=True)
class GoldSentence:
    seq: int
    raw: str
    fields: dict[str, str]
    predicative: bool
    exclude: tuple[str, ...] = ()
    note: str | None = None


@dataclass
class ScoreReport:
    total_cells: int = 0
    correct_cells: int = 0
    excluded_cells: int = 0
    unresolved: int = 0
    per_field: dict[str, tuple[int, int]] = field(default_factory=dict)  # correct, total
    mismatches: list[tuple[int, str, str, str]] = field(default_factory=list)

    @property
    def accuracy(self) -> float:
        return self.correct_cells / self.total_cells if self.total_cells else 1.0

    def lines(self) -> list[str]:
        out = ["field          correct  total"]
        for name in ROLE_FIELDS:
            correct, total = self.per_field.get(name, (0, 0))
            out.append(f"{name:<15}{correct:>7}{total:>7}")
        out.append(
            f"overall cell accuracy: {self.accuracy:.3f} "
            f"({self.correct_cells}/{self.total_cells}, "
            f"{self.excluded_cells} annotated cells excluded, "
            f"{self.unresolved} unresolved ambiguities)"
        )
        return out


def _load_json(name: str) -> dict:
    return json.loads(resources.files("diasexp.data").joinpath(name).read_text("utf-8"))


def load_gold_sentences(path: str | Path | None = None) -> list[GoldSentence]:
    doc = (
        json.loads(Path(path).read_text(encoding="utf-8"))
        if path is not None
        else _load_json("gold_story.json")
    )
    sentences = []
    for item in doc.get("sentences", []):
        unknown = set(item.get("fields", {})) - set(ROLE_FIELDS)
        if unknown:
            raise FormatVersionError(f"unknown gold field names: {sorted(unknown)}")
        sentences.append(
            GoldSentence(
                seq=item["seq"],
                raw=item["raw"],
                fields=dict(item.get("fields", {})),
                predicative=bool(item.get("predicative", False)),
                exclude=tuple(item.get("exclude", ())),
                note=item.get("note"),
            )
        )
    return sentences


def load_reference_questions() -> list[tuple[str, list[str]]]:
    doc = _load_json("questions.json")
    return [(item["q"], list(item["answers"])) for item in doc["questions"]]


def replay_gold_story(
    lex: Lexicon | None = None,
    chooser=None,
) -> tuple[Story, ResolutionMemory, int]:
    """Analyze the gold sentences into a story.

    `chooser` is called with each Clarification and returns the chosen role;
    by default the first offered option wins. Returns (story, memory,
    clarification count).
    """
    lex = lex or builtin_lexicon()
    mem = ResolutionMemory()
    story = Story(name="gold")
    asked = 0
    for gold in load_gold_sentences():
        outcome = analyze(tokenize(normalize(gold.raw)), lex, mem)
        while outcome.pending:
            asked += 1
            clar = outcome.clarification
            pick = chooser(clar) if chooser is not None else clar.options[0]
            outcome, mem = resolve_clarification(outcome, clar.id, pick, mem, lex)
        append(story, outcome.record)
    story.memory = mem.to_dict()
    return story, mem, asked


def score_records(
    records: list[SentenceRecord], gold: list[GoldSentence], unresolved: int = 0
) -> ScoreReport:
    """Cell accuracy over the union of non-empty gold/predicted cells,
    folded comparison, annotated cells excluded."""
    report = ScoreReport(unresolved=unresolved)
    for record, sentence in zip(records, gold):
        for name in ROLE_FIELDS:
            want = sentence.fields.get(name, "")
            have = getattr(record, name) or ""
            if name in sentence.exclude:
                report.excluded_cells += 1
                continue
            if not want and not have:
                continue
            correct, total = report.per_field.get(name, (0, 0))
            ok = fold(want) == fold(have)
            report.per_field[name] = (correct + (1 if ok else 0), total + 1)
            report.total_cells += 1
            if ok:
                report.correct_cells += 1
            else:
                report.mismatches.append((sentence.seq, name, want, have))
    return report
