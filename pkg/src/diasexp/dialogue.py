"""The dialogue loop shared by the REPL and the HTTP service: one utterance in,
one typed result out (recorded record, answer list, clarification request, or
error), with at most one clarification pending at a time."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import analyzer, qa
from .analyzer import AnalysisOutcome, Clarification, ResolutionMemory, Role
from .factstore import SentenceRecord, Story, append
from .lexicon import Lexicon, add_entry, builtin_lexicon
from .textnorm import (
    EmptyInput,
    SentenceKind,
    classify_sentence,
    normalize,
    tokenize,
)


@dataclass
class SubmitResult:
    kind: str  # "recorded" | "answers" | "clarify" | "error"
    record: SentenceRecord | None = None
    answers: list[str] = field(default_factory=list)
    clarification: Clarification | None = None
    message: str = ""


class PendingClarificationError(RuntimeError):
    """An utterance arrived while a clarification is open."""


class DialogueSession:
    """One user's story-building conversation. Not thread-safe by itself;
    callers serialize access per session."""

    def __init__(
        self,
        lexicon: Lexicon | None = None,
        story: Story | None = None,
        memory: ResolutionMemory | None = None,
    ):
        self.lexicon = lexicon or builtin_lexicon()
        self.story = story if story is not None else Story()
        # a story carries its learned vocabulary; reapply it on attach
        for delta in self.story.lexicon_deltas:
            self.lexicon = add_entry(self.lexicon, delta)
        self.memory = memory or ResolutionMemory.from_dict(
            self.story.memory if story is not None else {}
        )
        self.pending: AnalysisOutcome | None = None

    # -- dialogue steps ------------------------------------------------------

    def submit(self, text: str) -> SubmitResult:
        """Handle one sentence; assertions are analyzed and stored, questions
        are answered from the story."""
        if self.pending is not None:
            raise PendingClarificationError(
                "a clarification is pending; answer it first"
            )
        tokens = tokenize(normalize(text))
        try:
            kind = classify_sentence(tokens)
        except EmptyInput:
            return SubmitResult(kind="error", message="empty sentence")

        if kind is SentenceKind.INTERROGATIVE:
            try:
                question = qa.parse_question(tokens, self.lexicon, self.memory)
            except (qa.UnknownWhWord, analyzer.AnalysisError) as exc:
                return SubmitResult(kind="error", message=str(exc))
            return SubmitResult(kind="answers", answers=qa.answer(question, self.story))

        try:
            outcome = analyzer.analyze(tokens, self.lexicon, self.memory)
        except analyzer.AnalysisError as exc:
            return SubmitResult(kind="error", message=str(exc))
        return self._after_analysis(outcome)

    def clarify(self, clarification_id: str, choice: Role) -> SubmitResult:
        """Answer the open clarification with one of its offered roles."""
        if self.pending is None:
            raise analyzer.UnknownClarification("no clarification is pending")
        outcome, self.memory = analyzer.resolve_clarification(
            self.pending, clarification_id, choice, self.memory, self.lexicon
        )
        self.pending = None
        return self._after_analysis(outcome)

    def _after_analysis(self, outcome: AnalysisOutcome) -> SubmitResult:
        if outcome.pending:
            self.pending = outcome
            return SubmitResult(kind="clarify", clarification=outcome.clarification)
        append(self.story, outcome.record)
        self.story.memory = self.memory.to_dict()
        return SubmitResult(kind="recorded", record=self.story.records[-1])
