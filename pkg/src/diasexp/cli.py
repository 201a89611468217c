"""Command-line interface: the interactive REPL, one-shot analysis and
querying, batch scoring, the toy CYK demo, and the HTTP service launcher.

Exit codes: 0 success, 1 usage error, 2 data/format error.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from . import factstore, goldset, lexicon as lexmod, toygrammar
from .analyzer import ROLE_LABELS, analyze
from .dialogue import DialogueSession, PendingClarificationError
from .factstore import ROLE_FIELDS, FormatVersionError, StorageError, Story
from .lexicon import LexiconDelta, LexiconError
from .textnorm import normalize, tokenize

click.UsageError.exit_code = 1  # 2 is reserved for data/format errors

_PROMPT_PREFIXES = ("a:", "i:", "î:", "r:")


class DataError(click.ClickException):
    exit_code = 2

    def format_message(self) -> str:
        return f"E: {self.message}"


@dataclass
class ReplState:
    session: DialogueSession
    story_path: Path | None = None
    memory_path: Path | None = None
    learned_lex_path: Path | None = None
    verbose: bool = False
    done: bool = False


def _load_lexicon(lexicon_dir: str | None):
    if lexicon_dir:
        return lexmod.load_dir(lexicon_dir)
    return lexmod.builtin_lexicon()


def _load_story(path: str | None) -> Story:
    if not path:
        return Story()
    p = Path(path)
    if p.exists():
        return factstore.load(p)
    story = Story(name=p.stem)
    story.path = p
    return story


def _strip_prompt_prefix(line: str) -> str:
    lowered = line.lstrip().lower()
    for prefix in _PROMPT_PREFIXES:
        if lowered.startswith(prefix):
            return line.lstrip()[len(prefix):].strip()
    return line.strip()


def repl_step(state: ReplState, line: str) -> list[str]:
    """One REPL input line in, the printed lines out. State mutates in place;
    errors never change the story."""
    line = _strip_prompt_prefix(line)
    if not line:
        return []

    if state.session.pending is not None:
        if line == "/quit":
            state.done = True
            return []
        if not line.isdigit():
            return ["E: a clarification is pending; answer with the option number."]
        clar = state.session.pending.clarification
        n = int(line)
        if not 1 <= n <= len(clar.options):
            return [f"E: choose a number between 1 and {len(clar.options)}."]
        result = state.session.clarify(clar.id, clar.options[n - 1])
        return _render_result(state, result)

    if line.startswith("/"):
        return _run_command(state, line)

    try:
        result = state.session.submit(line)
    except PendingClarificationError as exc:
        return [f"E: {exc}"]
    return _render_result(state, result)


def _render_result(state: ReplState, result) -> list[str]:
    if result.kind == "error":
        return [f"E: {result.message}"]
    if result.kind == "answers":
        return [f"R: {a}" for a in result.answers]
    if result.kind == "clarify":
        clar = result.clarification
        options = "  ".join(
            f"{i}) {ROLE_LABELS[role]}" for i, role in enumerate(clar.options, start=1)
        )
        return [f"C: {clar.prompt}", f"C: {options}"]
    record = result.record
    lines = [f"OK (#{record.seq})."]
    if state.verbose:
        lines.extend(f"   {name}: {value}" for name, value in record.fields().items())
    return lines


def _run_command(state: ReplState, line: str) -> list[str]:
    parts = line.split()
    cmd, args = parts[0], parts[1:]
    if cmd == "/quit":
        state.done = True
        return []
    if cmd == "/save":
        path = Path(args[0]) if args else state.story_path
        if path is None:
            return ["E: /save needs a path (no story file is bound)."]
        try:
            factstore.save(state.session.story, path)
        except StorageError as exc:
            return [f"E: {exc}"]
        state.story_path = path
        if state.memory_path is not None:
            state.memory_path.write_text(
                json.dumps(state.session.memory.to_dict(), ensure_ascii=False, indent=1),
                encoding="utf-8",
            )
        return [f"Saved {len(state.session.story.records)} records to {path}."]
    if cmd == "/load":
        if not args:
            return ["E: /load needs a path."]
        try:
            story = factstore.load(args[0])
        except StorageError as exc:
            return [f"E: {exc}"]
        from .dialogue import DialogueSession

        state.session = DialogueSession(lexicon=state.session.lexicon, story=story)
        state.story_path = Path(args[0])
        return [f"Loaded {len(story.records)} records from {args[0]}."]
    if cmd == "/lexicon-add":
        if len(args) < 2:
            return ["E: /lexicon-add needs a table name and an entry."]
        delta = LexiconDelta(table=args[0], entry=" ".join(args[1:]), source="learned")
        try:
            state.session.lexicon = lexmod.add_entry(state.session.lexicon, delta)
            state.session.story.lexicon_deltas.append(delta)
            if state.learned_lex_path is not None:
                lexmod.append_learned(state.learned_lex_path, delta)
        except LexiconError as exc:
            return [f"E: {exc}"]
        return [f"Added to {args[0]}: {' '.join(args[1:])}."]
    return [f"E: unknown command {cmd}."]


@click.group()
def main() -> None:
    """Pattern-based syntactic analysis and dialogue for Romanian sentences."""


@main.command()
@click.option("--story", "story_path", type=click.Path(), default=None)
@click.option("--lexicon", "lexicon_dir", type=click.Path(exists=True, file_okay=False), default=None)
@click.option("--memory", "memory_path", type=click.Path(), default=None)
@click.option("--verbose", is_flag=True)
def repl(story_path, lexicon_dir, memory_path, verbose) -> None:
    """Interactive dialogue: assertions build the story, questions query it."""
    try:
        lex = _load_lexicon(lexicon_dir)
        story = _load_story(story_path)
    except (StorageError, LexiconError) as exc:
        raise DataError(str(exc))
    memory = None
    mem_path = Path(memory_path) if memory_path else None
    if mem_path is not None and mem_path.exists():
        from .analyzer import ResolutionMemory

        memory = ResolutionMemory.from_dict(
            json.loads(mem_path.read_text(encoding="utf-8"))
        )
    session = DialogueSession(lexicon=lex, story=story, memory=memory)
    learned = Path(lexicon_dir) / "learned.lex" if lexicon_dir else None
    state = ReplState(
        session=session,
        story_path=Path(story_path) if story_path else None,
        memory_path=mem_path,
        learned_lex_path=learned,
        verbose=verbose,
    )
    if verbose:
        click.echo(f"Lexicon: {lex.total_entries()} words, phrases and endings.")
    interactive = sys.stdin.isatty()
    while not state.done:
        if interactive:
            click.echo("> ", nl=False)
        line = sys.stdin.readline()
        if not line:
            break
        for out in repl_step(state, line.rstrip("\n")):
            click.echo(out)


@main.command("analyze")
@click.argument("sentence")
@click.option("--lexicon", "lexicon_dir", type=click.Path(exists=True, file_okay=False), default=None)
def analyze_cmd(sentence, lexicon_dir) -> None:
    """Print the twelve fields of one assertive sentence."""
    from .analyzer import AnalysisError, ResolutionMemory

    lex = _load_lexicon(lexicon_dir)
    try:
        outcome = analyze(tokenize(normalize(sentence)), lex, ResolutionMemory(), defer=True)
    except AnalysisError as exc:
        raise DataError(str(exc))
    record = outcome.record
    for name in ROLE_FIELDS:
        click.echo(f"{name}: {getattr(record, name) or ''}")
    click.echo(f"predicative: {str(record.predicative).lower()}")
    for word, options in outcome.deferred:
        labels = " / ".join(ROLE_LABELS[r] for r in options)
        click.echo(f"unresolved: {word} ({labels})")


@main.command()
@click.argument("question")
@click.option("--story", "story_path", required=True)
@click.option("--lexicon", "lexicon_dir", type=click.Path(exists=True, file_okay=False), default=None)
def ask(question, story_path, lexicon_dir) -> None:
    """Answer a question from a saved story ('gold' loads the bundled one)."""
    from . import qa
    from .analyzer import ResolutionMemory

    lex = _load_lexicon(lexicon_dir)
    try:
        if story_path == "gold":
            story, _, _ = goldset.replay_gold_story(lex)
        else:
            story = factstore.load(story_path)
    except (StorageError, FormatVersionError) as exc:
        raise DataError(str(exc))
    try:
        parsed = qa.parse_question_text(question, lex, ResolutionMemory.from_dict(story.memory))
    except qa.UnknownWhWord as exc:
        raise DataError(f"not a recognized question: {exc}")
    for line in qa.answer(parsed, story):
        click.echo(f"R: {line}")


@main.command()
@click.option("--in", "infile", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--gold", "gold_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--report", "report_path", required=True, type=click.Path())
@click.option("--out", "story_out", type=click.Path(), default=None)
@click.option("--lexicon", "lexicon_dir", type=click.Path(exists=True, file_okay=False), default=None)
def batch(infile, gold_path, report_path, story_out, lexicon_dir) -> None:
    """Analyze a file of sentences (one per line) and score against gold data.

    Non-interactive: ambiguous words are left unassigned and counted as
    unresolved.
    """
    from .analyzer import AnalysisError, ResolutionMemory

    lex = _load_lexicon(lexicon_dir)
    sentences = [
        line.strip()
        for line in Path(infile).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    story = Story(name=Path(infile).stem)
    unresolved = 0
    failures: list[str] = []
    for raw in sentences:
        try:
            outcome = analyze(tokenize(normalize(raw)), lex, ResolutionMemory(), defer=True)
        except AnalysisError as exc:
            failures.append(f"{raw!r}: {exc}")
            continue
        unresolved += len(outcome.deferred)
        factstore.append(story, outcome.record)

    lines = [f"sentences: {len(sentences)}  analyzed: {len(story.records)}  "
             f"unresolved: {unresolved}  failed: {len(failures)}"]
    if gold_path is not None:
        try:
            gold = goldset.load_gold_sentences(gold_path)
        except (FormatVersionError, json.JSONDecodeError, KeyError) as exc:
            raise DataError(f"bad gold file: {exc}")
        report = goldset.score_records(story.records, gold, unresolved=unresolved)
        lines.extend(report.lines())
        for seq, name, want, have in report.mismatches:
            lines.append(f"mismatch row {seq} {name}: expected {want!r}, got {have!r}")
    lines.extend(f"failed: {f}" for f in failures)
    Path(report_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    if story_out:
        factstore.save(story, story_out)
    click.echo("\n".join(lines))


@main.command()
@click.argument("sentence")
@click.option("--grammar", "grammar_path", type=click.Path(exists=True, dir_okay=False), default=None)
def cyk(sentence, grammar_path) -> None:
    """Recognize a sentence with the toy CFG; prints ACCEPT/REJECT/UNKNOWN-WORD."""
    try:
        grammar = (
            toygrammar.parse_grammar(Path(grammar_path).read_text(encoding="utf-8"))
            if grammar_path
            else toygrammar.default_grammar()
        )
        cnf = toygrammar.to_cnf(grammar)
    except toygrammar.GrammarError as exc:
        raise DataError(str(exc))
    words = [t.surface for t in tokenize(normalize(sentence)) if t.surface.isalnum() or "-" in t.surface]
    words = [w for w in words if w not in {",", ".", "?"}]
    try:
        tree = toygrammar.cyk_parse(cnf, words)
    except toygrammar.UnknownWord as exc:
        click.echo(f"UNKNOWN-WORD: {exc.word}")
        return
    if tree is None:
        click.echo("REJECT")
    else:
        click.echo(f"ACCEPT {toygrammar.de_cnf(tree, cnf).bracketed()}")


@main.command()
@click.option("--port", default=8000, type=int)
@click.option("--host", default="127.0.0.1")
@click.option("--stories-dir", type=click.Path(file_okay=False), default="stories")
@click.option("--ui", "ui_dir", type=click.Path(file_okay=False), default=None,
              help="Also serve a built web UI directory at /ui.")
def serve(port, host, stories_dir, ui_dir) -> None:
    """Run the local HTTP/JSON session API."""
    import uvicorn

    from .service import create_app

    app = create_app(
        stories_dir=Path(stories_dir),
        ui_dir=Path(ui_dir) if ui_dir else None,
    )
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
