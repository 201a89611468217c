"""Persistence and retrieval of parsed-sentence records, grouped into stories.

A story file is JSON-lines: a header object (format version, story name,
learned-resolution memory, lexicon deltas), then one object per record whose
keys are the twelve role names in table order plus predicative/raw/seq.
Records are append-only; blank fields are simply absent.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from .lexicon import LexiconDelta
from .textnorm import fold

FORMAT_TAG = "diasexp-story"
FORMAT_VERSION = 1

#: The twelve role fields, in table column order.
ROLE_FIELDS = (
    "subject",
    "attrib_sub",
    "predicate",
    "dir_obj",
    "attribute_do",
    "indir_obj",
    "attribute_io",
    "when",
    "where",
    "how",
    "goal",
    "why",
)


class StorageError(RuntimeError):
    pass


class FormatVersionError(StorageError):
    pass


@dataclass(frozen=True)
class SentenceRecord:
    subject: str | None = None
    attrib_sub: str | None = None
    predicate: str | None = None
    dir_obj: str | None = None
    attribute_do: str | None = None
    indir_obj: str | None = None
    attribute_io: str | None = None
    when: str | None = None
    where: str | None = None
    how: str | None = None
    goal: str | None = None
    why: str | None = None
    predicative: bool = False
    raw: str = ""
    seq: int = 0
    # analysis provenance (role, text, trigger) triples; not persisted
    constituents: tuple = field(default=(), compare=False)

    def fields(self) -> dict[str, str]:
        """Non-empty role fields in column order."""
        out = {}
        for name in ROLE_FIELDS:
            value = getattr(self, name)
            if value:
                out[name] = value
        return out

    def folded(self, name: str) -> str | None:
        value = getattr(self, name)
        return fold(value) if value else None

    def to_json(self) -> dict:
        doc: dict = {name: value for name, value in self.fields().items()}
        doc["predicative"] = self.predicative
        doc["raw"] = self.raw
        doc["seq"] = self.seq
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "SentenceRecord":
        known = set(ROLE_FIELDS) | {"predicative", "raw", "seq"}
        unknown = set(doc) - known
        if unknown:
            raise FormatVersionError(f"unknown record fields: {sorted(unknown)}")
        return cls(**{k: v for k, v in doc.items()})


@dataclass
class Story:
    name: str = "default"
    records: list[SentenceRecord] = field(default_factory=list)
    memory: dict[str, str] = field(default_factory=dict)
    lexicon_deltas: list[LexiconDelta] = field(default_factory=list)
    path: Path | None = None  # when bound, append() persists each record

    def next_seq(self) -> int:
        return self.records[-1].seq + 1 if self.records else 1


def append(story: Story, record: SentenceRecord) -> Story:
    """Append with the next sequence number; persists before returning when
    the story is bound to a file. Identical records are stored twice on
    purpose: repetition is data."""
    if not record.predicate:
        raise ValueError("records must carry a predicate")
    stamped = replace(record, seq=story.next_seq())
    story.records.append(stamped)
    if story.path is not None:
        try:
            is_new = not story.path.exists() or story.path.stat().st_size == 0
            with story.path.open("a", encoding="utf-8") as fh:
                if is_new:
                    fh.write(json.dumps(_header(story), ensure_ascii=False) + "\n")
                fh.write(json.dumps(stamped.to_json(), ensure_ascii=False) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
        except OSError as exc:
            raise StorageError(str(exc)) from exc
    return story


def query(story: Story, constraints: dict[str, str]) -> list[SentenceRecord]:
    """Linear scan for records matching every constraint under folded compare.

    The special key "predicate_head" matches when the stripped head verb of
    the stored predicate equals the wanted head.
    """
    for key in constraints:
        if key not in ROLE_FIELDS and key != "predicate_head":
            raise KeyError(f"unknown constraint field: {key}")
    hits = []
    for record in story.records:
        if all(_matches(record, key, want) for key, want in constraints.items()):
            hits.append(record)
    return hits


def _matches(record: SentenceRecord, key: str, want: str) -> bool:
    if key == "predicate_head":
        from .qa import head_verb  # late import: qa depends on this module

        return bool(record.predicate) and head_verb(record.predicate) == fold(want)
    value = record.folded(key)
    return value is not None and value == fold(want)


def _header(story: Story) -> dict:
    return {
        "format": FORMAT_TAG,
        "version": FORMAT_VERSION,
        "name": story.name,
        "memory": dict(story.memory),
        "lexicon_deltas": [
            {"table": d.table, "entry": d.entry, "source": d.source}
            for d in story.lexicon_deltas
        ],
    }


def save(story: Story, path: str | Path) -> Path:
    """Rewrite the whole story file (header incl. current memory + records)."""
    path = Path(path)
    lines = [json.dumps(_header(story), ensure_ascii=False)]
    lines.extend(json.dumps(r.to_json(), ensure_ascii=False) for r in story.records)
    try:
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise StorageError(str(exc)) from exc
    story.path = path
    return path


def load(path: str | Path) -> Story:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StorageError(str(exc)) from exc

    offset = 0
    header: dict | None = None
    records: list[SentenceRecord] = []
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        if stripped:
            try:
                doc = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise StorageError(
                    f"{path}: malformed story line at byte {offset}: {exc.msg}"
                ) from exc
            if header is None:
                header = doc
                if doc.get("format") != FORMAT_TAG:
                    raise FormatVersionError(f"{path}: not a story file")
                if doc.get("version") != FORMAT_VERSION:
                    raise FormatVersionError(
                        f"{path}: unsupported story format version {doc.get('version')!r}"
                    )
            else:
                records.append(SentenceRecord.from_json(doc))
        offset += len(line.encode("utf-8"))

    if header is None:
        raise StorageError(f"{path}: empty story file")
    deltas = [
        LexiconDelta(table=d["table"], entry=d["entry"], source=d.get("source", "learned"))
        for d in header.get("lexicon_deltas", [])
    ]
    return Story(
        name=header.get("name", "default"),
        records=records,
        memory=dict(header.get("memory", {})),
        lexicon_deltas=deltas,
        path=path,
    )


def equal_stories(a: Story, b: Story) -> bool:
    """Field-for-field equality, ignoring file binding."""
    return (
        a.name == b.name
        and a.memory == b.memory
        and a.lexicon_deltas == b.lexicon_deltas
        and len(a.records) == len(b.records)
        and all(x.to_json() == y.to_json() for x, y in zip(a.records, b.records))
    )
