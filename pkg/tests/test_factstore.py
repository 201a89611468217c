import json

import pytest

from diasexp.factstore import (
    FormatVersionError,
    SentenceRecord,
    StorageError,
    Story,
    append,
    equal_stories,
    load,
    query,
    save,
)
from diasexp.goldset import replay_gold_story
from diasexp.textnorm import fold


def make_record(**kwargs):
    kwargs.setdefault("subject", "Elena")
    kwargs.setdefault("predicate", "este")
    return SentenceRecord(**kwargs)


def test_append_assigns_sequence():
    story = Story()
    append(story, make_record())
    append(story, make_record(dir_obj="frumoasă"))
    assert [r.seq for r in story.records] == [1, 2]


def test_append_requires_predicate():
    with pytest.raises(ValueError):
        append(Story(), SentenceRecord(subject="Elena"))


def test_identical_records_stored_twice():
    story = Story()
    append(story, make_record(dir_obj="frumoasă"))
    append(story, make_record(dir_obj="frumoasă"))
    assert len(story.records) == 2
    assert story.records[0].fields() == story.records[1].fields()


def test_blank_fields_absent_from_json():
    doc = make_record(dir_obj="frumoasă").to_json()
    assert "indir_obj" not in doc
    assert doc["dir_obj"] == "frumoasă"


def test_save_load_round_trip(tmp_path):
    story, _, _ = replay_gold_story()
    path = tmp_path / "story.jsonl"
    save(story, path)
    reloaded = load(path)
    assert equal_stories(story, reloaded)
    assert len(reloaded.records) == 25
    assert reloaded.name == "gold"


def test_bound_story_appends_durably(tmp_path):
    path = tmp_path / "live.jsonl"
    story = Story(name="live", path=path)
    append(story, make_record(dir_obj="frumoasă"))
    append(story, make_record(dir_obj="plăcută"))
    reloaded = load(path)
    assert [r.dir_obj for r in reloaded.records] == ["frumoasă", "plăcută"]


def test_truncated_file_reports_byte_offset(tmp_path):
    story, _, _ = replay_gold_story()
    path = tmp_path / "story.jsonl"
    save(story, path)
    data = path.read_bytes()
    path.write_bytes(data[: len(data) - 40])
    with pytest.raises(StorageError) as exc:
        load(path)
    assert "byte" in str(exc.value)


def test_future_version_rejected(tmp_path):
    path = tmp_path / "story.jsonl"
    path.write_text(
        json.dumps({"format": "diasexp-story", "version": 99, "name": "x"}) + "\n",
        encoding="utf-8",
    )
    with pytest.raises(FormatVersionError):
        load(path)


def test_non_story_file_rejected(tmp_path):
    path = tmp_path / "story.jsonl"
    path.write_text('{"hello": 1}\n', encoding="utf-8")
    with pytest.raises(FormatVersionError):
        load(path)


def test_unknown_record_field_rejected(tmp_path):
    path = tmp_path / "story.jsonl"
    lines = [
        json.dumps({"format": "diasexp-story", "version": 1, "name": "x"}),
        json.dumps({"subject": "Elena", "predicate": "este", "bogus": 1}),
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(FormatVersionError):
        load(path)


def test_query_empty_constraints_returns_all():
    story, _, _ = replay_gold_story()
    assert query(story, {}) == story.records


def test_query_absent_value():
    story, _, _ = replay_gold_story()
    assert query(story, {"subject": "Zeus"}) == []


def test_query_unknown_field_rejected():
    with pytest.raises(KeyError):
        query(Story(), {"bogus": "x"})


def test_query_predicate_head_containment():
    story, _, _ = replay_gold_story()
    hits = query(story, {"subject": "Adrian", "predicate_head": "iubește"})
    predicates = {r.predicate for r in hits}
    assert predicates == {"o iubește", "nu iubește"}


def test_query_matches_linear_scan_oracle():
    story, _, _ = replay_gold_story()
    constraints = {"subject": "Elena", "predicate": "este"}
    expected = [
        r
        for r in story.records
        if r.folded("subject") == fold("Elena") and r.folded("predicate") == fold("este")
    ]
    assert query(story, constraints) == expected


def test_append_only_api_has_no_mutators():
    import diasexp.factstore as fs

    public = {name for name in dir(fs) if not name.startswith("_")}
    assert not any(name.startswith(("delete", "remove", "update")) for name in public)
