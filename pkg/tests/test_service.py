import pytest
from fastapi.testclient import TestClient

from diasexp.cli import ReplState, repl_step
from diasexp.dialogue import DialogueSession
from diasexp.factstore import ROLE_FIELDS, load
from diasexp.service import create_app


@pytest.fixture()
def client(tmp_path):
    app = create_app(stories_dir=tmp_path / "stories")
    with TestClient(app) as c:
        yield c


def new_session(client, **params):
    response = client.post("/sessions", params=params)
    return response


def test_create_session(client):
    response = new_session(client)
    assert response.status_code == 201
    assert "session_id" in response.json()


def test_fresh_session_story_is_empty(client):
    sid = new_session(client).json()["session_id"]
    assert client.get(f"/sessions/{sid}/story").json() == {"records": []}


def test_gold_story_preload(client):
    sid = new_session(client, story="gold").json()["session_id"]
    records = client.get(f"/sessions/{sid}/story").json()["records"]
    assert len(records) == 25
    assert records[0]["subject"] == "Elena"
    assert all(set(r) <= set(ROLE_FIELDS) | {"predicative", "raw", "seq"} for r in records)


def test_unknown_story_404(client):
    assert new_session(client, story="missing").status_code == 404


def test_unknown_session_404(client):
    assert client.get("/sessions/nope/story").status_code == 404
    assert client.post("/sessions/nope/utterance", json={"text": "x"}).status_code == 404


def test_recorded_utterance(client):
    sid = new_session(client).json()["session_id"]
    r = client.post(
        f"/sessions/{sid}/utterance", json={"text": "Elena este sociabilă mereu."}
    ).json()
    assert r["kind"] == "recorded"
    assert r["record"]["when"] == "mereu"
    assert r["record"]["seq"] == 1


def test_answers_after_gold_story(client):
    sid = new_session(client, story="gold").json()["session_id"]
    r = client.post(f"/sessions/{sid}/utterance", json={"text": "Cum este Elena?"}).json()
    assert r["kind"] == "answers"
    assert r["answers"] == [
        "Elena este frumoasă.",
        "Elena este plăcută.",
        "Elena este elevă.",
    ]


def test_clarification_protocol(client):
    sid = new_session(client).json()["session_id"]
    r = client.post(
        f"/sessions/{sid}/utterance",
        json={"text": "Copiii cei cuminți au recitat o poezie părinților."},
    ).json()
    assert r["kind"] == "clarify"
    options = r["clarification"]["options"]
    assert [o["role"] for o in options] == ["indir_obj", "attribute_do"]
    assert [o["n"] for o in options] == [1, 2]
    cid = r["clarification"]["id"]

    blocked = client.post(f"/sessions/{sid}/utterance", json={"text": "Cum este Elena?"})
    assert blocked.status_code == 409

    wrong_id = client.post(
        f"/sessions/{sid}/clarify", json={"clarification_id": "zzz", "choice": 1}
    )
    assert wrong_id.status_code == 404

    out_of_range = client.post(
        f"/sessions/{sid}/clarify", json={"clarification_id": cid, "choice": 5}
    )
    assert out_of_range.status_code == 422

    resolved = client.post(
        f"/sessions/{sid}/clarify", json={"clarification_id": cid, "choice": 1}
    ).json()
    assert resolved["kind"] == "recorded"
    assert resolved["record"]["indir_obj"] == "părinților"


def test_clarify_without_pending_409(client):
    sid = new_session(client).json()["session_id"]
    r = client.post(f"/sessions/{sid}/clarify", json={"clarification_id": "x", "choice": 1})
    assert r.status_code == 409


def test_error_result_shape(client):
    sid = new_session(client).json()["session_id"]
    r = client.post(f"/sessions/{sid}/utterance", json={"text": "mereu."}).json()
    assert r["kind"] == "error"
    assert "verb" in r["message"]


def test_save_story(client, tmp_path):
    sid = new_session(client).json()["session_id"]
    client.post(f"/sessions/{sid}/utterance", json={"text": "Elena este frumoasă."})
    saved = client.post(f"/sessions/{sid}/save", json={"name": "mystory"}).json()
    story = load(saved["saved"])
    assert len(story.records) == 1
    # a new session can start from the saved story
    sid2 = new_session(client, story="mystory").json()["session_id"]
    records = client.get(f"/sessions/{sid2}/story").json()["records"]
    assert len(records) == 1


TRANSCRIPT = [
    "Elena este frumoasă, deoarece are ochi frumoși.",
    "Elena este plăcută, întrucât e sociabilă.",
    "Copiii cei cuminți au recitat o poezie părinților, în fața școlii.",
    ("clarify", 1),
    "Cum este Elena?",
]


def test_api_matches_repl_on_same_transcript(client):
    # drive the HTTP API
    sid = new_session(client).json()["session_id"]
    api_answers = None
    pending_id = None
    for step in TRANSCRIPT:
        if isinstance(step, tuple):
            r = client.post(
                f"/sessions/{sid}/clarify",
                json={"clarification_id": pending_id, "choice": step[1]},
            ).json()
        else:
            r = client.post(f"/sessions/{sid}/utterance", json={"text": step}).json()
        if r["kind"] == "clarify":
            pending_id = r["clarification"]["id"]
        if r["kind"] == "answers":
            api_answers = r["answers"]
    api_records = client.get(f"/sessions/{sid}/story").json()["records"]

    # drive the REPL core
    state = ReplState(session=DialogueSession())
    repl_answers = []
    for step in TRANSCRIPT:
        line = str(step[1]) if isinstance(step, tuple) else step
        for out in repl_step(state, line):
            if out.startswith("R: "):
                repl_answers.append(out[3:])
    repl_records = [r.to_json() for r in state.session.story.records]

    assert api_records == repl_records
    assert api_answers == repl_answers


def test_concurrent_utterances_serialize(client):
    from concurrent.futures import ThreadPoolExecutor

    sid = new_session(client).json()["session_id"]
    lines = [f"Elena este frumoasă, deoarece are motiv{i}." for i in range(8)]

    def send(text):
        return client.post(f"/sessions/{sid}/utterance", json={"text": text}).json()

    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(send, lines))
    assert all(r["kind"] == "recorded" for r in results)
    seqs = sorted(r["record"]["seq"] for r in results)
    assert seqs == list(range(1, 9))
    records = client.get(f"/sessions/{sid}/story").json()["records"]
    assert len(records) == 8


def test_static_ui_mount(tmp_path):
    ui = tmp_path / "ui"
    ui.mkdir()
    (ui / "index.html").write_text("<html><body>ui shell</body></html>", "utf-8")
    app = create_app(stories_dir=tmp_path / "stories", ui_dir=ui)
    with TestClient(app) as c:
        page = c.get("/ui/")
        assert page.status_code == 200
        assert "ui shell" in page.text
        # API keeps working alongside the static mount
        assert c.post("/sessions").status_code == 201
