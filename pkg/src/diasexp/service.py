"""Local HTTP/JSON session API over the dialogue loop.

Sessions live in memory; each one owns a story, a lexicon snapshot and its
clarification memory. Requests on one session are serialized with a lock, so
at most one utterance is in flight per session.
"""

from __future__ import annotations

import threading
import uuid
from pathlib import Path

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import factstore, goldset
from .analyzer import ROLE_LABELS, UnknownClarification
from .dialogue import DialogueSession, PendingClarificationError, SubmitResult
from .factstore import StorageError
from .lexicon import Lexicon, builtin_lexicon


class UtteranceBody(BaseModel):
    text: str


class ClarifyBody(BaseModel):
    clarification_id: str
    choice: int


class SaveBody(BaseModel):
    name: str


class _Session:
    def __init__(self, dialogue: DialogueSession):
        self.dialogue = dialogue
        self.lock = threading.Lock()


def _error(code: int, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=code,
        content={"kind": "error", "message": message, "code": code},
    )


def _result_json(result: SubmitResult) -> dict:
    if result.kind == "recorded":
        return {"kind": "recorded", "record": result.record.to_json()}
    if result.kind == "answers":
        return {"kind": "answers", "answers": result.answers}
    if result.kind == "clarify":
        clar = result.clarification
        return {
            "kind": "clarify",
            "clarification": {
                "id": clar.id,
                "prompt": clar.prompt,
                "options": [
                    {"n": i, "role": role.value, "label": ROLE_LABELS[role]}
                    for i, role in enumerate(clar.options, start=1)
                ],
            },
        }
    return {"kind": "error", "message": result.message}


def create_app(
    stories_dir: Path | None = None,
    lexicon: Lexicon | None = None,
    ui_dir: Path | None = None,
) -> FastAPI:
    app = FastAPI(title="diasexp", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")
    base_lexicon = lexicon or builtin_lexicon()
    sessions: dict[str, _Session] = {}

    def _get(session_id: str) -> _Session | None:
        return sessions.get(session_id)

    @app.post("/sessions", status_code=201)
    def create_session(story: str | None = None):
        if story is None:
            dialogue = DialogueSession(lexicon=base_lexicon)
        elif story == "gold":
            gold_story, memory, _ = goldset.replay_gold_story(base_lexicon)
            dialogue = DialogueSession(
                lexicon=base_lexicon, story=gold_story, memory=memory
            )
        else:
            path = (stories_dir or Path("stories")) / f"{story}.jsonl"
            if not path.exists():
                return _error(404, f"unknown story: {story}")
            try:
                dialogue = DialogueSession(
                    lexicon=base_lexicon, story=factstore.load(path)
                )
            except StorageError as exc:
                return _error(404, str(exc))
        session_id = uuid.uuid4().hex
        sessions[session_id] = _Session(dialogue)
        return {"session_id": session_id}

    @app.post("/sessions/{session_id}/utterance")
    def utterance(session_id: str, body: UtteranceBody):
        session = _get(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            try:
                result = session.dialogue.submit(body.text)
            except PendingClarificationError as exc:
                return _error(409, str(exc))
            return _result_json(result)

    @app.post("/sessions/{session_id}/clarify")
    def clarify(session_id: str, body: ClarifyBody):
        session = _get(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            pending = session.dialogue.pending
            if pending is None:
                return _error(409, "no clarification is pending")
            clar = pending.clarification
            if clar.id != body.clarification_id:
                return _error(404, f"unknown clarification: {body.clarification_id}")
            if not 1 <= body.choice <= len(clar.options):
                return _error(
                    422,
                    f"choice must be between 1 and {len(clar.options)}",
                )
            try:
                result = session.dialogue.clarify(
                    clar.id, clar.options[body.choice - 1]
                )
            except UnknownClarification as exc:
                return _error(404, str(exc))
            return _result_json(result)

    @app.get("/sessions/{session_id}/story")
    def story(session_id: str):
        session = _get(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            return {
                "records": [r.to_json() for r in session.dialogue.story.records]
            }

    @app.post("/sessions/{session_id}/save")
    def save(session_id: str, body: SaveBody):
        session = _get(session_id)
        if session is None:
            return _error(404, "unknown session")
        directory = stories_dir or Path("stories")
        directory.mkdir(parents=True, exist_ok=True)
        with session.lock:
            session.dialogue.story.name = body.name
            path = factstore.save(session.dialogue.story, directory / f"{body.name}.jsonl")
        return {"saved": str(path)}

    return app
