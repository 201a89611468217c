#!/usr/bin/env python3
"""Record a real service transcript into tests/fixtures/session_replay.json.

The replay test drives the UI state machine with these captured responses, so
every byte the test checks against originated in the actual backend. Re-run
this script whenever the service's behavior changes.
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from diasexp.service import create_app

STEPS = [
    ("utterance", "Elena este frumoasă, deoarece are ochi frumoși."),
    ("utterance", "Elena este plăcută, întrucât e sociabilă."),
    ("utterance", "Elena, cea frumoasă, este elevă silitoare la liceu."),
    ("utterance", "Copiii cei cuminți au recitat o poezie părinților, în fața școlii."),
    ("clarify", 1),
    ("utterance", "Adrian va dărui Elenei o floare mâine, deoarece o iubește."),
    ("utterance", "Cum este Elena?"),
]


def main() -> None:
    app = create_app()
    log = []
    with TestClient(app) as client:
        session_id = client.post("/sessions").json()["session_id"]
        pending_id = None
        for kind, payload in STEPS:
            if kind == "utterance":
                path = f"/sessions/{session_id}/utterance"
                body = {"text": payload}
            else:
                path = f"/sessions/{session_id}/clarify"
                body = {"clarification_id": pending_id, "choice": payload}
            response = client.post(path, json=body)
            doc = response.json()
            if doc.get("kind") == "clarify":
                pending_id = doc["clarification"]["id"]
            log.append(
                {
                    "request": {"method": "POST", "path": path, "body": body},
                    "response": {"status": response.status_code, "json": doc},
                }
            )
        story = client.get(f"/sessions/{session_id}/story")
        log.append(
            {
                "request": {"method": "GET", "path": f"/sessions/{session_id}/story"},
                "response": {"status": story.status_code, "json": story.json()},
            }
        )

    out = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "session_replay.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps({"steps": log}, ensure_ascii=False, indent=2) + "\n", "utf-8")
    print(f"wrote {out} ({len(log)} steps)")


if __name__ == "__main__":
    main()
