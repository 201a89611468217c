/** End-to-end replay: drives the UI state machine through a transcript
 * captured from the real backend (tests/fixtures/session_replay.json, written
 * by scripts/record_fixture.py). Asserts that the final table and the answer
 * bubbles match the service's JSON exactly, and that nothing in the UI state
 * was invented client-side. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  actionablePrompts,
  initialState,
  optionChosen,
  resultArrived,
  storyLoaded,
  userSubmitted,
  type UiState,
} from "../src/state.js";
import type { ServiceResult, StoryRecord } from "../src/types.js";

interface FixtureStep {
  request: { method: string; path: string; body?: Record<string, unknown> };
  response: { status: number; json: unknown };
}

const fixturePath = join(
  dirname(fileURLToPath(import.meta.url)),
  "fixtures",
  "session_replay.json",
);
const fixture = JSON.parse(readFileSync(fixturePath, "utf-8")) as {
  steps: FixtureStep[];
};

function isStoryFetch(step: FixtureStep): boolean {
  return step.request.method === "GET" && step.request.path.endsWith("/story");
}

describe("scripted session replay against recorded service traffic", () => {
  it("replays 5 assertions, one clarification click and one question", () => {
    let state: UiState = initialState();
    const serviceRecords: StoryRecord[] = [];
    const serviceAnswers: string[] = [];

    for (const step of fixture.steps) {
      if (isStoryFetch(step)) {
        const body = step.response.json as { records: StoryRecord[] };
        state = storyLoaded(state, body.records);
        continue;
      }
      const result = step.response.json as ServiceResult;
      if (step.request.path.endsWith("/utterance")) {
        state = userSubmitted(state, String(step.request.body?.text ?? ""));
      } else if (step.request.path.endsWith("/clarify")) {
        const id = String(step.request.body?.clarification_id);
        const n = Number(step.request.body?.choice);
        expect(actionablePrompts(state).map((p) => p.clarificationId)).toEqual([id]);
        state = optionChosen(state, id, n);
      }
      state = resultArrived(state, result);
      expect(actionablePrompts(state).length).toBeLessThanOrEqual(1);

      if (result.kind === "recorded") serviceRecords.push(result.record);
      if (result.kind === "answers") serviceAnswers.push(...result.answers);
    }

    // five assertions were recorded, one via the clarification click
    expect(serviceRecords).toHaveLength(5);
    expect(serviceRecords.map((r) => r.seq)).toEqual([1, 2, 3, 4, 5]);

    // the clarified row came back with the chosen role filled by the service
    const clarified = serviceRecords[3]!;
    expect(clarified.indir_obj).toBe("părinților");

    // the final table equals the service's story JSON exactly
    const storyStep = fixture.steps.find(isStoryFetch)!;
    const storyJson = (storyStep.response.json as { records: StoryRecord[] }).records;
    expect(state.records).toEqual(storyJson);

    // every table row also arrived earlier as a recorded result: no
    // client-originated rows exist
    expect(state.records).toEqual(serviceRecords);

    // answer bubbles match the service's answer list exactly, in order
    const bubbles = state.chat.filter((c) => c.kind === "answer").map((c) => c.text);
    expect(bubbles).toEqual(serviceAnswers);
    expect(bubbles).toEqual([
      "Elena este frumoasă.",
      "Elena este plăcută.",
      "Elena este elevă.",
    ]);

    // the dialogue ends with no clarification left open
    expect(state.pending).toBeNull();
    expect(actionablePrompts(state)).toHaveLength(0);
  });

  it("fixture was captured against the documented endpoints", () => {
    const paths = fixture.steps.map((s) => s.request.path);
    expect(paths.filter((p) => p.endsWith("/utterance"))).toHaveLength(6);
    expect(paths.filter((p) => p.endsWith("/clarify"))).toHaveLength(1);
    expect(paths.filter((p) => p.endsWith("/story"))).toHaveLength(1);
    for (const step of fixture.steps) {
      expect(step.response.status).toBe(200);
    }
  });
});
