import { describe, expect, it } from "vitest";

import {
  actionablePrompts,
  initialState,
  inputEnabled,
  optionChosen,
  resultArrived,
  storyLoaded,
  userSubmitted,
} from "../src/state.js";
import type { Clarification, StoryRecord } from "../src/types.js";

const RECORD: StoryRecord = {
  seq: 1,
  raw: "Elena este frumoasă.",
  predicative: true,
  subject: "Elena",
  predicate: "este",
  dir_obj: "frumoasă",
};

const CLARIFICATION: Clarification = {
  id: "q5",
  prompt: 'Which part of the sentence is "părinților"?',
  options: [
    { n: 1, role: "indir_obj", label: "indirect object" },
    { n: 2, role: "attribute_do", label: "attribute of the direct object" },
  ],
};

describe("chat state", () => {
  it("starts empty and accepting input", () => {
    const state = initialState();
    expect(state.chat).toEqual([]);
    expect(state.records).toEqual([]);
    expect(inputEnabled(state)).toBe(true);
  });

  it("a submission adds a user bubble and blocks input until the reply", () => {
    let state = userSubmitted(initialState(), "Elena este frumoasă.");
    expect(state.chat.at(-1)).toMatchObject({ kind: "user", text: "Elena este frumoasă." });
    expect(inputEnabled(state)).toBe(false);
    state = resultArrived(state, { kind: "recorded", record: RECORD });
    expect(inputEnabled(state)).toBe(true);
  });

  it("recorded results append the service row to the table verbatim", () => {
    let state = userSubmitted(initialState(), "x");
    state = resultArrived(state, { kind: "recorded", record: RECORD });
    expect(state.records).toEqual([RECORD]);
    expect(state.chat.at(-1)).toMatchObject({ kind: "system-ack", record: RECORD });
  });

  it("answers become one bubble each, in order", () => {
    let state = userSubmitted(initialState(), "Cum este Elena?");
    state = resultArrived(state, {
      kind: "answers",
      answers: ["Elena este frumoasă.", "Elena este plăcută."],
    });
    const bubbles = state.chat.filter((c) => c.kind === "answer").map((c) => c.text);
    expect(bubbles).toEqual(["Elena este frumoasă.", "Elena este plăcută."]);
  });

  it("a clarification opens a prompt and disables the input box", () => {
    let state = userSubmitted(initialState(), "…");
    state = resultArrived(state, { kind: "clarify", clarification: CLARIFICATION });
    expect(state.pending).toEqual(CLARIFICATION);
    expect(inputEnabled(state)).toBe(false);
    const prompt = state.chat.at(-1)!;
    expect(prompt.kind).toBe("clarify-prompt");
    expect(prompt.options).toEqual(CLARIFICATION.options);
  });

  it("prompt options render exactly what the service sent", () => {
    let state = resultArrived(initialState(), {
      kind: "clarify",
      clarification: CLARIFICATION,
    });
    const prompt = state.chat.at(-1)!;
    expect(prompt.options?.map((o) => o.label)).toEqual([
      "indirect object",
      "attribute of the direct object",
    ]);
  });

  it("choosing an option disables the prompt; a second click is a no-op", () => {
    let state = resultArrived(initialState(), {
      kind: "clarify",
      clarification: CLARIFICATION,
    });
    expect(actionablePrompts(state)).toHaveLength(1);
    state = optionChosen(state, "q5", 1);
    expect(actionablePrompts(state)).toHaveLength(0);
    const again = optionChosen(state, "q5", 2);
    expect(again.chat.find((c) => c.kind === "clarify-prompt")?.chosen).toBe(1);
  });

  it("at most one clarification prompt is actionable at a time", () => {
    let state = resultArrived(initialState(), {
      kind: "clarify",
      clarification: CLARIFICATION,
    });
    state = optionChosen(state, CLARIFICATION.id, 1);
    state = resultArrived(state, { kind: "recorded", record: RECORD });
    state = resultArrived(state, {
      kind: "clarify",
      clarification: { ...CLARIFICATION, id: "q9" },
    });
    expect(actionablePrompts(state)).toHaveLength(1);
    expect(actionablePrompts(state)[0]?.clarificationId).toBe("q9");
  });

  it("errors render inline and unblock the input", () => {
    let state = userSubmitted(initialState(), "mereu.");
    state = resultArrived(state, { kind: "error", message: "no verb group found" });
    expect(state.chat.at(-1)).toMatchObject({ kind: "error" });
    expect(inputEnabled(state)).toBe(true);
  });

  it("storyLoaded replaces the table model with the fetched rows", () => {
    const state = storyLoaded(initialState(), [RECORD]);
    expect(state.records).toEqual([RECORD]);
  });
});
