/** Pure UI state transitions. Every chat bubble and every table row
 * originates from a service response passed into these functions; nothing is
 * synthesized client-side, so the rendered story always equals the service's
 * JSON. */

import type { ChatItem, Clarification, ServiceResult, StoryRecord } from "./types.js";

export interface UiState {
  chat: ChatItem[];
  records: StoryRecord[];
  pending: Clarification | null;
  busy: boolean;
}

export function initialState(): UiState {
  return { chat: [], records: [], pending: null, busy: false };
}

/** The input box is usable only when no request is in flight and no
 * clarification is open. */
export function inputEnabled(state: UiState): boolean {
  return !state.busy && state.pending === null;
}

export function userSubmitted(state: UiState, text: string): UiState {
  return {
    ...state,
    chat: [...state.chat, { kind: "user", text }],
    busy: true,
  };
}

export function optionChosen(state: UiState, clarificationId: string, n: number): UiState {
  const chat = state.chat.map((item) =>
    item.kind === "clarify-prompt" &&
    item.clarificationId === clarificationId &&
    item.chosen === undefined
      ? { ...item, chosen: n }
      : item,
  );
  return { ...state, chat, busy: true };
}

/** Fold a service response into the chat; recorded results also append the
 * service-provided row to the table model. */
export function resultArrived(state: UiState, result: ServiceResult): UiState {
  const next: UiState = { ...state, chat: [...state.chat], busy: false };
  switch (result.kind) {
    case "recorded":
      next.pending = null;
      next.records = [...state.records, result.record];
      next.chat.push({
        kind: "system-ack",
        text: `Recorded row #${result.record.seq}.`,
        record: result.record,
      });
      return next;
    case "answers":
      for (const answer of result.answers) {
        next.chat.push({ kind: "answer", text: answer });
      }
      return next;
    case "clarify":
      next.pending = result.clarification;
      next.chat.push({
        kind: "clarify-prompt",
        text: result.clarification.prompt,
        options: result.clarification.options,
        clarificationId: result.clarification.id,
      });
      return next;
    case "error":
      next.chat.push({ kind: "error", text: result.message });
      return next;
  }
}

/** Replace the table model with a full story fetch (rows come verbatim from
 * the service). */
export function storyLoaded(state: UiState, records: StoryRecord[]): UiState {
  return { ...state, records: [...records] };
}

/** Exactly one clarification prompt may be actionable at a time. */
export function actionablePrompts(state: UiState): ChatItem[] {
  return state.chat.filter(
    (item) => item.kind === "clarify-prompt" && item.chosen === undefined,
  );
}
