/** DOM rendering: chat log, clarification option buttons, story table. */

import { actionablePrompts, inputEnabled, type UiState } from "./state.js";
import { ROLE_COLUMNS, type ChatItem } from "./types.js";

export interface Handlers {
  onOption(clarificationId: string, n: number): void;
}

export function renderChat(container: HTMLElement, state: UiState, handlers: Handlers): void {
  container.replaceChildren();
  for (const item of state.chat) {
    container.appendChild(renderItem(item, state, handlers));
  }
  container.scrollTop = container.scrollHeight;
}

function renderItem(item: ChatItem, state: UiState, handlers: Handlers): HTMLElement {
  const bubble = document.createElement("div");
  bubble.className = `bubble ${item.kind}`;
  const text = document.createElement("div");
  text.textContent = item.kind === "user" ? item.text : item.text;
  bubble.appendChild(text);

  if (item.kind === "clarify-prompt" && item.options) {
    const row = document.createElement("div");
    row.className = "options";
    const active =
      item.chosen === undefined &&
      actionablePrompts(state).some((p) => p.clarificationId === item.clarificationId);
    for (const option of item.options) {
      const button = document.createElement("button");
      button.textContent = `${option.n}) ${option.label}`;
      button.disabled = !active || item.chosen !== undefined;
      if (item.chosen === option.n) button.classList.add("chosen");
      button.addEventListener("click", () => {
        if (!button.disabled && item.clarificationId) {
          handlers.onOption(item.clarificationId, option.n);
        }
      });
      row.appendChild(button);
    }
    bubble.appendChild(row);
  }
  return bubble;
}

export function renderTable(container: HTMLElement, state: UiState): void {
  container.replaceChildren();
  const table = document.createElement("table");
  const head = table.createTHead().insertRow();
  const seqCell = document.createElement("th");
  seqCell.textContent = "#";
  head.appendChild(seqCell);
  for (const column of ROLE_COLUMNS) {
    const th = document.createElement("th");
    th.textContent = column;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const record of state.records) {
    const row = body.insertRow();
    row.insertCell().textContent = String(record.seq);
    for (const column of ROLE_COLUMNS) {
      row.insertCell().textContent = record[column] ?? "";
    }
    if (record.seq === state.records[state.records.length - 1]?.seq) {
      row.classList.add("newest");
    }
  }
  container.appendChild(table);
}

export function renderInputState(input: HTMLInputElement, button: HTMLButtonElement,
                                 warning: HTMLElement, state: UiState): void {
  const enabled = inputEnabled(state);
  input.disabled = !enabled;
  button.disabled = !enabled;
  warning.textContent =
    state.pending !== null ? "Answer the open clarification first." : "";
}
