/** Wiring: one browser tab = one session. Requests are serialized by
 * disabling the input while one is in flight. */

import { ServiceClient } from "./api.js";
import {
  initialState,
  optionChosen,
  resultArrived,
  storyLoaded,
  userSubmitted,
  type UiState,
} from "./state.js";
import { renderChat, renderInputState, renderTable } from "./render.js";

declare global {
  interface Window {
    DIASEXP_API?: string;
  }
}

const apiBase = window.DIASEXP_API ?? "http://127.0.0.1:8000";
const client = new ServiceClient(apiBase);

let state: UiState = initialState();
let sessionId: string | null = null;

const chatEl = document.getElementById("chat") as HTMLElement;
const tableEl = document.getElementById("story-table") as HTMLElement;
const formEl = document.getElementById("composer") as HTMLFormElement;
const inputEl = document.getElementById("composer-input") as HTMLInputElement;
const sendEl = document.getElementById("composer-send") as HTMLButtonElement;
const warnEl = document.getElementById("composer-warning") as HTMLElement;
const statusEl = document.getElementById("status") as HTMLElement;

function draw(): void {
  renderChat(chatEl, state, { onOption: chooseOption });
  renderTable(tableEl, state);
  renderInputState(inputEl, sendEl, warnEl, state);
}

function update(next: UiState): void {
  state = next;
  draw();
}

async function refreshTable(): Promise<void> {
  if (sessionId === null) return;
  const records = await client.story(sessionId);
  if (records !== null) {
    update(storyLoaded(state, records));
  }
}

async function sendUtterance(text: string): Promise<void> {
  if (sessionId === null) return;
  update(userSubmitted(state, text));
  const result = await client.utterance(sessionId, text);
  update(resultArrived(state, result));
  if (result.kind === "recorded") {
    await refreshTable();
  }
}

async function chooseOption(clarificationId: string, n: number): Promise<void> {
  if (sessionId === null) return;
  update(optionChosen(state, clarificationId, n));
  const result = await client.clarify(sessionId, clarificationId, n);
  update(resultArrived(state, result));
  if (result.kind === "recorded") {
    await refreshTable();
  }
}

formEl.addEventListener("submit", (event) => {
  event.preventDefault();
  const text = inputEl.value.trim();
  if (!text || state.busy || state.pending !== null) return;
  inputEl.value = "";
  void sendUtterance(text);
});

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const story = params.get("story") ?? undefined;
  const created = await client.createSession(story);
  if (created === null) {
    statusEl.textContent = `Cannot reach the service at ${apiBase}. Start it with: diasexp serve`;
    return;
  }
  sessionId = created.session_id;
  statusEl.textContent = `session ${sessionId.slice(0, 8)} @ ${apiBase}`;
  await refreshTable();
  draw();
}

void boot();
