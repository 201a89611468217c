/** Thin fetch client over the session service. Every method resolves to a
 * typed ServiceResult; transport failures surface as error results instead of
 * thrown exceptions so the chat can render them inline. */

import type { ServiceResult, StoryRecord } from "./types.js";

export class ServiceClient {
  constructor(private readonly base: string) {}

  async createSession(story?: string): Promise<{ session_id: string } | null> {
    const url = story
      ? `${this.base}/sessions?story=${encodeURIComponent(story)}`
      : `${this.base}/sessions`;
    try {
      const response = await fetch(url, { method: "POST" });
      if (!response.ok) return null;
      return (await response.json()) as { session_id: string };
    } catch {
      return null;
    }
  }

  async utterance(sessionId: string, text: string): Promise<ServiceResult> {
    return this.post(`/sessions/${sessionId}/utterance`, { text });
  }

  async clarify(
    sessionId: string,
    clarificationId: string,
    choice: number,
  ): Promise<ServiceResult> {
    return this.post(`/sessions/${sessionId}/clarify`, {
      clarification_id: clarificationId,
      choice,
    });
  }

  async story(sessionId: string): Promise<StoryRecord[] | null> {
    try {
      const response = await fetch(`${this.base}/sessions/${sessionId}/story`);
      if (!response.ok) return null;
      const body = (await response.json()) as { records: StoryRecord[] };
      return body.records;
    } catch {
      return null;
    }
  }

  private async post(path: string, body: unknown): Promise<ServiceResult> {
    try {
      const response = await fetch(`${this.base}${path}`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      });
      const json = (await response.json()) as ServiceResult & { code?: number };
      if (!response.ok && json.kind !== "error") {
        return { kind: "error", message: `HTTP ${response.status}`, code: response.status };
      }
      return json;
    } catch (err) {
      return { kind: "error", message: `service unreachable: ${String(err)}` };
    }
  }
}
