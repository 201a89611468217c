import { afterEach, describe, expect, it, vi } from "vitest";

import { ServiceClient } from "../src/api.js";

function stubFetch(status: number, body: unknown): ReturnType<typeof vi.fn> {
  const mock = vi.fn(async () => ({
    ok: status >= 200 && status < 300,
    status,
    json: async () => body,
  }));
  vi.stubGlobal("fetch", mock);
  return mock;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ServiceClient", () => {
  it("posts utterances and returns the typed result", async () => {
    const mock = stubFetch(200, { kind: "recorded", record: { seq: 1 } });
    const client = new ServiceClient("http://api");
    const result = await client.utterance("s1", "Elena este frumoasă.");
    expect(result.kind).toBe("recorded");
    expect(mock).toHaveBeenCalledWith(
      "http://api/sessions/s1/utterance",
      expect.objectContaining({
        method: "POST",
        body: JSON.stringify({ text: "Elena este frumoasă." }),
      }),
    );
  });

  it("passes service error bodies through (409 while pending)", async () => {
    stubFetch(409, { kind: "error", message: "a clarification is pending", code: 409 });
    const client = new ServiceClient("http://api");
    const result = await client.utterance("s1", "x");
    expect(result).toMatchObject({ kind: "error", code: 409 });
  });

  it("sends clarification choices with the clarification id", async () => {
    const mock = stubFetch(200, { kind: "recorded", record: { seq: 2 } });
    const client = new ServiceClient("http://api");
    await client.clarify("s1", "q5", 2);
    expect(mock).toHaveBeenCalledWith(
      "http://api/sessions/s1/clarify",
      expect.objectContaining({
        body: JSON.stringify({ clarification_id: "q5", choice: 2 }),
      }),
    );
  });

  it("maps network failures to inline error results", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => {
      throw new Error("connection refused");
    }));
    const client = new ServiceClient("http://api");
    const result = await client.utterance("s1", "x");
    expect(result.kind).toBe("error");
    expect(result.kind === "error" && result.message).toContain("unreachable");
  });

  it("fetches story records", async () => {
    stubFetch(200, { records: [{ seq: 1, raw: "x", predicative: false }] });
    const client = new ServiceClient("http://api");
    const records = await client.story("s1");
    expect(records).toHaveLength(1);
  });

  it("returns null for a missing session's story", async () => {
    stubFetch(404, { kind: "error", message: "unknown session", code: 404 });
    const client = new ServiceClient("http://api");
    expect(await client.story("nope")).toBeNull();
  });
});
