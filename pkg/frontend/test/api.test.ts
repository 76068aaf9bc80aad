import { describe, expect, it } from "vitest";

import { ApiClient, ServiceError } from "../src/api.js";
import { testSchema } from "./helpers.js";

function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("ApiClient", () => {
  it("decodes schema responses", async () => {
    const client = new ApiClient("http://svc", async (input) => {
      expect(input).toBe("http://svc/api/schema");
      return jsonResponse(testSchema);
    });
    const schema = await client.getSchema();
    expect(schema.content_types).toHaveLength(7);
    expect(schema.system_goals).toHaveLength(4);
    expect(schema.user_goals).toHaveLength(4);
  });

  it("posts scenarios as JSON bodies", async () => {
    let seenBody: unknown = null;
    const client = new ApiClient("", async (input, init) => {
      expect(input).toBe("/api/recommend");
      expect(init?.method).toBe("POST");
      seenBody = JSON.parse(String(init?.body));
      return jsonResponse({ scenario_id: "x", recommendation: null, rendered: null, render_error: null });
    });
    await client.recommend({ id: "x" } as never);
    expect(seenBody).toEqual({ id: "x" });
  });

  it("raises ServiceError with the structured error payload", async () => {
    const client = new ApiClient("", async () =>
      jsonResponse({ errors: [{ kind: "bad_value", message: "nope", line: null, column: null }] }, 400));
    const failure = await client.getCorpus().catch((e: unknown) => e);
    expect(failure).toBeInstanceOf(ServiceError);
    expect((failure as ServiceError).status).toBe(400);
    expect((failure as ServiceError).errors[0]?.message).toBe("nope");
  });

  it("encodes fixture ids in paths", async () => {
    const client = new ApiClient("", async (input) => {
      expect(input).toBe("/api/corpus/a%2Fb");
      return jsonResponse({ id: "a/b", scenario: {}, golden: null });
    });
    await client.getFixture("a/b");
  });
});
