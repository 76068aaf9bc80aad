import { describe, expect, it } from "vitest";

import { ServiceError } from "../src/api.js";
import { ExplorerController, emptyScenario, shapeErrors, withFactor } from "../src/state.js";
import type { RecommendPayload, ScenarioJson } from "../src/types.js";
import { fakeApi, testPayload, testSchema } from "./helpers.js";

function controllerWith(api: ReturnType<typeof fakeApi>): ExplorerController {
  return new ExplorerController(api, () => undefined, 0);
}

describe("shape validation", () => {
  it("accepts the empty scenario", () => {
    expect(shapeErrors(emptyScenario(), testSchema)).toEqual([]);
  });

  it("rejects unknown tokens and empty goal sets", () => {
    let s = withFactor(emptyScenario(), "profile.ai_literacy", "grandmaster");
    s = withFactor(s, "user_goals", []);
    const errors = shapeErrors(s, testSchema);
    expect(errors.some((e) => e.includes("ai_literacy"))).toBe(true);
    expect(errors.some((e) => e.includes("user_goals"))).toBe(true);
  });

  it("checks numeric confidence range", () => {
    const s = withFactor(emptyScenario(), "ai_output.confidence", 1.5);
    expect(shapeErrors(s, testSchema)).toEqual(["ai_output.confidence: out of [0,1]"]);
  });
});

describe("ExplorerController", () => {
  it("displays service responses verbatim (no client-side design logic)", async () => {
    const payload = testPayload(["input_output", "why_why_not", "certainty"]);
    const api = fakeApi({ recommend: () => Promise.resolve(payload) });
    const controller = controllerWith(api);
    await controller.init();
    await controller.refresh();
    expect(JSON.stringify(controller.state.lastRecommendation))
      .toBe(JSON.stringify(payload));
  });

  it("never lets a stale response overwrite a newer one", async () => {
    const pending: Array<(p: RecommendPayload) => void> = [];
    const api = fakeApi({
      recommend: () => new Promise<RecommendPayload>((resolve) => pending.push(resolve)),
    });
    const controller = controllerWith(api);
    await controller.init();
    const first = controller.refresh();
    const second = controller.refresh();
    expect(pending).toHaveLength(2);
    // the newer request answers first; the stale one lands afterwards
    pending[1]!(testPayload(["why_why_not", "how"]));
    await second;
    pending[0]!(testPayload(["input_output"]));
    await first;
    expect(controller.state.lastRecommendation?.recommendation.content)
      .toEqual(["why_why_not", "how"]);
  });

  it("issues no requests while the service is down, until retry", async () => {
    const api = fakeApi({ getSchema: () => Promise.reject(new Error("down")) });
    const controller = controllerWith(api);
    await controller.init();
    expect(controller.state.serviceOk).toBe(false);
    controller.onFactorChange("user_state.surprised", true);
    controller.onFactorChange("profile.ai_literacy", "high");
    await controller.refresh();
    expect(api.recommendCalls).toHaveLength(0);
    api.getSchema = () => Promise.resolve(testSchema);
    await controller.retry();
    expect(controller.state.serviceOk).toBe(true);
    await controller.refresh();
    expect(api.recommendCalls.length).toBeGreaterThan(0);
  });

  it("surfaces 400 validation errors per field without marking the service down", async () => {
    const api = fakeApi({
      recommend: () => Promise.reject(new ServiceError(400, [
        { kind: "bad_value", message: "$.user_goals: missing list", line: null, column: null },
      ])),
    });
    const controller = controllerWith(api);
    await controller.init();
    await controller.refresh();
    expect(controller.state.serviceOk).toBe(true);
    expect(controller.state.fieldErrors).toEqual(["$.user_goals: missing list"]);
  });

  it("pins a baseline snapshot and diffs against it", async () => {
    const api = fakeApi();
    const controller = controllerWith(api);
    await controller.init();
    await controller.refresh();
    controller.pinBaseline();
    const baseline = controller.state.pinnedBaseline as ScenarioJson;
    controller.onFactorChange("profile.ai_literacy", "high");
    await controller.refresh();
    const [a, b] = api.diffCalls.at(-1)!;
    expect(a).toEqual(baseline);
    expect(b.profile.ai_literacy).toBe("high");
    // pinning without changes reports an identical diff
    expect(controller.state.lastDiff).toEqual({ identical: true, fields: [] });
    // the baseline snapshot is immune to later edits
    expect(baseline.profile.ai_literacy).toBe("low");
  });

  it("reports unknown fixtures without losing the session", async () => {
    const api = fakeApi({
      getFixture: () => Promise.reject(new ServiceError(404, [
        { kind: "bad_value", message: "unknown fixture 'nope'", line: null, column: null },
      ])),
    });
    const controller = controllerWith(api);
    await controller.init();
    await controller.loadFixture("nope");
    expect(controller.state.serviceOk).toBe(true);
    expect(controller.state.fieldErrors[0]).toContain("nope");
  });

  it("keeps the current scenario shape-valid before every request", async () => {
    const api = fakeApi();
    const controller = controllerWith(api);
    await controller.init();
    controller.onFactorChange("system_goals", []);
    await controller.refresh();
    expect(api.recommendCalls).toHaveLength(0);
    expect(controller.state.fieldErrors.some((e) => e.includes("system_goals"))).toBe(true);
  });
});
