import type {
  CorpusIndexJson,
  DiffJson,
  FixtureJson,
  RecommendPayload,
  RecommendationJson,
  ScenarioJson,
  SchemaJson,
} from "../src/types.js";
import type { ExplorerApi } from "../src/state.js";

export const testSchema: SchemaJson = {
  content_types: ["input_output", "why_why_not", "how", "certainty",
                  "example", "what_if", "how_to"],
  system_goals: ["intent_discovery", "intent_assistance", "error_management",
                 "trust_building"],
  user_goals: ["resolve_confusion_surprise", "privacy_awareness", "reliability",
               "informativeness"],
  load_levels: ["low", "medium", "high"],
  modalities: ["visual", "audio", "haptic"],
  explanation_modalities: ["visual", "audio"],
  ai_literacy: ["low", "high"],
  confidence_bands: ["low", "medium", "high"],
  delivery_modes: ["manual_trigger", "auto_trigger"],
  patterns: ["implicit", "explicit"],
  formats: ["text_only", "text_with_graphics"],
  diff_factors: ["user_state", "context", "system_goals", "user_goals",
                 "profile", "ai_output"],
};

export function testRecommendation(content: string[]): RecommendationJson {
  return {
    availability: "available",
    delivery: { mode: "manual_trigger", trigger_modality: "visual" },
    content,
    detail: { concise: ["why_why_not"], detailed: content, expansion_affordance: true },
    explanation_modality: "visual",
    paradigm: {
      applicable: true,
      format: "text_only",
      fragment_patterns: Object.fromEntries(content.map((ct) => [ct, "explicit"])),
    },
    confirmation_required: false,
    rationale: [{ guideline: "G1", decision_field: "availability", reason: "always" }],
  };
}

export function testPayload(content: string[]): RecommendPayload {
  return {
    scenario_id: "explorer",
    recommendation: testRecommendation(content),
    rendered: { concise_text: "because reasons", sections: [] },
    render_error: null,
  };
}

export interface FakeApi extends ExplorerApi {
  recommendCalls: ScenarioJson[];
  diffCalls: Array<[ScenarioJson, ScenarioJson]>;
}

/** A canned-response service double that records every call. */
export function fakeApi(overrides: Partial<ExplorerApi> = {}): FakeApi {
  const corpus: CorpusIndexJson = { fixtures: [] };
  const api: FakeApi = {
    recommendCalls: [],
    diffCalls: [],
    getSchema: () => Promise.resolve(testSchema),
    getCorpus: () => Promise.resolve(corpus),
    getFixture: (id: string): Promise<FixtureJson> =>
      Promise.reject(new Error(`no fixture ${id}`)),
    recommend(scenario: ScenarioJson) {
      api.recommendCalls.push(scenario);
      return Promise.resolve(testPayload(["input_output", "why_why_not"]));
    },
    diff(a: ScenarioJson, b: ScenarioJson): Promise<DiffJson> {
      api.diffCalls.push([a, b]);
      return Promise.resolve({ identical: true, fields: [] });
    },
    ...overrides,
  };
  return api;
}
