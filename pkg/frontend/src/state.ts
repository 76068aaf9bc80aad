/** Explorer state and the controller that drives it.
 *
 * The controller performs no design logic: every displayed decision value
 * comes verbatim from a service response. Its own responsibilities are
 * form-shape validation, request debouncing, and latest-request-wins
 * ordering via monotonically increasing sequence numbers.
 */

import { ServiceError } from "./api.js";
import type {
  CorpusIndexJson,
  DiffJson,
  FixtureJson,
  FixtureSummaryJson,
  RecommendPayload,
  ScenarioJson,
  SchemaJson,
} from "./types.js";

/** What the controller needs from the service; ApiClient satisfies it. */
export interface ExplorerApi {
  getSchema(): Promise<SchemaJson>;
  getCorpus(): Promise<CorpusIndexJson>;
  getFixture(id: string): Promise<FixtureJson>;
  recommend(scenario: ScenarioJson): Promise<RecommendPayload>;
  diff(a: ScenarioJson, b: ScenarioJson): Promise<DiffJson>;
}

export interface ExplorerState {
  schema: SchemaJson | null;
  fixtures: FixtureSummaryJson[];
  current: ScenarioJson;
  pinnedBaseline: ScenarioJson | null;
  lastRecommendation: RecommendPayload | null;
  lastDiff: DiffJson | null;
  serviceOk: boolean;
  fieldErrors: string[];
  busy: boolean;
}

export type StateListener = (state: ExplorerState) => void;

/** A scenario that passes shape validation with no factors selected yet. */
export function emptyScenario(): ScenarioJson {
  return {
    id: "explorer",
    user_state: {
      activity: "exploring",
      cognitive_load: "low",
      time_urgency: "low",
      surprised: false,
      confused: false,
      hands_busy: false,
    },
    context: {
      location: "desk",
      time_of_day: "now",
      environment: [],
      visual_load: "low",
      audio_load: "low",
    },
    system_goals: ["intent_discovery"],
    user_goals: ["informativeness"],
    profile: { ai_literacy: "low", familiar_with_outcome: true, preferences: {} },
    ai_output: { modality: "visual", description: "an AI outcome", confidence: "high", anchors: [] },
    facts: {},
  };
}

function clone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

/** Shape-check a scenario against the service schema before any request. */
export function shapeErrors(scenario: ScenarioJson, schema: SchemaJson): string[] {
  const errors: string[] = [];
  const inList = (value: string, list: string[], where: string) => {
    if (!list.includes(value)) errors.push(`${where}: unknown token "${value}"`);
  };
  inList(scenario.user_state.cognitive_load, schema.load_levels, "user_state.cognitive_load");
  inList(scenario.user_state.time_urgency, schema.load_levels, "user_state.time_urgency");
  inList(scenario.context.visual_load, schema.load_levels, "context.visual_load");
  inList(scenario.context.audio_load, schema.load_levels, "context.audio_load");
  inList(scenario.profile.ai_literacy, schema.ai_literacy, "profile.ai_literacy");
  inList(scenario.ai_output.modality, schema.modalities, "ai_output.modality");
  if (scenario.system_goals.length === 0) errors.push("system_goals: select at least one");
  if (scenario.user_goals.length === 0) errors.push("user_goals: select at least one");
  for (const goal of scenario.system_goals) inList(goal, schema.system_goals, "system_goals");
  for (const goal of scenario.user_goals) inList(goal, schema.user_goals, "user_goals");
  const confidence = scenario.ai_output.confidence;
  if (typeof confidence === "number") {
    if (!(confidence >= 0 && confidence <= 1)) errors.push("ai_output.confidence: out of [0,1]");
  } else {
    inList(confidence, schema.confidence_bands, "ai_output.confidence");
  }
  return errors;
}

/** Set a dotted path like "profile.ai_literacy" on a scenario copy. */
export function withFactor(scenario: ScenarioJson, path: string, value: unknown): ScenarioJson {
  const next = clone(scenario);
  const parts = path.split(".");
  let target: Record<string, unknown> = next as unknown as Record<string, unknown>;
  for (const part of parts.slice(0, -1)) {
    target = target[part] as Record<string, unknown>;
  }
  target[parts[parts.length - 1] as string] = value;
  return next;
}

export class ExplorerController {
  readonly state: ExplorerState;
  private readonly api: ExplorerApi;
  private readonly listener: StateListener;
  private readonly debounceMs: number;
  private refreshSeq = 0;
  private debounceHandle: ReturnType<typeof setTimeout> | null = null;

  constructor(api: ExplorerApi, listener: StateListener, debounceMs = 150) {
    this.api = api;
    this.listener = listener;
    this.debounceMs = debounceMs;
    this.state = {
      schema: null,
      fixtures: [],
      current: emptyScenario(),
      pinnedBaseline: null,
      lastRecommendation: null,
      lastDiff: null,
      serviceOk: true,
      fieldErrors: [],
      busy: false,
    };
  }

  private emit(): void {
    this.listener(this.state);
  }

  /** Load schema and fixture index; a failure disables the controls. */
  async init(): Promise<void> {
    try {
      this.state.schema = await this.api.getSchema();
      this.state.fixtures = (await this.api.getCorpus()).fixtures;
      this.state.serviceOk = true;
    } catch {
      this.state.serviceOk = false;
    }
    this.emit();
  }

  /** Change one factor field; refresh is debounced and sequence-gated. */
  onFactorChange(path: string, value: unknown): void {
    this.state.current = withFactor(this.state.current, path, value);
    this.scheduleRefresh();
    this.emit();
  }

  replaceScenario(scenario: ScenarioJson): void {
    this.state.current = clone(scenario);
    this.scheduleRefresh();
    this.emit();
  }

  private scheduleRefresh(): void {
    if (!this.state.serviceOk || !this.state.schema) return;
    if (this.debounceHandle !== null) clearTimeout(this.debounceHandle);
    if (this.debounceMs === 0) {
      void this.refresh();
      return;
    }
    this.debounceHandle = setTimeout(() => {
      this.debounceHandle = null;
      void this.refresh();
    }, this.debounceMs);
  }

  /** Recompute the recommendation (and the diff when a baseline is pinned).
   * Responses that are superseded by a newer request are dropped. */
  async refresh(): Promise<void> {
    const schema = this.state.schema;
    if (!this.state.serviceOk || !schema) return;
    const errors = shapeErrors(this.state.current, schema);
    if (errors.length > 0) {
      this.state.fieldErrors = errors;
      this.emit();
      return;
    }
    const seq = ++this.refreshSeq;
    const scenario = clone(this.state.current);
    const baseline = this.state.pinnedBaseline;
    this.state.busy = true;
    this.emit();
    try {
      const recommendation = await this.api.recommend(scenario);
      const diff = baseline !== null ? await this.api.diff(baseline, scenario) : null;
      if (seq !== this.refreshSeq) return; // superseded while in flight
      this.state.lastRecommendation = recommendation;
      this.state.lastDiff = diff;
      this.state.fieldErrors = [];
    } catch (error) {
      if (seq !== this.refreshSeq) return;
      if (error instanceof ServiceError && error.status === 400) {
        this.state.fieldErrors = error.errors.map((e) => e.message);
      } else {
        this.state.serviceOk = false;
      }
    } finally {
      if (seq === this.refreshSeq) {
        this.state.busy = false;
        this.emit();
      }
    }
  }

  /** Snapshot the current scenario as the comparison baseline. */
  pinBaseline(): void {
    this.state.pinnedBaseline = clone(this.state.current);
    this.scheduleRefresh();
    this.emit();
  }

  clearBaseline(): void {
    this.state.pinnedBaseline = null;
    this.state.lastDiff = null;
    this.scheduleRefresh();
    this.emit();
  }

  /** Populate the form from a named corpus fixture. */
  async loadFixture(id: string): Promise<void> {
    try {
      const fixture = await this.api.getFixture(id);
      this.replaceScenario(fixture.scenario);
    } catch (error) {
      if (error instanceof ServiceError && error.status === 404) {
        this.state.fieldErrors = [`unknown fixture "${id}"`];
        this.emit();
        return;
      }
      this.state.serviceOk = false;
      this.emit();
    }
  }

  /** Re-probe the service after an outage. */
  async retry(): Promise<void> {
    this.state.serviceOk = true;
    await this.init();
    if (this.state.serviceOk) this.scheduleRefresh();
  }
}
