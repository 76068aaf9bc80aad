/** JSON shapes exchanged with the service. These mirror the API exactly;
 * the explorer never invents values of these types, it only round-trips
 * them between the form and the service. */

export type LoadLevel = string;
export type Token = string;

export interface UserStateJson {
  activity: string;
  cognitive_load: LoadLevel;
  time_urgency: LoadLevel;
  surprised: boolean;
  confused: boolean;
  hands_busy: boolean;
}

export interface ContextJson {
  location: string;
  time_of_day: string;
  environment: string[];
  visual_load: LoadLevel;
  audio_load: LoadLevel;
}

export interface ProfileJson {
  ai_literacy: Token;
  familiar_with_outcome: boolean;
  preferences: Record<string, string>;
}

export interface AiOutputJson {
  modality: Token;
  description: string;
  confidence: number | Token;
  anchors: string[];
}

export interface ScenarioJson {
  id: string;
  user_state: UserStateJson;
  context: ContextJson;
  system_goals: Token[];
  user_goals: Token[];
  profile: ProfileJson;
  ai_output: AiOutputJson;
  facts: Record<string, string>;
}

export interface RationaleEntryJson {
  guideline: string;
  decision_field: string;
  reason: string;
}

export interface RecommendationJson {
  availability: string;
  delivery: { mode: Token; trigger_modality: Token };
  content: Token[];
  detail: { concise: Token[]; detailed: Token[]; expansion_affordance: boolean };
  explanation_modality: Token;
  paradigm: {
    applicable: boolean;
    format: Token;
    fragment_patterns: Record<string, Token>;
  };
  confirmation_required: boolean;
  rationale: RationaleEntryJson[];
}

export interface RenderedSectionJson {
  content_type: Token;
  text: string;
  graphic: { asset_id: string; complexity: Token } | null;
  pattern: Token;
}

export interface RenderedJson {
  concise_text: string;
  sections: RenderedSectionJson[];
}

export interface RecommendPayload {
  scenario_id: string;
  recommendation: RecommendationJson;
  rendered: RenderedJson | null;
  render_error: string | null;
}

export interface FieldDiffJson {
  field: string;
  a: unknown;
  b: unknown;
  attribution: string[];
}

export interface DiffJson {
  identical: boolean;
  fields: FieldDiffJson[];
}

export interface SchemaJson {
  content_types: Token[];
  system_goals: Token[];
  user_goals: Token[];
  load_levels: Token[];
  modalities: Token[];
  explanation_modalities: Token[];
  ai_literacy: Token[];
  confidence_bands: Token[];
  delivery_modes: Token[];
  patterns: Token[];
  formats: Token[];
  diff_factors: Token[];
}

export interface FixtureSummaryJson {
  id: string;
  activity: string;
  description: string;
  has_golden: boolean;
}

export interface CorpusIndexJson {
  fixtures: FixtureSummaryJson[];
}

export interface FixtureJson {
  id: string;
  scenario: ScenarioJson;
  golden: Record<string, unknown> | null;
}

export interface ApiErrorItem {
  kind: string;
  message: string;
  line: number | null;
  column: number | null;
}
