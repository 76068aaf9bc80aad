/** Schema-driven factor form. Every option token comes from /api/schema and
 * is submitted back unmodified; the form invents no vocabulary of its own. */

import type { ScenarioJson, SchemaJson } from "./types.js";

export type FactorChange = (path: string, value: unknown) => void;

function labelled(text: string, control: HTMLElement): HTMLLabelElement {
  const label = document.createElement("label");
  const span = document.createElement("span");
  span.textContent = text;
  label.append(span, control);
  return label;
}

function select(
  path: string,
  options: string[],
  value: string,
  onChange: FactorChange,
): HTMLSelectElement {
  const el = document.createElement("select");
  el.dataset.path = path;
  for (const token of options) {
    const option = document.createElement("option");
    option.value = token;
    option.textContent = token;
    el.append(option);
  }
  el.value = value;
  el.addEventListener("change", () => onChange(path, el.value));
  return el;
}

function checkbox(path: string, value: boolean, onChange: FactorChange): HTMLInputElement {
  const el = document.createElement("input");
  el.type = "checkbox";
  el.dataset.path = path;
  el.checked = value;
  el.addEventListener("change", () => onChange(path, el.checked));
  return el;
}

function textInput(path: string, value: string, onChange: FactorChange): HTMLInputElement {
  const el = document.createElement("input");
  el.type = "text";
  el.dataset.path = path;
  el.value = value;
  el.addEventListener("change", () => onChange(path, el.value));
  return el;
}

function listInput(path: string, values: string[], onChange: FactorChange): HTMLInputElement {
  const el = document.createElement("input");
  el.type = "text";
  el.dataset.path = path;
  el.value = values.join(", ");
  el.addEventListener("change", () => {
    const items = el.value.split(",").map((item) => item.trim()).filter((item) => item.length > 0);
    onChange(path, items);
  });
  return el;
}

function goalChecklist(
  path: string,
  options: string[],
  selected: string[],
  onChange: FactorChange,
): HTMLFieldSetElement {
  const fieldset = document.createElement("fieldset");
  fieldset.dataset.path = path;
  for (const token of options) {
    const box = document.createElement("input");
    box.type = "checkbox";
    box.value = token;
    box.checked = selected.includes(token);
    box.addEventListener("change", () => {
      const chosen = Array.from(fieldset.querySelectorAll<HTMLInputElement>("input"))
        .filter((input) => input.checked)
        .map((input) => input.value);
      onChange(path, chosen);
    });
    const label = document.createElement("label");
    label.className = "goal-option";
    label.append(box, document.createTextNode(token));
    fieldset.append(label);
  }
  return fieldset;
}

function confidenceInput(path: string, value: number | string, onChange: FactorChange,
                         bands: string[]): HTMLInputElement {
  const el = document.createElement("input");
  el.type = "text";
  el.dataset.path = path;
  el.setAttribute("list", "confidence-bands");
  el.value = String(value);
  el.title = `a band (${bands.join(", ")}) or a fraction in [0,1]`;
  el.addEventListener("change", () => {
    const raw = el.value.trim();
    const numeric = Number(raw);
    onChange(path, raw !== "" && !Number.isNaN(numeric) ? numeric : raw);
  });
  return el;
}

function mapArea(path: string, entries: Record<string, string>,
                 onChange: FactorChange): HTMLTextAreaElement {
  const el = document.createElement("textarea");
  el.dataset.path = path;
  el.rows = 4;
  el.value = Object.entries(entries).map(([k, v]) => `${k} = ${v}`).join("\n");
  el.addEventListener("change", () => {
    const map: Record<string, string> = {};
    for (const line of el.value.split("\n")) {
      const idx = line.indexOf("=");
      if (idx <= 0) continue;
      const key = line.slice(0, idx).trim();
      if (key) map[key] = line.slice(idx + 1).trim();
    }
    onChange(path, map);
  });
  return el;
}

function section(title: string, factor: string, rows: HTMLElement[]): HTMLElement {
  const wrapper = document.createElement("section");
  wrapper.className = "factor-section";
  wrapper.dataset.factor = factor;
  const heading = document.createElement("h3");
  heading.textContent = title;
  wrapper.append(heading, ...rows);
  return wrapper;
}

/** Rebuild the whole factor form from the schema and the current scenario. */
export function buildForm(
  root: HTMLElement,
  schema: SchemaJson,
  scenario: ScenarioJson,
  onChange: FactorChange,
): void {
  root.textContent = "";

  const bandList = document.createElement("datalist");
  bandList.id = "confidence-bands";
  for (const band of schema.confidence_bands) {
    const option = document.createElement("option");
    option.value = band;
    bandList.append(option);
  }
  root.append(bandList);

  root.append(
    section("User state", "user_state", [
      labelled("activity", textInput("user_state.activity", scenario.user_state.activity, onChange)),
      labelled("cognitive load", select("user_state.cognitive_load", schema.load_levels,
                                        scenario.user_state.cognitive_load, onChange)),
      labelled("time urgency", select("user_state.time_urgency", schema.load_levels,
                                      scenario.user_state.time_urgency, onChange)),
      labelled("surprised", checkbox("user_state.surprised", scenario.user_state.surprised, onChange)),
      labelled("confused", checkbox("user_state.confused", scenario.user_state.confused, onChange)),
      labelled("hands busy", checkbox("user_state.hands_busy", scenario.user_state.hands_busy, onChange)),
    ]),
    section("Context", "context", [
      labelled("location", textInput("context.location", scenario.context.location, onChange)),
      labelled("time of day", textInput("context.time_of_day", scenario.context.time_of_day, onChange)),
      labelled("environment", listInput("context.environment", scenario.context.environment, onChange)),
      labelled("visual load", select("context.visual_load", schema.load_levels,
                                     scenario.context.visual_load, onChange)),
      labelled("audio load", select("context.audio_load", schema.load_levels,
                                    scenario.context.audio_load, onChange)),
    ]),
    section("System goals", "system_goals", [
      goalChecklist("system_goals", schema.system_goals, scenario.system_goals, onChange),
    ]),
    section("User goals", "user_goals", [
      goalChecklist("user_goals", schema.user_goals, scenario.user_goals, onChange),
    ]),
    section("User profile", "profile", [
      labelled("AI literacy", select("profile.ai_literacy", schema.ai_literacy,
                                     scenario.profile.ai_literacy, onChange)),
      labelled("familiar with outcome", checkbox("profile.familiar_with_outcome",
                                                 scenario.profile.familiar_with_outcome, onChange)),
      labelled("preferences", mapArea("profile.preferences", scenario.profile.preferences, onChange)),
    ]),
    section("AI output", "ai_output", [
      labelled("modality", select("ai_output.modality", schema.modalities,
                                  scenario.ai_output.modality, onChange)),
      labelled("description", textInput("ai_output.description",
                                        scenario.ai_output.description, onChange)),
      labelled("confidence", confidenceInput("ai_output.confidence",
                                             scenario.ai_output.confidence, onChange,
                                             schema.confidence_bands)),
      labelled("anchors", listInput("ai_output.anchors", scenario.ai_output.anchors, onChange)),
    ]),
    section("Facts", "facts", [
      labelled("template facts", mapArea("facts", scenario.facts, onChange)),
    ]),
  );
}
