/** Output panes. Everything shown is copied verbatim from service
 * responses; the only view-side computation is picking CSS classes. */

import type { DiffJson, RecommendPayload } from "./types.js";

/** Recommendation fields colored by the factor section that changed them. */
const FACTOR_CLASSES: Record<string, string> = {
  user_state: "attr-user-state",
  context: "attr-context",
  system_goals: "attr-system-goals",
  user_goals: "attr-user-goals",
  profile: "attr-profile",
  ai_output: "attr-ai-output",
};

function attributionClass(diff: DiffJson | null, field: string): string {
  if (!diff || diff.identical) return "";
  const entry = diff.fields.find((f) => f.field === field);
  if (!entry) return "";
  const factor = entry.attribution[0];
  return factor !== undefined ? ` changed ${FACTOR_CLASSES[factor] ?? ""}` : " changed";
}

function chip(label: string, value: string, extraClass: string): HTMLElement {
  const el = document.createElement("span");
  el.className = `chip${extraClass}`;
  el.textContent = `${label}: ${value}`;
  return el;
}

function tokenList(id: string, tokens: string[], extraClass: string): HTMLElement {
  const el = document.createElement("ul");
  el.id = id;
  el.className = `token-list${extraClass}`;
  for (const token of tokens) {
    const item = document.createElement("li");
    item.dataset.token = token;
    item.textContent = token;
    el.append(item);
  }
  return el;
}

export function renderRecommendation(
  root: HTMLElement,
  payload: RecommendPayload | null,
  diff: DiffJson | null,
): void {
  root.textContent = "";
  if (!payload) {
    root.textContent = "no recommendation yet";
    return;
  }
  const rec = payload.recommendation;
  const chips = document.createElement("div");
  chips.className = "chips";
  chips.append(
    chip("availability", rec.availability, ""),
    chip("delivery", rec.delivery.mode, attributionClass(diff, "delivery_mode")),
    chip("trigger", rec.delivery.trigger_modality, attributionClass(diff, "trigger_modality")),
    chip("modality", rec.explanation_modality, attributionClass(diff, "explanation_modality")),
    chip("format", rec.paradigm.applicable ? rec.paradigm.format : "n/a",
         attributionClass(diff, "format")),
    chip("confirmation", rec.confirmation_required ? "required" : "not required",
         attributionClass(diff, "confirmation_required")),
  );
  root.append(chips);

  const contentHeading = document.createElement("h4");
  contentHeading.textContent = "content types";
  root.append(contentHeading,
              tokenList("content-pane", rec.content, attributionClass(diff, "content")));

  const conciseHeading = document.createElement("h4");
  conciseHeading.textContent = "concise (default view)";
  root.append(conciseHeading,
              tokenList("concise-pane", rec.detail.concise, attributionClass(diff, "concise")));

  const patternsHeading = document.createElement("h4");
  patternsHeading.textContent = "patterns";
  const patterns = document.createElement("ul");
  patterns.id = "patterns-pane";
  patterns.className = `token-list${attributionClass(diff, "patterns")}`;
  for (const [contentType, pattern] of Object.entries(rec.paradigm.fragment_patterns)) {
    const item = document.createElement("li");
    item.dataset.token = contentType;
    item.textContent = `${contentType}: ${pattern}`;
    patterns.append(item);
  }
  root.append(patternsHeading, patterns);
}

export function renderRationale(root: HTMLElement, payload: RecommendPayload | null): void {
  root.textContent = "";
  if (!payload) return;
  const table = document.createElement("table");
  table.id = "rationale-table";
  for (const entry of payload.recommendation.rationale) {
    const row = document.createElement("tr");
    for (const cell of [entry.guideline, entry.decision_field, entry.reason]) {
      const td = document.createElement("td");
      td.textContent = cell;
      row.append(td);
    }
    table.append(row);
  }
  root.append(table);
}

export function renderPreview(root: HTMLElement, payload: RecommendPayload | null): void {
  root.textContent = "";
  if (!payload) return;
  if (payload.render_error !== null) {
    const note = document.createElement("p");
    note.className = "render-error";
    note.textContent = payload.render_error;
    root.append(note);
    return;
  }
  if (!payload.rendered) return;
  const concise = document.createElement("p");
  concise.id = "preview-concise";
  concise.textContent = payload.rendered.concise_text;
  root.append(concise);
  const details = document.createElement("dl");
  for (const section of payload.rendered.sections) {
    const dt = document.createElement("dt");
    dt.textContent = `${section.content_type} (${section.pattern})`;
    const dd = document.createElement("dd");
    dd.textContent = section.graphic
      ? `${section.text} [graphic: ${section.graphic.asset_id}]`
      : section.text;
    details.append(dt, dd);
  }
  root.append(details);
}

export function renderDiff(root: HTMLElement, diff: DiffJson | null, pinned: boolean): void {
  root.textContent = "";
  if (!pinned) {
    root.textContent = "pin a baseline to compare";
    return;
  }
  if (!diff || diff.identical) {
    root.textContent = "no differences";
    return;
  }
  const table = document.createElement("table");
  table.id = "diff-table";
  for (const field of diff.fields) {
    const row = document.createElement("tr");
    const factor = field.attribution[0];
    row.className = factor !== undefined ? (FACTOR_CLASSES[factor] ?? "") : "";
    const cells = [
      field.field,
      JSON.stringify(field.a),
      JSON.stringify(field.b),
      field.attribution.join(", ") || "joint",
    ];
    for (const cell of cells) {
      const td = document.createElement("td");
      td.textContent = cell;
      row.append(td);
    }
    table.append(row);
  }
  root.append(table);
}

export function renderBanner(root: HTMLElement, serviceOk: boolean, errors: string[]): void {
  root.textContent = "";
  root.classList.toggle("hidden", serviceOk && errors.length === 0);
  if (!serviceOk) {
    const note = document.createElement("strong");
    note.textContent = "service unreachable — controls disabled";
    const retry = document.createElement("button");
    retry.id = "retry";
    retry.textContent = "retry";
    root.append(note, retry);
    return;
  }
  for (const message of errors) {
    const item = document.createElement("div");
    item.className = "field-error";
    item.textContent = message;
    root.append(item);
  }
}
