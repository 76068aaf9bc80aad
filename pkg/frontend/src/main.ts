/** Wires the controller, form, and panes into the page. */

import { ApiClient } from "./api.js";
import { buildForm } from "./form.js";
import { ExplorerController, type ExplorerState } from "./state.js";
import {
  renderBanner,
  renderDiff,
  renderPreview,
  renderRationale,
  renderRecommendation,
} from "./view.js";

function byId(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

export function mountExplorer(api: ApiClient, debounceMs = 150): ExplorerController {
  const formRoot = byId("factor-form");
  const recommendationRoot = byId("recommendation-pane");
  const rationaleRoot = byId("rationale-pane");
  const previewRoot = byId("preview-pane");
  const diffRoot = byId("diff-pane");
  const bannerRoot = byId("banner");
  const fixtureSelect = byId("fixture-select") as HTMLSelectElement;
  const loadButton = byId("load-fixture") as HTMLButtonElement;
  const pinButton = byId("pin-baseline") as HTMLButtonElement;
  const clearButton = byId("clear-baseline") as HTMLButtonElement;

  let lastSchema: unknown = null;
  let lastScenarioJson = "";

  const onState = (state: ExplorerState): void => {
    renderBanner(bannerRoot, state.serviceOk, state.fieldErrors);
    const disabled = !state.serviceOk || state.schema === null;
    for (const control of [fixtureSelect, loadButton, pinButton, clearButton]) {
      control.disabled = disabled;
    }
    if (state.schema) {
      const scenarioJson = JSON.stringify(state.current);
      // rebuild the form only when its inputs actually changed
      if (state.schema !== lastSchema || scenarioJson !== lastScenarioJson) {
        lastSchema = state.schema;
        lastScenarioJson = scenarioJson;
        buildForm(formRoot, state.schema, state.current,
                  (path, value) => controller.onFactorChange(path, value));
      }
    }
    if (fixtureSelect.options.length !== state.fixtures.length) {
      fixtureSelect.textContent = "";
      for (const fixture of state.fixtures) {
        const option = document.createElement("option");
        option.value = fixture.id;
        option.textContent = `${fixture.id}: ${fixture.description}`;
        fixtureSelect.append(option);
      }
    }
    renderRecommendation(recommendationRoot, state.lastRecommendation, state.lastDiff);
    renderRationale(rationaleRoot, state.lastRecommendation);
    renderPreview(previewRoot, state.lastRecommendation);
    renderDiff(diffRoot, state.lastDiff, state.pinnedBaseline !== null);
    const retry = document.getElementById("retry");
    if (retry) retry.addEventListener("click", () => void controller.retry(), { once: true });
  };

  const controller = new ExplorerController(api, onState, debounceMs);
  loadButton.addEventListener("click", () => {
    if (fixtureSelect.value) {
      window.location.hash = `fixture=${fixtureSelect.value}`;
      void controller.loadFixture(fixtureSelect.value);
    }
  });
  pinButton.addEventListener("click", () => controller.pinBaseline());
  clearButton.addEventListener("click", () => controller.clearBaseline());
  return controller;
}

export async function start(): Promise<ExplorerController> {
  const controller = mountExplorer(new ApiClient(""));
  await controller.init();
  const match = /^#fixture=(.+)$/.exec(window.location.hash);
  if (match && match[1]) {
    await controller.loadFixture(decodeURIComponent(match[1]));
  } else {
    await controller.refresh();
  }
  return controller;
}

declare global {
  interface Window {
    explorerAutostart?: boolean;
  }
}

if (typeof window !== "undefined" && window.explorerAutostart !== false) {
  void start();
}
