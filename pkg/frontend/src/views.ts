// Pure view functions: state in, HTML string out. Interactive elements carry
// data-action/data-feature attributes; main.ts wires them via delegation.

import type { UiProjectState } from "./state.js";
import { anomalyCount, featureRows } from "./state.js";
import { highlightFeature } from "./svgview.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function errorBanner(state: UiProjectState): string {
  if (!state.error) {
    return "";
  }
  return `<div class="banner error" role="alert">
    <span>${escapeHtml(state.error)}</span>
    <button data-action="dismiss-error">Dismiss</button>
  </div>`;
}

export function descriptionForm(busy: boolean): string {
  return `<form class="describe" data-action="create-project">
    <h2>Describe the screen</h2>
    <textarea name="description" rows="4" required
      placeholder="A todo app where I can see my tasks, add new ones..."></textarea>
    <div class="frame-fields">
      <label>Width <input name="width" type="number" value="390" min="1"></label>
      <label>Height <input name="height" type="number" value="844" min="1"></label>
    </div>
    <button type="submit" ${busy ? "disabled" : ""}>
      ${busy ? "Working…" : "Generate feature list"}
    </button>
  </form>`;
}

function statusBadge(status: string): string {
  return `<span class="badge status-${status}">${status}</span>`;
}

export function featureList(state: UiProjectState): string {
  const rows = featureRows(state);
  const items = rows.map(({ feature, edited, busy }) => {
    const disabled = busy ? "disabled" : "";
    return `<li class="feature-row ${edited ? "edited" : ""}" data-feature-id="${feature.id}">
      <div class="feature-head">
        <input class="feature-name" data-action="stage-name" data-feature="${feature.id}"
          value="${escapeHtml(feature.name)}" ${disabled}>
        ${statusBadge(feature.status)}
        ${edited ? '<span class="badge unsaved">unsaved</span>' : ""}
      </div>
      <textarea class="feature-desc" rows="2" data-action="stage-description"
        data-feature="${feature.id}" ${disabled}>${escapeHtml(feature.description)}</textarea>
      <div class="feature-actions">
        <button data-action="save-edit" data-feature="${feature.id}"
          ${edited && !busy ? "" : "disabled"}>Save</button>
        <button data-action="regenerate" data-feature="${feature.id}" ${disabled}>
          ${busy ? "Regenerating…" : "Regenerate"}</button>
        <button data-action="highlight" data-feature="${feature.id}"
          class="${state.highlighted === feature.id ? "active" : ""}">Outline</button>
        <button data-action="delete" data-feature="${feature.id}" ${disabled}>Delete</button>
      </div>
    </li>`;
  });
  return `<ul class="feature-list">${items.join("\n")}</ul>
  <form class="add-feature" data-action="add-feature">
    <input name="name" placeholder="New feature name" required>
    <input name="description" placeholder="Short description" required>
    <button type="submit">Add feature</button>
  </form>`;
}

export function previewPane(state: UiProjectState): string {
  const badges = layoutBadges(state);
  if (!state.previewSvg) {
    return `<div class="preview empty">
      ${badges}<p>No preview yet. Generate the pending features.</p></div>`;
  }
  const svg = highlightFeature(state.previewSvg, state.highlighted);
  return `<div class="preview">${badges}<div class="svg-host">${svg}</div></div>`;
}

function layoutBadges(state: UiProjectState): string {
  const layout = state.layout;
  if (!layout) {
    return "";
  }
  const total = anomalyCount(layout);
  if (total === 0) {
    return '<div class="layout-badges clean">layout clean</div>';
  }
  const parts: string[] = [];
  if (layout.out_of_frame.length) {
    parts.push(`<span class="badge warn">${layout.out_of_frame.length} out of frame</span>`);
  }
  if (layout.overlaps.length) {
    parts.push(`<span class="badge warn">${layout.overlaps.length} overlapping</span>`);
  }
  if (layout.zero_area.length) {
    parts.push(`<span class="badge warn">${layout.zero_area.length} zero-area</span>`);
  }
  return `<div class="layout-badges">${parts.join(" ")}</div>`;
}

export function projectView(state: UiProjectState): string {
  const project = state.project;
  if (!project) {
    return descriptionForm(Boolean(state.busy["*project*"]));
  }
  const doc = project.document;
  const pending = doc.features.filter((f) => f.status !== "implemented").length;
  const globalBusy = Boolean(state.busy["*project*"]);
  return `<section class="workspace">
    <aside class="sidebar">
      <h2>${escapeHtml(doc.description)}</h2>
      <p class="meta">revision ${doc.revision} · ${doc.features.length} features ·
        ${doc.instances.length} components</p>
      <button data-action="generate" ${globalBusy || pending === 0 ? "disabled" : ""}>
        ${globalBusy ? "Generating…" : `Generate (${pending} pending)`}</button>
      <button data-action="refresh" ${globalBusy ? "disabled" : ""}>Refresh</button>
      ${featureList(state)}
    </aside>
    ${previewPane(state)}
  </section>`;
}

export function app(state: UiProjectState): string {
  return `<main>
    <header><h1>uidraft</h1></header>
    ${errorBanner(state)}
    ${projectView(state)}
  </main>`;
}
