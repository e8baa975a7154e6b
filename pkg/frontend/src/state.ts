// UI state: the last-fetched project snapshot plus local, unsaved edits.
// The rendered feature list is always snapshot + pending edits, with edited
// rows visibly marked. All helpers are pure so they can be tested directly.

import type { Feature, LayoutReport, Project } from "./api.js";

export interface PendingEdit {
  name?: string;
  description?: string;
}

export interface UiProjectState {
  project: Project | null;
  pendingEdits: Record<string, PendingEdit>;
  busy: Record<string, boolean>;
  error: string | null;
  previewSvg: string | null;
  layout: LayoutReport | null;
  highlighted: string | null;
}

export const GLOBAL_BUSY = "*project*";

export function initialState(): UiProjectState {
  return {
    project: null,
    pendingEdits: {},
    busy: {},
    error: null,
    previewSvg: null,
    layout: null,
    highlighted: null,
  };
}

export function withProject(state: UiProjectState, project: Project): UiProjectState {
  // A fresh snapshot supersedes any pending edits for features it contains;
  // edits for features that no longer exist are dropped too.
  const ids = new Set(project.document.features.map((f) => f.id));
  const pendingEdits: Record<string, PendingEdit> = {};
  for (const [fid, edit] of Object.entries(state.pendingEdits)) {
    if (ids.has(fid) && !state.busy[fid]) {
      pendingEdits[fid] = edit;
    }
  }
  return { ...state, project, pendingEdits, error: null };
}

export function withPreview(
  state: UiProjectState,
  previewSvg: string,
  layout: LayoutReport,
): UiProjectState {
  return { ...state, previewSvg, layout };
}

export function stageEdit(
  state: UiProjectState,
  featureId: string,
  patch: PendingEdit,
): UiProjectState {
  const current = state.pendingEdits[featureId] ?? {};
  return {
    ...state,
    pendingEdits: { ...state.pendingEdits, [featureId]: { ...current, ...patch } },
  };
}

export function clearEdit(state: UiProjectState, featureId: string): UiProjectState {
  const pendingEdits = { ...state.pendingEdits };
  delete pendingEdits[featureId];
  return { ...state, pendingEdits };
}

export function setBusy(state: UiProjectState, key: string, busy: boolean): UiProjectState {
  return { ...state, busy: { ...state.busy, [key]: busy } };
}

export function isBusy(state: UiProjectState, key: string): boolean {
  return Boolean(state.busy[key] || state.busy[GLOBAL_BUSY]);
}

export function setError(state: UiProjectState, message: string | null): UiProjectState {
  return { ...state, error: message };
}

export function toggleHighlight(state: UiProjectState, featureId: string): UiProjectState {
  return { ...state, highlighted: state.highlighted === featureId ? null : featureId };
}

export interface FeatureRow {
  feature: Feature;
  edited: boolean;
  busy: boolean;
}

export function featureRows(state: UiProjectState): FeatureRow[] {
  if (!state.project) {
    return [];
  }
  return state.project.document.features.map((feature) => {
    const edit = state.pendingEdits[feature.id];
    const merged: Feature = edit ? { ...feature, ...edit } : feature;
    return {
      feature: merged,
      edited: Boolean(edit),
      busy: isBusy(state, feature.id),
    };
  });
}

export function anomalyCount(layout: LayoutReport | null): number {
  if (!layout) {
    return 0;
  }
  return layout.out_of_frame.length + layout.overlaps.length + layout.zero_area.length;
}
