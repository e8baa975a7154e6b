// DOM glue: owns the state, re-renders on every transition, and maps
// data-action clicks/submits to API calls. The UI never mutates document
// geometry; it edits features and views renders.

import { ApiClient, ApiError } from "./api.js";
import {
  GLOBAL_BUSY,
  clearEdit,
  initialState,
  isBusy,
  setBusy,
  setError,
  stageEdit,
  toggleHighlight,
  withPreview,
  withProject,
  type UiProjectState,
} from "./state.js";
import { app } from "./views.js";

const client = new ApiClient("");
let state: UiProjectState = initialState();
const root = document.getElementById("app") as HTMLElement;

function render() {
  root.innerHTML = app(state);
}

function update(next: UiProjectState) {
  state = next;
  render();
}

function fail(err: unknown) {
  const message =
    err instanceof ApiError
      ? `${err.body.code}: ${err.body.message}`
      : err instanceof Error
        ? err.message
        : String(err);
  update(setError(state, message));
}

async function refresh() {
  const project = state.project;
  if (!project) {
    return;
  }
  const pid = project.project_id;
  const fresh = await client.getProject(pid);
  let next = withProject(state, fresh);
  if (fresh.document.instances.length > 0) {
    const [svg, layout] = await Promise.all([
      client.previewSvg(pid),
      client.layoutReport(pid),
    ]);
    next = withPreview(next, svg, layout);
  }
  update(next);
}

async function guarded(key: string, action: () => Promise<void>) {
  if (isBusy(state, key)) {
    return; // in-flight de-duplication per feature
  }
  update(setBusy(setError(state, null), key, true));
  try {
    await action();
  } catch (err) {
    fail(err);
  } finally {
    update(setBusy(state, key, false));
  }
}

async function createProject(form: HTMLFormElement) {
  const data = new FormData(form);
  const description = String(data.get("description") ?? "").trim();
  const frame = {
    width: Number(data.get("width") ?? 390),
    height: Number(data.get("height") ?? 844),
  };
  await guarded(GLOBAL_BUSY, async () => {
    const project = await client.createProject(description, frame);
    update(withProject(state, project));
    await client.decompose(project.project_id);
    await refresh();
  });
}

function featureId(el: Element): string {
  return (el as HTMLElement).dataset.feature ?? "";
}

document.addEventListener("submit", (event) => {
  const form = event.target as HTMLFormElement;
  const action = form.dataset.action;
  if (!action) {
    return;
  }
  event.preventDefault();
  if (action === "create-project") {
    void createProject(form);
  } else if (action === "add-feature") {
    const data = new FormData(form);
    const pid = state.project?.project_id;
    if (!pid) {
      return;
    }
    void guarded(GLOBAL_BUSY, async () => {
      await client.addFeature(
        pid,
        String(data.get("name") ?? ""),
        String(data.get("description") ?? ""),
      );
      await refresh();
    });
  }
});

document.addEventListener("input", (event) => {
  const el = event.target as HTMLElement;
  const action = el.dataset.action;
  const fid = featureId(el);
  if (!fid) {
    return;
  }
  const value = (el as HTMLInputElement | HTMLTextAreaElement).value;
  if (action === "stage-name") {
    state = stageEdit(state, fid, { name: value });
  } else if (action === "stage-description") {
    state = stageEdit(state, fid, { description: value });
  } else {
    return;
  }
  // No full re-render while typing; just reveal the save button state.
  const row = document.querySelector(`[data-feature-id="${fid}"]`);
  row?.classList.add("edited");
  row?.querySelector('[data-action="save-edit"]')?.removeAttribute("disabled");
});

document.addEventListener("click", (event) => {
  const el = (event.target as Element).closest("[data-action]");
  if (!el || el.tagName === "FORM") {
    return;
  }
  const action = (el as HTMLElement).dataset.action;
  const pid = state.project?.project_id;
  const fid = featureId(el);
  switch (action) {
    case "dismiss-error":
      update(setError(state, null));
      break;
    case "refresh":
      void guarded(GLOBAL_BUSY, refresh);
      break;
    case "generate":
      if (pid) {
        void guarded(GLOBAL_BUSY, async () => {
          const poll = setInterval(() => void refresh().catch(() => undefined), 2000);
          try {
            const project = await client.generate(pid);
            update(withProject(state, project));
          } finally {
            clearInterval(poll);
          }
          await refresh();
        });
      }
      break;
    case "save-edit":
      if (pid && fid) {
        void guarded(fid, async () => {
          const edit = state.pendingEdits[fid];
          if (!edit) {
            return;
          }
          await client.editFeature(pid, fid, edit);
          update(clearEdit(state, fid));
          await refresh();
        });
      }
      break;
    case "regenerate":
      if (pid && fid) {
        void guarded(fid, async () => {
          await client.regenerateFeature(pid, fid);
          await refresh();
        });
      }
      break;
    case "delete":
      if (pid && fid) {
        void guarded(fid, async () => {
          await client.deleteFeature(pid, fid);
          await refresh();
        });
      }
      break;
    case "highlight":
      update(toggleHighlight(state, fid));
      break;
  }
});

render();
