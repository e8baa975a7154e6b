// Typed client for the prototype service. Every call goes through request()
// so the full session (method, path, body) is observable for contract tests.

export interface FrameSpec {
  width: number;
  height: number;
}

export type FeatureStatus = "pending" | "implemented" | "stale";

export interface Feature {
  id: string;
  name: string;
  description: string;
  origin: "generated" | "user_added" | "user_edited";
  status: FeatureStatus;
}

export interface Instance {
  instance_id: string;
  feature_id: string;
  type_name: string;
  posX: number;
  posY: number;
  width: number;
  height: number;
  attributes?: Record<string, unknown>;
  icon?: string;
  slot?: string;
  children?: Instance[];
}

export interface GuiDocument {
  ir_version: string;
  doc_id: string;
  frame: FrameSpec;
  description: string;
  revision: number;
  features: Feature[];
  instances: Instance[];
}

export interface Project {
  project_id: string;
  created_at: string;
  updated_at: string;
  document: GuiDocument;
  traces: unknown[];
}

export interface LayoutReport {
  out_of_frame: string[];
  overlaps: [string, string][];
  zero_area: string[];
}

export interface CatalogView {
  entries: { group: string; types: string[] }[];
  serialized_form: string;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  detail?: unknown;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiErrorBody,
  ) {
    super(body.message || `HTTP ${status}`);
  }
}

export interface LoggedRequest {
  method: string;
  path: string;
  body: unknown | null;
}

export class ApiClient {
  readonly log: LoggedRequest[] = [];

  constructor(
    private baseUrl = "",
    private fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request(method: string, path: string, body?: unknown): Promise<Response> {
    this.log.push({ method, path, body: body ?? null });
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    let resp: Response;
    try {
      resp = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, {
        code: "unreachable",
        message: `service unreachable: ${err instanceof Error ? err.message : String(err)}`,
      });
    }
    if (!resp.ok) {
      let parsed: ApiErrorBody;
      try {
        parsed = (await resp.json()) as ApiErrorBody;
      } catch {
        parsed = { code: "internal", message: `HTTP ${resp.status}` };
      }
      throw new ApiError(resp.status, parsed);
    }
    return resp;
  }

  private async json<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await this.request(method, path, body);
    return (await resp.json()) as T;
  }

  createProject(description: string, frame: FrameSpec): Promise<Project> {
    return this.json("POST", "/projects", { description, frame });
  }

  getProject(projectId: string): Promise<Project> {
    return this.json("GET", `/projects/${projectId}`);
  }

  decompose(projectId: string): Promise<{ features: Feature[] }> {
    return this.json("POST", `/projects/${projectId}/decompose`);
  }

  generate(projectId: string): Promise<Project> {
    return this.json("POST", `/projects/${projectId}/generate`);
  }

  regenerateFeature(projectId: string, featureId: string): Promise<Project> {
    return this.json("POST", `/projects/${projectId}/features/${featureId}/regenerate`);
  }

  addFeature(projectId: string, name: string, description: string): Promise<Project> {
    return this.json("POST", `/projects/${projectId}/features`, { name, description });
  }

  editFeature(
    projectId: string,
    featureId: string,
    patch: { name?: string; description?: string },
  ): Promise<Project> {
    return this.json("PUT", `/projects/${projectId}/features/${featureId}`, patch);
  }

  deleteFeature(projectId: string, featureId: string): Promise<Project> {
    return this.json("DELETE", `/projects/${projectId}/features/${featureId}`);
  }

  async previewSvg(projectId: string): Promise<string> {
    const resp = await this.request("GET", `/projects/${projectId}/preview.svg`);
    return resp.text();
  }

  layoutReport(projectId: string): Promise<LayoutReport> {
    return this.json("GET", `/projects/${projectId}/layout-report`);
  }

  catalogSimplified(): Promise<CatalogView> {
    return this.json("GET", "/catalog/simplified");
  }
}
