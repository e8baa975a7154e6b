// Shared test plumbing: the recorded backend session, a fetch stub that
// replays it, and a small validator for the OpenAPI schema subset the
// service publishes (pydantic-generated: object/array/anyOf/$ref/enum).

import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

export interface RecordedExchange {
  request: { method: string; path: string; body: unknown | null };
  response: { status: number; contentType: string; text: string };
}

export interface RecordedSession {
  exchanges: RecordedExchange[];
}

export function loadSession(): RecordedSession {
  const path = fileURLToPath(new URL("./fixtures/session.json", import.meta.url));
  return JSON.parse(readFileSync(path, "utf-8")) as RecordedSession;
}

export function loadOpenApi(): any {
  const path = fileURLToPath(new URL("../../docs/openapi.json", import.meta.url));
  return JSON.parse(readFileSync(path, "utf-8"));
}

/** Fetch stub that serves recorded responses, consuming one per request. */
export function sessionFetch(session: RecordedSession): typeof fetch {
  const queue = [...session.exchanges];
  return async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    const path = typeof input === "string" ? input : input.toString();
    const index = queue.findIndex(
      (e) => e.request.method === method && e.request.path === path,
    );
    if (index < 0) {
      throw new Error(`no recorded response for ${method} ${path}`);
    }
    const [entry] = queue.splice(index, 1);
    return new Response(entry!.response.text, {
      status: entry!.response.status,
      headers: { "Content-Type": entry!.response.contentType },
    });
  };
}

export function pathMatchesTemplate(template: string, path: string): boolean {
  const t = template.split("/");
  const p = path.split("?")[0]!.split("/");
  if (t.length !== p.length) {
    return false;
  }
  return t.every((seg, i) => (seg.startsWith("{") && seg.endsWith("}")) || seg === p[i]);
}

function resolveRef(schema: any, root: any): any {
  if (schema && typeof schema.$ref === "string") {
    const parts = schema.$ref.replace(/^#\//, "").split("/");
    let node = root;
    for (const part of parts) {
      node = node?.[part];
    }
    return node ?? {};
  }
  return schema;
}

/** Validate `value` against an OpenAPI schema; returns human-readable errors. */
export function schemaErrors(value: unknown, schema: any, root: any, at = "$"): string[] {
  schema = resolveRef(schema, root);
  if (!schema || Object.keys(schema).length === 0) {
    return [];
  }
  if (Array.isArray(schema.anyOf)) {
    const attempts = schema.anyOf.map((branch: any) => schemaErrors(value, branch, root, at));
    return attempts.some((errs: string[]) => errs.length === 0)
      ? []
      : [`${at}: matches no anyOf branch`];
  }
  if (schema.const !== undefined && value !== schema.const) {
    return [`${at}: expected const ${JSON.stringify(schema.const)}`];
  }
  if (Array.isArray(schema.enum) && !schema.enum.includes(value)) {
    return [`${at}: not in enum`];
  }
  const errors: string[] = [];
  switch (schema.type) {
    case "object": {
      if (typeof value !== "object" || value === null || Array.isArray(value)) {
        return [`${at}: expected object`];
      }
      const obj = value as Record<string, unknown>;
      for (const key of schema.required ?? []) {
        if (!(key in obj)) {
          errors.push(`${at}.${key}: required property missing`);
        }
      }
      const props = schema.properties ?? {};
      for (const [key, sub] of Object.entries(obj)) {
        if (key in props) {
          errors.push(...schemaErrors(sub, props[key], root, `${at}.${key}`));
        } else if (schema.additionalProperties === false) {
          errors.push(`${at}.${key}: unexpected property`);
        }
      }
      return errors;
    }
    case "array": {
      if (!Array.isArray(value)) {
        return [`${at}: expected array`];
      }
      value.forEach((item, i) => {
        errors.push(...schemaErrors(item, schema.items ?? {}, root, `${at}[${i}]`));
      });
      return errors;
    }
    case "string":
      if (typeof value !== "string") {
        return [`${at}: expected string`];
      }
      if (schema.minLength !== undefined && value.length < schema.minLength) {
        return [`${at}: shorter than minLength`];
      }
      return [];
    case "integer":
      return typeof value === "number" && Number.isInteger(value)
        ? []
        : [`${at}: expected integer`];
    case "number":
      return typeof value === "number" ? [] : [`${at}: expected number`];
    case "boolean":
      return typeof value === "boolean" ? [] : [`${at}: expected boolean`];
    case "null":
      return value === null ? [] : [`${at}: expected null`];
    default:
      return [];
  }
}

export const TODO_DESCRIPTION =
  "A todo app where I can see my tasks, add new ones, search and filter them.";
export const EDITED_SEARCH_DESCRIPTION =
  "Search field with a keyword filter and a clear button.";
