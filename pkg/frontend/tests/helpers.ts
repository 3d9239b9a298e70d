/**
 * Test harness: a fetch stub that replays responses recorded from the
 * real API (frontend/tools/capture_fixtures.py writes them), matched by
 * method, path, decoded query, and deep-equal JSON body. Unknown
 * requests throw so a drifting client shows up as a loud failure, not a
 * silently wrong render.
 */

import { readdirSync, readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { Client } from "../src/api.js";
import { Workbench } from "../src/app.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export interface Recorded {
  request: {
    method: string;
    path: string;
    query: Record<string, string> | null;
    body: unknown;
  };
  status: number;
  body_text: string;
}

export interface Inputs {
  rules: string;
  rules_bad: string;
  spec_bmi_v1: string;
  spec_bmi_v2: string;
  spec_bmi_broad: string;
  spec_nothing: string;
  spec_age: string;
  spec_bad: string;
  table_id: string;
  gold_id: string;
}

export function loadInputs(): Inputs {
  return JSON.parse(readFileSync(join(FIXTURES, "inputs.json"), "utf-8")) as Inputs;
}

export function loadRecorded(name: string): Recorded {
  return JSON.parse(
    readFileSync(join(FIXTURES, "responses", `${name}.json`), "utf-8"),
  ) as Recorded;
}

function loadAll(): Recorded[] {
  const dir = join(FIXTURES, "responses");
  return readdirSync(dir)
    .filter((f) => f.endsWith(".json"))
    .map((f) => JSON.parse(readFileSync(join(dir, f), "utf-8")) as Recorded);
}

function deepEqual(a: unknown, b: unknown): boolean {
  if (a === b) return true;
  if (typeof a !== "object" || typeof b !== "object" || a === null || b === null) {
    return false;
  }
  if (Array.isArray(a) !== Array.isArray(b)) return false;
  const keysA = Object.keys(a as object);
  const keysB = Object.keys(b as object);
  if (keysA.length !== keysB.length) return false;
  for (const key of keysA) {
    if (!deepEqual((a as Record<string, unknown>)[key], (b as Record<string, unknown>)[key])) {
      return false;
    }
  }
  return true;
}

export interface FetchCall {
  method: string;
  path: string;
  query: Record<string, string>;
  body: unknown;
}

export interface FixtureFetch {
  fetch: typeof fetch;
  calls: FetchCall[];
  /** Hold responses matching `predicate` until the returned release runs. */
  holdWhile(predicate: (call: FetchCall) => boolean): () => void;
}

export function fixtureFetch(): FixtureFetch {
  const recorded = loadAll();
  const calls: FetchCall[] = [];
  let holds: { predicate: (call: FetchCall) => boolean; waiters: (() => void)[] }[] = [];

  const fetchFn = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = new URL(String(input), "http://workbench.test");
    const query: Record<string, string> = {};
    url.searchParams.forEach((value, key) => {
      query[key] = value;
    });
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    const call: FetchCall = { method, path: url.pathname, query, body };
    calls.push(call);

    const match = recorded.find(
      (r) =>
        r.request.method === method &&
        r.request.path === url.pathname &&
        deepEqual(r.request.query ?? {}, query) &&
        deepEqual(r.request.body ?? null, body),
    );
    if (!match) {
      throw new Error(`no recorded response for ${method} ${url.pathname} ${JSON.stringify(body)}`);
    }
    for (const hold of holds) {
      if (hold.predicate(call)) {
        await new Promise<void>((resolve) => hold.waiters.push(resolve));
      }
    }
    return {
      ok: match.status >= 200 && match.status < 300,
      status: match.status,
      text: async () => match.body_text,
    } as unknown as Response;
  }) as typeof fetch;

  return {
    fetch: fetchFn,
    calls,
    holdWhile(predicate) {
      const hold = { predicate, waiters: [] as (() => void)[] };
      holds.push(hold);
      return () => {
        holds = holds.filter((h) => h !== hold);
        for (const waiter of hold.waiters) waiter();
      };
    },
  };
}

export interface TestApp {
  app: Workbench;
  calls: FetchCall[];
  holdWhile: FixtureFetch["holdWhile"];
  root: HTMLElement;
}

export function makeApp(debounceMs = 0): TestApp {
  document.body.innerHTML = '<div id="app"></div>';
  const root = document.getElementById("app") as HTMLElement;
  const { fetch: fetchFn, calls, holdWhile } = fixtureFetch();
  const app = new Workbench(root, new Client("", fetchFn), debounceMs);
  return { app, calls, holdWhile, root };
}

export function postCalls(calls: FetchCall[], path: string): FetchCall[] {
  return calls.filter((c) => c.method === "POST" && c.path === path);
}
