/** Test plumbing: captured-fixture loading and a scripted fetch stub.
 *
 * Fixtures are genuine service responses recorded by
 * scripts/capture_fixtures.py. A scripted fetch serves them in order and
 * fails fast if the UI issues any request the script does not expect, so
 * these tests double as a check that every displayed number came from the
 * service.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import type { FetchLike } from "../src/api.js";

export interface Fixture {
  method: string;
  path: string;
  status: number;
  body: unknown;
}

export function fixture(name: string): Fixture {
  const path = join(process.cwd(), "tests", "fixtures", `${name}.json`);
  return JSON.parse(readFileSync(path, "utf8")) as Fixture;
}

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export interface ScriptedFetch {
  fetch: FetchLike;
  calls: RecordedCall[];
  /** Steps not yet consumed; assert 0 at the end of a flow. */
  remaining(): number;
}

export const BASE = "http://service.test";

export function scriptedFetch(steps: Fixture[]): ScriptedFetch {
  const queue = [...steps];
  const calls: RecordedCall[] = [];
  const impl: FetchLike = (input, init) => {
    const method = init?.method ?? "GET";
    if (!input.startsWith(BASE)) {
      throw new Error(`request outside the service base URL: ${input}`);
    }
    const path = input.slice(BASE.length);
    const step = queue.shift();
    if (!step) {
      throw new Error(`unexpected request ${method} ${path}: script exhausted`);
    }
    if (step.method !== method || step.path !== path) {
      throw new Error(
        `unexpected request ${method} ${path}; script expects ${step.method} ${step.path}`,
      );
    }
    calls.push({
      method,
      path,
      body: typeof init?.body === "string" ? JSON.parse(init.body) : null,
    });
    const response = new Response(JSON.stringify(step.body), {
      status: step.status,
      headers: { "content-type": "application/json" },
    });
    return Promise.resolve(response);
  };
  return { fetch: impl, calls, remaining: () => queue.length };
}
