/** Typed client for the decision-support API with latest-wins cancellation.
 *
 * Each panel keys its requests; firing a new request aborts the panel's
 * in-flight one so a slow older response can never overwrite a newer view.
 */

import type {
  AllocateResponse,
  ApiError,
  GaOverrides,
  RouteResponse,
  ScenarioResponse,
} from "./types.js";

export class DomainError extends Error {
  constructor(public code: string, message: string) {
    super(message);
  }
}

export class ApiClient {
  private inflight = new Map<string, AbortController>();

  constructor(private base: string = "/api/v1") {}

  private async post<T>(panel: string, path: string, body: unknown): Promise<T> {
    this.inflight.get(panel)?.abort();
    const controller = new AbortController();
    this.inflight.set(panel, controller);
    const response = await fetch(`${this.base}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal: controller.signal,
    });
    if (this.inflight.get(panel) === controller) this.inflight.delete(panel);
    if (!response.ok) {
      const payload = (await response.json().catch(() => null)) as ApiError | null;
      if (payload?.error) throw new DomainError(payload.error.code, payload.error.message);
      throw new Error(`API error ${response.status}`);
    }
    return (await response.json()) as T;
  }

  async health(): Promise<boolean> {
    try {
      const response = await fetch(`${this.base}/health`);
      return response.ok;
    } catch {
      return false;
    }
  }

  solveScenario(
    inputs: { ratio: number; severity: number; transmissibility: number; seed?: number },
  ): Promise<ScenarioResponse> {
    return this.post("scenario", "/mdp/solve", inputs);
  }

  allocate(
    inputs: {
      ff: "ff1" | "ff2";
      alpha: number;
      beta: number;
      gamma: number;
      budget: number;
      seed?: number;
      ga?: GaOverrides;
    },
  ): Promise<AllocateResponse> {
    return this.post("allocate", "/allocate", inputs);
  }

  route(
    inputs: {
      ff: "ff3" | "ff4";
      normalized?: boolean;
      kmeans?: "auto" | number | null;
      start?: string;
      states?: string[];
      seed?: number;
      ga?: GaOverrides;
    },
  ): Promise<RouteResponse> {
    return this.post("route", "/route", inputs);
  }
}

/** Trailing-edge debounce; the dashboard uses 250 ms for slider-driven solves. */
export function debounce<A extends unknown[]>(fn: (...args: A) => void, waitMs = 250) {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    clearTimeout(timer);
    timer = setTimeout(() => fn(...args), waitMs);
  };
}
