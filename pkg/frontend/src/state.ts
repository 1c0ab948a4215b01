/** View-state types and the pure rules the panels share.
 *
 * The dashboard does no domain math: every displayed number is lifted
 * verbatim from an API response. The helpers here only clamp inputs, pick
 * colors from decision bits, and flag rows where the two decision columns
 * disagree.
 */

import type { AllocationRow, RouteResponse, ScenarioResponse } from "./types.js";

export const BADGES = ["Idle", "Share", "Ask"] as const;
export type Badge = (typeof BADGES)[number];

export const SLIDER_RANGES = {
  ratio: { min: 0.01, max: 1.0, step: 0.01 },
  severity: { min: 1, max: 7, step: 1 },
  transmissibility: { min: 1, max: 5, step: 1 },
} as const;

export interface ScenarioViewState {
  ratio: number;
  severity: number;
  transmissibility: number;
  seed: number;
  last: ScenarioResponse | null;
  stale: boolean;
  error: string | null;
}

export interface AllocationViewState {
  ff: "ff1" | "ff2";
  alpha: number;
  beta: number;
  gamma: number;
  budget: number;
  seed: number;
  last: import("./types.js").AllocateResponse | null;
  error: string | null;
}

export interface RouteViewState {
  ff: "ff3" | "ff4";
  normalized: boolean;
  kmeans: "auto" | number | null;
  seed: number;
  last: RouteResponse | null;
  error: string | null;
}

export function initialScenarioState(seed = 0): ScenarioViewState {
  return { ratio: 0.1, severity: 2, transmissibility: 2, seed, last: null, stale: false, error: null };
}

export function initialAllocationState(seed = 0): AllocationViewState {
  return { ff: "ff1", alpha: 2, beta: 1, gamma: 1, budget: 100, seed, last: null, error: null };
}

export function initialRouteState(seed = 0): RouteViewState {
  return { ff: "ff4", normalized: false, kmeans: null, seed, last: null, error: null };
}

export function clamp(value: number, range: { min: number; max: number; step: number }): number {
  if (Number.isNaN(value)) return range.min;
  const bounded = Math.min(range.max, Math.max(range.min, value));
  const steps = Math.round((bounded - range.min) / range.step);
  const snapped = range.min + steps * range.step;
  return Math.min(range.max, Number(snapped.toFixed(6)));
}

export function asBadge(action: string): Badge {
  if ((BADGES as readonly string[]).includes(action)) return action as Badge;
  throw new Error(`unknown action label from API: ${action}`);
}

/** Green = request more beds, red = stop. Derived solely from the bit. */
export function decisionColor(bit: 0 | 1): "green" | "red" {
  return bit === 1 ? "green" : "red";
}

/** Rows where the rated and unrated scores give opposite suggestions. */
export function disagreementRows(rows: AllocationRow[]): string[] {
  return rows.filter((r) => r.decision_ff1 !== r.decision_ff2).map((r) => r.facility_name);
}

/** Bar width in percent, proportional to fitness within the table. */
export function barPercent(value: number, maxValue: number): number {
  if (maxValue <= 0) return 0;
  return Math.max(0, Math.min(100, (value / maxValue) * 100));
}

export const CLUSTER_COLORS = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
  "#e377c2",
  "#7f7f7f",
  "#bcbd22",
  "#17becf",
];

export function clusterColor(cluster: number | null): string {
  if (cluster === null) return "#444";
  return CLUSTER_COLORS[cluster % CLUSTER_COLORS.length];
}
