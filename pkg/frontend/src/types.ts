/** Payload shapes of the decision-support API (mounted under /api/v1). */

export interface StageResult {
  index: number;
  value: number;
  action: string; // Idle | Share | Ask
}

export interface ScenarioResponse {
  seed: number;
  discount: number;
  states: StageResult[];
}

export interface AllocationRow {
  facility_name: string;
  baseline_beds: number;
  optimized_beds: number;
  ff1: number;
  ff2: number;
  decision_ff1: 0 | 1;
  decision_ff2: 0 | 1;
}

export interface AllocateResponse {
  ff: "ff1" | "ff2";
  constants: { alpha: number; beta: number; gamma: number };
  budget: number;
  seed: number;
  decisions: AllocationRow[];
}

export interface TourSummary {
  ids: string[];
  leg_distances_km: number[];
  total_distance_km: number;
  fitness: number;
  fitness_kind: "ff3" | "ff4";
  normalized: boolean;
  cluster: number | null;
}

export interface ClusterSummary {
  k: number;
  labels: Record<string, number>;
  centroids: [number, number][];
  sse: number;
}

export interface PointProperties {
  id: string;
  cluster: number | null;
  rating: number;
  patients: number;
  fitness: number;
}

export interface LineProperties {
  kind: string;
  fitness: number;
  total_distance_km: number;
  normalized: boolean;
  cluster: number | null;
}

export interface GeoFeature {
  type: "Feature";
  geometry: { type: "LineString" | "Point"; coordinates: number[][] | number[] };
  properties: PointProperties | LineProperties;
}

export interface GeoJson {
  type: "FeatureCollection";
  features: GeoFeature[];
}

export interface RouteResponse {
  seed: number;
  fitness: number;
  mean_fitness: number;
  tours: TourSummary[];
  clusters: ClusterSummary | null;
  geojson: GeoJson;
}

export interface ApiError {
  error: { code: string; message: string };
}

/** GA budget passthrough; the dashboard forwards it untouched. */
export interface GaOverrides {
  population_size?: number;
  max_iterations?: number;
  stall_iterations?: number;
}
