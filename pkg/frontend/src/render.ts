/** Pure renderers: API payloads in, HTML/SVG strings out.
 *
 * Numbers are interpolated with String(...) straight off the payload so the
 * view can be snapshot-checked against recorded responses; nothing is
 * recomputed client-side. Only layout geometry (bar widths, map projection,
 * point radii) is derived, never a displayed figure.
 */

import {
  asBadge,
  barPercent,
  clusterColor,
  decisionColor,
  disagreementRows,
} from "./state.js";
import type {
  AllocateResponse,
  GeoJson,
  LineProperties,
  PointProperties,
  RouteResponse,
  ScenarioResponse,
} from "./types.js";

function escapeHtml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderErrorBanner(message: string | null): string {
  if (!message) return "";
  return `<div class="banner error" role="alert">${escapeHtml(message)}</div>`;
}

export function renderSeedBadge(seed: number): string {
  return `<span class="seed" title="re-run with this seed to reproduce">seed ${String(seed)}</span>`;
}

export function renderScenarioCards(response: ScenarioResponse | null, stale: boolean): string {
  if (!response) return `<p class="placeholder">move a slider to solve a scenario</p>`;
  const cards = response.states
    .map((state) => {
      const badge = asBadge(state.action);
      return (
        `<div class="card${stale ? " stale" : ""}" data-stage="${String(state.index)}">` +
        `<div class="stage">stage ${String(state.index)}</div>` +
        `<div class="value">${String(state.value)}</div>` +
        `<span class="badge badge-${badge.toLowerCase()}">${badge}</span>` +
        `</div>`
      );
    })
    .join("");
  const staleNote = stale ? `<p class="stale-note">showing stale results while the service is unreachable</p>` : "";
  return `<div class="cards">${cards}</div>${staleNote}${renderSeedBadge(response.seed)}`;
}

export function renderAllocationTable(response: AllocateResponse | null): string {
  if (!response) return `<p class="placeholder">press run to optimize the bed budget</p>`;
  const chosen = response.ff;
  const maxFitness = Math.max(...response.decisions.map((d) => (chosen === "ff1" ? d.ff1 : d.ff2)));
  const flagged = new Set(disagreementRows(response.decisions));
  const rows = response.decisions
    .map((d) => {
      const fitness = chosen === "ff1" ? d.ff1 : d.ff2;
      const disagree = flagged.has(d.facility_name);
      return (
        `<tr class="${disagree ? "disagree" : ""}" data-facility="${escapeHtml(d.facility_name)}">` +
        `<td class="name">${escapeHtml(d.facility_name)}${disagree ? ` <span class="flag" title="the two scores disagree">&#9888;</span>` : ""}</td>` +
        `<td class="num">${String(d.baseline_beds)}</td>` +
        `<td class="num">${String(d.optimized_beds)}</td>` +
        `<td class="decision ${decisionColor(d.decision_ff1)}">${String(d.ff1)}</td>` +
        `<td class="decision ${decisionColor(d.decision_ff2)}">${String(d.ff2)}</td>` +
        `<td class="bar-cell"><div class="bar ${decisionColor(chosen === "ff1" ? d.decision_ff1 : d.decision_ff2)}" style="width:${barPercent(fitness, maxFitness).toFixed(1)}%"></div></td>` +
        `</tr>`
      );
    })
    .join("");
  return (
    `<table class="allocation"><thead><tr>` +
    `<th>facility</th><th>beds</th><th>optimized</th><th>ff1</th><th>ff2</th><th>fitness</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>` +
    `<p class="disagree-note">${String(flagged.size)} row(s) where the scores disagree</p>` +
    renderSeedBadge(response.seed)
  );
}

interface Projector {
  x(lon: number): number;
  y(lat: number): number;
}

function projector(geojson: GeoJson, width: number, height: number): Projector {
  const lons: number[] = [];
  const lats: number[] = [];
  for (const feature of geojson.features) {
    const coords =
      feature.geometry.type === "Point"
        ? [feature.geometry.coordinates as number[]]
        : (feature.geometry.coordinates as number[][]);
    for (const [lon, lat] of coords) {
      lons.push(lon);
      lats.push(lat);
    }
  }
  const pad = 0.05;
  const minLon = Math.min(...lons);
  const maxLon = Math.max(...lons);
  const minLat = Math.min(...lats);
  const maxLat = Math.max(...lats);
  const spanLon = Math.max(maxLon - minLon, 1e-9);
  const spanLat = Math.max(maxLat - minLat, 1e-9);
  return {
    x: (lon) => ((lon - minLon) / spanLon) * width * (1 - 2 * pad) + width * pad,
    y: (lat) => ((maxLat - lat) / spanLat) * height * (1 - 2 * pad) + height * pad,
  };
}

/** SVG map mirroring the GeoJSON payload exactly: one polyline per
 * LineString, one circle per Point (sized by rating, colored by cluster). */
export function renderRouteMap(geojson: GeoJson, width = 720, height = 420): string {
  const lines = geojson.features.filter((f) => f.geometry.type === "LineString");
  const points = geojson.features.filter((f) => f.geometry.type === "Point");
  if (lines.length === 0 && points.length === 0) {
    return `<svg class="route-map" viewBox="0 0 ${width} ${height}"></svg>`;
  }
  const project = projector(geojson, width, height);
  const maxRating = Math.max(1e-9, ...points.map((p) => (p.properties as PointProperties).rating));
  const polylines = lines
    .map((feature) => {
      const props = feature.properties as LineProperties;
      const path = (feature.geometry.coordinates as number[][])
        .map(([lon, lat]) => `${project.x(lon).toFixed(1)},${project.y(lat).toFixed(1)}`)
        .join(" ");
      return `<polyline class="tour" data-cluster="${String(props.cluster)}" points="${path}" fill="none" stroke="${clusterColor(props.cluster)}" stroke-width="1.5"/>`;
    })
    .join("");
  const circles = points
    .map((feature) => {
      const props = feature.properties as PointProperties;
      const [lon, lat] = feature.geometry.coordinates as number[];
      const radius = 2 + 6 * Math.sqrt(props.rating / maxRating);
      return (
        `<circle class="location" data-id="${escapeHtml(props.id)}" data-cluster="${String(props.cluster)}" ` +
        `cx="${project.x(lon).toFixed(1)}" cy="${project.y(lat).toFixed(1)}" r="${radius.toFixed(1)}" ` +
        `fill="${clusterColor(props.cluster)}" fill-opacity="0.8"><title>${escapeHtml(props.id)}</title></circle>`
      );
    })
    .join("");
  return `<svg class="route-map" viewBox="0 0 ${width} ${height}">${polylines}${circles}</svg>`;
}

export function renderClusterLegend(response: RouteResponse): string {
  if (!response.clusters) return "";
  const items = Array.from({ length: response.clusters.k }, (_, c) => {
    return `<li><span class="swatch" style="background:${clusterColor(c)}"></span>region ${String(c + 1)}</li>`;
  }).join("");
  return `<ul class="legend">${items}</ul>`;
}

export function renderRoutePanel(response: RouteResponse | null): string {
  if (!response) return `<p class="placeholder">choose a score and press route</p>`;
  const readout =
    `<p class="readout">fitness <strong>${String(response.fitness)}</strong>` +
    ` &middot; per-leg mean <strong>${String(response.mean_fitness)}</strong>` +
    ` &middot; ${String(response.tours.length)} tour(s)</p>`;
  return (
    renderRouteMap(response.geojson) +
    renderClusterLegend(response) +
    readout +
    renderSeedBadge(response.seed)
  );
}
