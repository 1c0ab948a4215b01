"""Delivery-tour routing over the mainland state centers.

Solves a national closed tour from Pennsylvania with the distance-only
score, then shows the effect of normalization and k-means regioning on the
patient-weighted score, and writes the clustered plan to GeoJSON.
"""

import json
from dataclasses import replace
from importlib import resources

from medalloc import (
    elbow_select_k,
    export_geojson,
    from_state_centers,
    load_state_centers,
    nearest_neighbor_tour,
    route_by_cluster,
    solve_tsp,
)
from medalloc.config import default_routing_ga
from medalloc.routing import DEFAULT_AUTO_K_RANGE, plan_mean_fitness

data = resources.files("medalloc") / "data"

# trimmed GA budget so the demo runs in seconds; drop the overrides for the
# published hyperparameters (population 100, up to 5000 iterations)
ga = replace(default_routing_ga(seed=0), max_iterations=800, stall_iterations=250)

print("National tour, distance-only score, anchored at PA")
print("=" * 60)
points = from_state_centers(load_state_centers(data / "state_centers.csv"))
tour = solve_tsp(points, "ff4", ga, start_id="PA")
nn = nearest_neighbor_tour(points, "ff4", start_id="PA")
print(f"locations: {len(points)} (48 contiguous states + DC)")
print(f"greedy nearest-neighbor tour: {nn.total_distance:9.0f} km")
print(f"optimized tour:               {tour.total_distance:9.0f} km")
print("order:", " -> ".join(p.id for p in tour.points[:12]), "...")

print("\nPatient-weighted score: normalization and regioning")
print("=" * 60)
weighted = from_state_centers(
    load_state_centers(data / "state_centers.csv", data / "covid_patients_by_state.csv")
)
print(f"locations with patient data: {len(weighted)} (MN and WY excluded)")
k = elbow_select_k(weighted, DEFAULT_AUTO_K_RANGE, seed=0)
print(f"elbow-selected number of regions: {k}")

rows = []
for label, normalized, clustered in [
    ("raw", False, False),
    ("raw + k-means", False, True),
    ("normalized", True, False),
    ("normalized + k-means", True, True),
]:
    if clustered:
        plan = route_by_cluster(weighted, "ff3", ga, k=k, seed=0, start_id="PA", normalized=normalized)
        rows.append((label, plan.mean_fitness))
    else:
        solo = solve_tsp(weighted, "ff3", ga, start_id="PA", normalized=normalized)
        rows.append((label, plan_mean_fitness(solo)))
for label, fitness in rows:
    print(f"{label:<22} per-leg fitness {fitness:12.6g}")

plan = route_by_cluster(weighted, "ff3", ga, k=k, seed=0, start_id="PA", normalized=True)
doc = export_geojson(plan.tours, plan.clusters)
out = "state_routes.geojson"
with open(out, "w") as fh:
    json.dump(doc, fh)
sizes = [sum(1 for l in plan.clusters.labels if l == c) for c in range(plan.clusters.k)]
print(f"\nwrote {out}: {len(plan.tours)} regional tours, cluster sizes {sizes}")
print("drop the file onto geojson.io to see the regional routes on a map")
