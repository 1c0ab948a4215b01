"""Closed-tour delivery routing over facilities or state centers.

Tours are solved with the permutation GA, scored either by inverse total
distance (``ff4``) or by a patient-weighted score that prefers cheap, close,
low-rated destinations with many patients (``ff3``). Distances are great
circle in km. Point sets can be clustered with k-means (k picked by the elbow
rule) and routed per cluster, and any result exports to GeoJSON.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

import numpy as np

from . import ga
from .dataset import HospitalRecord, StateCenter, linear_scaling

EARTH_RADIUS_KM = 6371.0088


class RoutingError(ValueError):
    """Raised for degenerate geometry or invalid routing inputs."""


class RouteFitness(str, Enum):
    FF3 = "ff3"  # patients / (cost * distance * rating), summed per delivery leg
    FF4 = "ff4"  # 1 / total tour distance


@dataclass(frozen=True)
class GeoPoint:
    """A routable location with the attributes the patient-weighted score reads."""

    id: str
    latitude: float
    longitude: float
    patients: float = 0.0
    cost: float = 1.0
    rating: float = 1.0

    def __post_init__(self) -> None:
        if not -90.0 <= self.latitude <= 90.0:
            raise RoutingError(f"{self.id}: latitude {self.latitude} outside [-90, 90]")
        if not -180.0 <= self.longitude <= 180.0:
            raise RoutingError(f"{self.id}: longitude {self.longitude} outside [-180, 180]")
        if self.patients < 0:
            raise RoutingError(f"{self.id}: patients must be nonnegative")


@dataclass(frozen=True)
class Tour:
    """A closed route: visiting order, per-leg km including the closing leg."""

    points: tuple[GeoPoint, ...]       # in visiting order, points[0] is the start
    order: tuple[int, ...]             # indices into the solve-time input list
    leg_distances: tuple[float, ...]
    total_distance: float
    fitness: float
    fitness_kind: RouteFitness
    normalized: bool = False
    cluster_id: int | None = None

    @property
    def num_legs(self) -> int:
        return len(self.leg_distances)


@dataclass(frozen=True)
class ClusterAssignment:
    """K-means output: per-point labels, centroids on (lat, lon), and the SSE."""

    k: int
    labels: tuple[int, ...]
    centroids: tuple[tuple[float, float], ...]
    sse: float
    sse_history: tuple[float, ...]


@dataclass(frozen=True)
class RoutePlan:
    """Per-cluster tours plus the clustering itself and the per-leg mean fitness."""

    tours: tuple[Tour, ...]
    clusters: ClusterAssignment
    fitness_kind: RouteFitness
    normalized: bool
    mean_fitness: float


def from_state_centers(centers: Sequence[StateCenter]) -> list[GeoPoint]:
    return [
        GeoPoint(
            id=c.state,
            latitude=c.latitude,
            longitude=c.longitude,
            patients=c.patients,
            cost=c.cost,
            rating=c.rating_sum,
        )
        for c in centers
    ]


def from_hospitals(records: Sequence[HospitalRecord]) -> list[GeoPoint]:
    return [
        GeoPoint(
            id=r.facility_name,
            latitude=r.latitude,
            longitude=r.longitude,
            patients=r.patients,
            cost=r.cost,
            rating=float(r.rating),
        )
        for r in records
    ]


def haversine(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in km between two points."""
    return float(
        _haversine_km(
            np.array(a.latitude), np.array(a.longitude), np.array(b.latitude), np.array(b.longitude)
        )
    )


def _haversine_km(lat1, lon1, lat2, lon2):
    lat1, lon1, lat2, lon2 = map(np.radians, (lat1, lon1, lat2, lon2))
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = np.sin(dlat / 2.0) ** 2 + np.cos(lat1) * np.cos(lat2) * np.sin(dlon / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_KM * np.arcsin(np.sqrt(np.clip(h, 0.0, 1.0)))


def distance_matrix(points: Sequence[GeoPoint]) -> np.ndarray:
    lats = np.array([p.latitude for p in points])
    lons = np.array([p.longitude for p in points])
    return _haversine_km(lats[:, None], lons[:, None], lats[None, :], lons[None, :])


def cost_of_care(avg_recovery_days: float, cost_per_day: float) -> float:
    """Per-patient cost of one stay: recovery duration times daily cost."""
    if avg_recovery_days <= 0 or cost_per_day <= 0:
        raise RoutingError(
            f"recovery days ({avg_recovery_days}) and cost per day ({cost_per_day}) must be positive"
        )
    return avg_recovery_days * cost_per_day


def tour_fitness_ff4(total_distance: float) -> float:
    """Inverse total distance; undefined for zero-length tours."""
    if total_distance <= 0:
        raise RoutingError("tour has zero total distance (duplicate points?)")
    return 1.0 / total_distance


def tour_fitness_ff3(
    order: Sequence[int], points: Sequence[GeoPoint], distances: np.ndarray | None = None
) -> float:
    """Patient-weighted score summed over delivery legs.

    Each leg contributes patients / (cost * distance * rating) of its
    destination, closing leg included.
    """
    if distances is None:
        distances = distance_matrix(points)
    total = 0.0
    n = len(order)
    for k in range(n):
        src = order[k]
        dst = order[(k + 1) % n]
        d = float(distances[src, dst])
        dest = points[dst]
        if d <= 0:
            raise RoutingError(f"zero-distance leg into {dest.id}")
        if dest.cost <= 0 or dest.rating <= 0:
            raise RoutingError(f"{dest.id}: cost and rating must be positive for patient-weighted scoring")
        total += dest.patients / (dest.cost * d * dest.rating)
    return total


def normalize_route_inputs(points: Sequence[GeoPoint]) -> tuple[list[GeoPoint], float]:
    """Rescale attributes and the distance unit onto comparable unit ranges.

    Patients are min-max scaled to [0, 1]. Cost and rating sit in
    denominators, so they are scaled by their maxima into (0, 1] -- an exact
    min-max would send the smallest value to zero and blow up the score.
    Distances get divided by the largest pairwise distance of the set, which
    the caller applies via the returned scale factor. Coordinates are left
    untouched.
    """
    if len(points) < 2:
        raise RoutingError("normalization needs at least 2 points")
    patients = np.array([p.patients for p in points])
    costs = np.array([p.cost for p in points])
    ratings = np.array([p.rating for p in points])
    if np.any(costs <= 0) or np.any(ratings <= 0):
        raise RoutingError("cost and rating must be positive to normalize")
    patients_n = (
        linear_scaling(patients) if patients.max() > patients.min() else np.zeros_like(patients)
    )
    costs_n = costs / costs.max()
    ratings_n = ratings / ratings.max()
    scale = float(distance_matrix(points).max())
    if scale <= 0:
        raise RoutingError("all points coincide; distances cannot be normalized")
    scaled = [
        replace(p, patients=float(patients_n[i]), cost=float(costs_n[i]), rating=float(ratings_n[i]))
        for i, p in enumerate(points)
    ]
    return scaled, scale


DEFAULT_START_ID = "PA"

# Auto-k candidates for regional planning. Fewer than 3 regions is not a
# regioning (k=1 is the national tour, k=2 a coast split that dominates any
# raw SSE curve), so the planner's elbow search starts at 3.
DEFAULT_AUTO_K_RANGE = tuple(range(3, 11))


def default_routing_config(seed: int = 0) -> ga.GaConfig:
    return ga.GaConfig(
        encoding=ga.Encoding.PERMUTATION,
        population_size=100,
        mutation_prob=0.2,
        max_iterations=5000,
        stall_iterations=1000,
        seed=seed,
    )


def _start_index(points: Sequence[GeoPoint], start_id: str | None) -> int:
    ids = [p.id for p in points]
    if start_id is not None:
        if start_id not in ids:
            raise RoutingError(f"start point {start_id!r} not in the point set")
        return ids.index(start_id)
    if DEFAULT_START_ID in ids:
        return ids.index(DEFAULT_START_ID)
    return min(range(len(ids)), key=lambda i: ids[i])


def _evaluate_order(
    order: Sequence[int],
    points: Sequence[GeoPoint],
    distances: np.ndarray,
    kind: RouteFitness,
    distance_scale: float,
) -> float:
    n = len(order)
    legs = distances[list(order), [order[(k + 1) % n] for k in range(n)]]
    if kind is RouteFitness.FF4:
        return tour_fitness_ff4(float(legs.sum()) / distance_scale)
    total = 0.0
    for k in range(n):
        dst = order[(k + 1) % n]
        dest = points[dst]
        total += dest.patients / (dest.cost * (float(distances[order[k], dst]) / distance_scale) * dest.rating)
    return total


def _build_tour(
    order: list[int],
    points: Sequence[GeoPoint],
    distances: np.ndarray,
    kind: RouteFitness,
    distance_scale: float,
    normalized: bool,
    cluster_id: int | None = None,
) -> Tour:
    n = len(order)
    legs = tuple(float(distances[order[k], order[(k + 1) % n]]) for k in range(n))
    return Tour(
        points=tuple(points[i] for i in order),
        order=tuple(order),
        leg_distances=legs,
        total_distance=float(sum(legs)),
        fitness=_evaluate_order(order, points, distances, kind, distance_scale),
        fitness_kind=kind,
        normalized=normalized,
        cluster_id=cluster_id,
    )


def solve_tsp(
    points: Sequence[GeoPoint],
    fitness_kind: RouteFitness | str = RouteFitness.FF4,
    config: ga.GaConfig | None = None,
    start_id: str | None = None,
    normalized: bool = False,
) -> Tour:
    """Find a high-fitness closed tour over the points with the start fixed.

    The permutation GA searches orderings of the non-start points. Results
    are deterministic for a given config seed.
    """
    kind = RouteFitness(fitness_kind)
    if len(points) < 3:
        raise RoutingError(f"fewer than 3 points ({len(points)}); a closed tour needs at least 3")
    distance_scale = 1.0
    solve_points = list(points)
    if normalized:
        solve_points, distance_scale = normalize_route_inputs(solve_points)
    return _solve_prepared(solve_points, kind, config, start_id, distance_scale, normalized)


def _solve_prepared(
    points: list[GeoPoint],
    kind: RouteFitness,
    config: ga.GaConfig | None,
    start_id: str | None,
    distance_scale: float,
    normalized: bool,
    cluster_id: int | None = None,
) -> Tour:
    distances = distance_matrix(points)
    masked = distances.copy()
    np.fill_diagonal(masked, np.inf)
    if float(masked.min()) <= 0:
        raise RoutingError("duplicate coordinates produce zero-distance legs")
    start = _start_index(points, start_id)
    rest = [i for i in range(len(points)) if i != start]
    if config is None:
        config = default_routing_config()
    config = replace(config, encoding=ga.Encoding.PERMUTATION, bounds=None)

    if kind is RouteFitness.FF3:
        dest = np.array([p.patients / (p.cost * p.rating) for p in points])
        scaled = distances / distance_scale
        np.fill_diagonal(scaled, np.inf)  # self-legs never occur
        weights = dest[None, :] / scaled
    else:
        weights = None

    def fitness(chromosome: ga.Chromosome) -> float:
        order = [start] + [rest[g] for g in chromosome.genes]
        nxt = order[1:] + order[:1]
        if weights is not None:
            return float(weights[order, nxt].sum())
        return distance_scale / float(distances[order, nxt].sum())

    result = ga.run(config, fitness, genome_len=len(rest))
    best_order = [start] + [rest[g] for g in result.best.genes]
    return _build_tour(best_order, points, distances, kind, distance_scale, normalized, cluster_id)


def nearest_neighbor_tour(
    points: Sequence[GeoPoint],
    fitness_kind: RouteFitness | str = RouteFitness.FF4,
    start_id: str | None = None,
    normalized: bool = False,
) -> Tour:
    """Greedy closed tour: always hop to the nearest unvisited point."""
    kind = RouteFitness(fitness_kind)
    if len(points) < 3:
        raise RoutingError(f"fewer than 3 points ({len(points)}); a closed tour needs at least 3")
    solve_points = list(points)
    distance_scale = 1.0
    if normalized:
        solve_points, distance_scale = normalize_route_inputs(solve_points)
    distances = distance_matrix(solve_points)
    start = _start_index(solve_points, start_id)
    order = [start]
    remaining = set(range(len(solve_points))) - {start}
    while remaining:
        here = order[-1]
        order.append(min(remaining, key=lambda j: (distances[here, j], j)))
        remaining.discard(order[-1])
    return _build_tour(order, solve_points, distances, kind, distance_scale, normalized)


def _trivial_tour(
    indices: list[int],
    points: list[GeoPoint],
    distances: np.ndarray,
    kind: RouteFitness,
    distance_scale: float,
    normalized: bool,
    cluster_id: int,
    start_id: str | None,
) -> Tour:
    cluster_points = [points[i] for i in indices]
    local_start = _start_index(cluster_points, start_id if start_id in {p.id for p in cluster_points} else None)
    ordered = [indices[local_start]] + [i for k, i in enumerate(indices) if k != local_start]
    if len(ordered) == 1:
        # a lone point has no delivery legs; score it zero
        return Tour(
            points=(points[ordered[0]],),
            order=(ordered[0],),
            leg_distances=(),
            total_distance=0.0,
            fitness=0.0,
            fitness_kind=kind,
            normalized=normalized,
            cluster_id=cluster_id,
        )
    return _build_tour(ordered, points, distances, kind, distance_scale, normalized, cluster_id)


def kmeans(
    points: Sequence[GeoPoint],
    k: int,
    seed: int = 0,
    n_init: int = 1,
) -> ClusterAssignment:
    """Lloyd's algorithm with k-means++ seeding on raw (lat, lon) coordinates.

    Runs until the labels stop changing or 300 iterations. With ``n_init`` > 1
    the best of several seeded restarts (lowest SSE) is returned.
    """
    n = len(points)
    if not 1 <= k <= n:
        raise RoutingError(f"k must be in [1, {n}], got {k}")
    coords = np.array([(p.latitude, p.longitude) for p in points])
    rng = np.random.default_rng(seed)
    best: tuple[float, np.ndarray, np.ndarray, list[float]] | None = None
    for _ in range(max(1, n_init)):
        sse, labels, centroids, history = _lloyd(coords, k, rng)
        if best is None or sse < best[0]:
            best = (sse, labels, centroids, history)
    sse, labels, centroids, history = best
    return ClusterAssignment(
        k=k,
        labels=tuple(int(l) for l in labels),
        centroids=tuple((float(c[0]), float(c[1])) for c in centroids),
        sse=float(sse),
        sse_history=tuple(history),
    )


def _kmeanspp_seeds(coords: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(coords)
    chosen = [int(rng.integers(n))]
    while len(chosen) < k:
        d2 = np.min(
            ((coords[:, None, :] - coords[chosen][None, :, :]) ** 2).sum(axis=2), axis=1
        )
        total = d2.sum()
        if total <= 0:
            probs = np.full(n, 1.0 / n)
        else:
            probs = d2 / total
        chosen.append(int(rng.choice(n, p=probs)))
    return coords[chosen].copy()


def _lloyd(coords: np.ndarray, k: int, rng: np.random.Generator):
    centroids = _kmeanspp_seeds(coords, k, rng)
    labels = np.full(len(coords), -1)
    history: list[float] = []
    for _ in range(300):
        d2 = ((coords[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        new_labels = d2.argmin(axis=1)
        sse = float(d2[np.arange(len(coords)), new_labels].sum())
        history.append(sse)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            members = coords[labels == c]
            if len(members):
                centroids[c] = members.mean(axis=0)
            else:
                # classic fix: hand an empty cluster the point farthest from its centroid
                far = int(d2[np.arange(len(coords)), labels].argmax())
                centroids[c] = coords[far]
    d2 = ((coords[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    sse = float(d2[np.arange(len(coords)), labels].sum())
    return sse, labels, centroids, history


def elbow_select_k(
    points: Sequence[GeoPoint],
    k_range: Sequence[int] = tuple(range(1, 11)),
    seed: int = 0,
    n_init: int = 10,
) -> int:
    """Pick the cluster count at the sharpest bend of the SSE curve.

    Returns the interior k maximizing SSE(k-1) - 2*SSE(k) + SSE(k+1); ties go
    to the smallest k.
    """
    ks = sorted(set(int(k) for k in k_range))
    if len(ks) < 3:
        raise RoutingError("elbow selection needs at least 3 candidate values of k")
    n = len(points)
    if ks[0] < 1 or ks[-1] > n:
        raise RoutingError(f"k_range must stay within [1, {n}]")
    sse = {k: kmeans(points, k, seed=seed, n_init=n_init).sse for k in ks}
    best_k, best_curvature = None, -math.inf
    for prev_k, k, next_k in zip(ks, ks[1:], ks[2:]):
        curvature = sse[prev_k] - 2.0 * sse[k] + sse[next_k]
        if curvature > best_curvature:
            best_k, best_curvature = k, curvature
    return int(best_k)


def route_by_cluster(
    points: Sequence[GeoPoint],
    fitness_kind: RouteFitness | str = RouteFitness.FF4,
    config: ga.GaConfig | None = None,
    k: int | None = None,
    seed: int = 0,
    start_id: str | None = None,
    normalized: bool = False,
) -> RoutePlan:
    """Cluster the points, solve an independent closed tour per cluster.

    With ``k=None`` the elbow rule picks the cluster count. Attribute and
    distance normalization, when requested, happens once over the full point
    set so every cluster is scored on the same scale. The plan's
    ``mean_fitness`` is the per-leg mean across all tours, a size-independent
    figure comparable between clustered and unclustered runs.
    """
    kind = RouteFitness(fitness_kind)
    solve_points = list(points)
    distance_scale = 1.0
    if normalized:
        solve_points, distance_scale = normalize_route_inputs(solve_points)
    if k is None:
        n = len(solve_points)
        k_range = DEFAULT_AUTO_K_RANGE if n >= 10 else tuple(range(1, n + 1))
        k = elbow_select_k(solve_points, k_range, seed=seed)
    clusters = kmeans(solve_points, k, seed=seed, n_init=10)
    distances = distance_matrix(solve_points)

    tours: list[Tour] = []
    for cluster_id in range(k):
        indices = [i for i, label in enumerate(clusters.labels) if label == cluster_id]
        if not indices:
            continue
        members = [solve_points[i] for i in indices]
        if len(indices) < 3:
            tours.append(
                _trivial_tour(indices, solve_points, distances, kind, distance_scale, normalized, cluster_id, start_id)
            )
            continue
        member_start = start_id if start_id in {p.id for p in members} else None
        sub_config = config if config is not None else default_routing_config(seed)
        sub_config = replace(sub_config, seed=sub_config.seed + cluster_id)
        tour = _solve_prepared(
            members, kind, sub_config, member_start, distance_scale, normalized, cluster_id
        )
        # remap solve-local indices onto the full point list
        tours.append(replace(tour, order=tuple(indices[i] for i in tour.order)))

    total_fitness = sum(t.fitness for t in tours)
    total_legs = sum(t.num_legs for t in tours)
    mean_fitness = total_fitness / total_legs if total_legs else 0.0
    return RoutePlan(
        tours=tuple(tours),
        clusters=clusters,
        fitness_kind=kind,
        normalized=normalized,
        mean_fitness=mean_fitness,
    )


def plan_mean_fitness(tour: Tour) -> float:
    """Per-leg mean fitness of a single tour, comparable to RoutePlan.mean_fitness."""
    return tour.fitness / tour.num_legs if tour.num_legs else 0.0


def export_geojson(
    tours: Sequence[Tour],
    clusters: ClusterAssignment | None = None,
) -> dict:
    """Render tours (and optionally their clustering) as a GeoJSON FeatureCollection.

    Each tour becomes a closed LineString (first coordinate repeated at the
    end); each visited location becomes a Point carrying its cluster id,
    rating, and the fitness of its tour.
    """
    features: list[dict] = []
    for tour in tours:
        if len(tour.points) < 2:
            continue  # a lone point cannot form a LineString; its Point feature still renders
        coords = [[p.longitude, p.latitude] for p in tour.points]
        coords.append(coords[0])
        features.append(
            {
                "type": "Feature",
                "geometry": {"type": "LineString", "coordinates": coords},
                "properties": {
                    "kind": tour.fitness_kind.value,
                    "fitness": tour.fitness,
                    "total_distance_km": tour.total_distance,
                    "normalized": tour.normalized,
                    "cluster": tour.cluster_id,
                },
            }
        )
    for tour in tours:
        for point in tour.points:
            features.append(
                {
                    "type": "Feature",
                    "geometry": {"type": "Point", "coordinates": [point.longitude, point.latitude]},
                    "properties": {
                        "id": point.id,
                        "cluster": tour.cluster_id,
                        "rating": point.rating,
                        "patients": point.patients,
                        "fitness": tour.fitness,
                    },
                }
            )
    return {"type": "FeatureCollection", "features": features}
