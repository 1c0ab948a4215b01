import csv
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from medalloc import ga, routing
from medalloc.routing import (
    EARTH_RADIUS_KM,
    DEFAULT_AUTO_K_RANGE,
    GeoPoint,
    RouteFitness,
    RoutingError,
    cost_of_care,
    distance_matrix,
    elbow_select_k,
    export_geojson,
    haversine,
    kmeans,
    nearest_neighbor_tour,
    normalize_route_inputs,
    route_by_cluster,
    solve_tsp,
    tour_fitness_ff3,
    tour_fitness_ff4,
)


def P(pid, lat, lon, patients=1.0, cost=1.0, rating=1.0) -> GeoPoint:
    return GeoPoint(id=pid, latitude=lat, longitude=lon, patients=patients, cost=cost, rating=rating)


def law_of_cosines_km(a: GeoPoint, b: GeoPoint) -> float:
    """Independent great-circle oracle via the spherical law of cosines."""
    la1, lo1, la2, lo2 = map(math.radians, (a.latitude, a.longitude, b.latitude, b.longitude))
    central = math.acos(
        min(1.0, max(-1.0, math.sin(la1) * math.sin(la2) + math.cos(la1) * math.cos(la2) * math.cos(lo2 - lo1)))
    )
    return EARTH_RADIUS_KM * central


def quick_cfg(seed=0, **overrides) -> ga.GaConfig:
    base = dict(
        encoding=ga.Encoding.PERMUTATION, population_size=60, mutation_prob=0.2,
        max_iterations=300, stall_iterations=120, seed=seed,
    )
    base.update(overrides)
    return ga.GaConfig(**base)


coord = st.tuples(st.floats(-80, 80), st.floats(-179, 179))


class TestHaversine:
    def test_identity(self):
        a = P("A", 38.9072, -77.0369)
        assert haversine(a, a) == 0.0

    def test_antipodal_half_circumference(self):
        a = P("A", 10.0, 20.0)
        b = P("B", -10.0, -160.0)
        # arcsin loses a little precision right at the antipode; 1 m slack
        assert haversine(a, b) == pytest.approx(math.pi * EARTH_RADIUS_KM, abs=1e-3)

    def test_against_law_of_cosines_oracle(self):
        dc = P("DC", 38.9072, -77.0369)
        richmond = P("RVA", 37.5407, -77.4360)
        assert haversine(dc, richmond) == pytest.approx(law_of_cosines_km(dc, richmond), abs=0.1)

    @given(coord, coord)
    def test_symmetry(self, c1, c2):
        a, b = P("A", *c1), P("B", *c2)
        assert haversine(a, b) == haversine(b, a)

    @given(coord, coord, coord)
    @settings(max_examples=50)
    def test_triangle_inequality(self, c1, c2, c3):
        a, b, c = P("A", *c1), P("B", *c2), P("C", *c3)
        assert haversine(a, c) <= haversine(a, b) + haversine(b, c) + 1e-6

    def test_metric_on_fixture(self, state_centers_all):
        points = routing.from_state_centers(state_centers_all)
        d = distance_matrix(points)
        assert np.array_equal(d, d.T)
        sample = points[:12]
        ds = distance_matrix(sample)
        n = len(sample)
        for i, j, k in itertools.permutations(range(n), 3):
            assert ds[i, k] <= ds[i, j] + ds[j, k] + 1e-6


class TestCostOfCare:
    def test_product(self):
        assert cost_of_care(10.0, 2000.0) == 20000.0

    def test_identity(self):
        assert cost_of_care(1.0, 123.45) == 123.45

    def test_nonpositive_rejected(self):
        with pytest.raises(RoutingError):
            cost_of_care(0.0, 100.0)
        with pytest.raises(RoutingError):
            cost_of_care(5.0, -1.0)

    def test_fixture_cost_column_recomputes(self, data_dir):
        # the stored cost column must equal recovery_days * cost_per_day
        with (data_dir / "state_centers.csv").open() as fh:
            for row in csv.DictReader(fh):
                expected = cost_of_care(float(row["recovery_days"]), float(row["cost_per_day"]))
                assert float(row["cost"]) == pytest.approx(expected, rel=1e-12)


class TestTourFitness:
    def test_ff4_unit_square(self):
        # 4 points on a square of side s km -> total 4s, fitness 1/(4s)
        s = 7.5
        assert tour_fitness_ff4(4 * s) == pytest.approx(1.0 / 30.0)

    def test_ff4_monotone(self):
        assert tour_fitness_ff4(10.0) > tour_fitness_ff4(11.0)

    def test_ff4_zero_distance_rejected(self):
        with pytest.raises(RoutingError):
            tour_fitness_ff4(0.0)

    def test_ff3_single_unit_leg(self):
        pts = [P("A", 0, 0, patients=0.0), P("B", 0, 1, patients=1.0)]
        d = np.array([[0.0, 1.0], [1.0, 0.0]])
        # legs A->B and B->A; only B carries patients, so fitness = 1/(1*1*1)
        assert tour_fitness_ff3([0, 1], pts, d) == pytest.approx(1.0)

    def test_ff3_doubling_distance_halves_fitness(self):
        pts = [P("A", 0, 0, patients=2.0), P("B", 0, 1, patients=1.0), P("C", 1, 0, patients=3.0)]
        d = distance_matrix(pts)
        assert tour_fitness_ff3([0, 1, 2], pts, 2 * d) == pytest.approx(
            tour_fitness_ff3([0, 1, 2], pts, d) / 2
        )

    def test_ff3_matches_hand_sum_on_three_points(self):
        pts = [
            P("A", 0.0, 0.0, patients=5.0, cost=2.0, rating=1.0),
            P("B", 0.0, 2.0, patients=3.0, cost=4.0, rating=2.0),
            P("C", 2.0, 0.0, patients=7.0, cost=1.0, rating=3.0),
        ]
        d = distance_matrix(pts)
        for perm in itertools.permutations(range(3)):
            expected = 0.0
            for idx in range(3):
                src, dst = perm[idx], perm[(idx + 1) % 3]
                p = pts[dst]
                expected += p.patients / (p.cost * d[src, dst] * p.rating)
            assert tour_fitness_ff3(list(perm), pts, d) == pytest.approx(expected, rel=1e-12)

    def test_ff3_zero_attributes_rejected(self):
        pts = [P("A", 0, 0), P("B", 0, 1, cost=1.0, rating=1.0)]
        d = np.array([[0.0, 0.0], [0.0, 0.0]])
        with pytest.raises(RoutingError, match="zero-distance leg"):
            tour_fitness_ff3([0, 1], pts, d)


SQUARE = [
    P("A", 0.0, 0.0),
    P("B", 0.0, 0.02),
    P("C", 0.02, 0.02),
    P("D", 0.02, 0.0),
]


class TestSolveTsp:
    def test_unit_square_optimal_perimeter(self):
        d = distance_matrix(SQUARE)
        # oracle: the 3 distinct closed tours over 4 fixed-start points
        best = min(
            sum(d[a, b] for a, b in zip((0,) + perm, perm + (0,)))
            for perm in itertools.permutations(range(1, 4))
        )
        tour = solve_tsp(SQUARE, "ff4", quick_cfg(), start_id="A")
        assert tour.total_distance == pytest.approx(best, rel=1e-12)
        assert tour.points[0].id == "A"

    def test_eight_point_exhaustive_oracle(self):
        rng = np.random.default_rng(5)
        pts = [P(f"P{i}", float(rng.uniform(35, 44)), float(rng.uniform(-100, -80))) for i in range(8)]
        d = distance_matrix(pts)
        best = min(
            sum(d[a, b] for a, b in zip((0,) + perm, perm + (0,)))
            for perm in itertools.permutations(range(1, 8))
        )
        tour = solve_tsp(pts, "ff4", quick_cfg(seed=1, population_size=80), start_id="P0")
        assert tour.total_distance <= best * 1.02

    def test_collinear_points_out_and_back(self):
        pts = [P("A", 0.0, 0.0), P("B", 1.0, 0.0), P("C", 2.5, 0.0), P("D", 4.0, 0.0)]
        span = haversine(pts[0], pts[3])
        tour = solve_tsp(pts, "ff4", quick_cfg(), start_id="A")
        assert tour.total_distance == pytest.approx(2 * span, rel=1e-9)

    def test_tour_structure_invariants(self, state_centers_weighted):
        points = routing.from_state_centers(state_centers_weighted)[:15]
        tour = solve_tsp(points, "ff3", quick_cfg(seed=2), start_id=points[0].id)
        assert sorted(tour.order) == list(range(15))
        assert tour.order[0] == 0
        assert len(tour.leg_distances) == 15  # closing leg included
        assert tour.total_distance == pytest.approx(sum(tour.leg_distances), abs=1e-9)
        d = distance_matrix(points)
        closing = d[tour.order[-1], tour.order[0]]
        assert tour.leg_distances[-1] == pytest.approx(closing)

    def test_deterministic_per_seed(self):
        a = solve_tsp(SQUARE, "ff4", quick_cfg(seed=3), start_id="A")
        b = solve_tsp(SQUARE, "ff4", quick_cfg(seed=3), start_id="A")
        assert a == b

    def test_fewer_than_three_points(self):
        with pytest.raises(RoutingError, match="fewer than 3 points"):
            solve_tsp(SQUARE[:2], "ff4", quick_cfg())

    def test_unknown_start(self):
        with pytest.raises(RoutingError, match="not in the point set"):
            solve_tsp(SQUARE, "ff4", quick_cfg(), start_id="Z")

    def test_duplicate_points_rejected(self):
        pts = SQUARE + [P("E", 0.0, 0.0)]
        with pytest.raises(RoutingError, match="duplicate"):
            solve_tsp(pts, "ff4", quick_cfg(), start_id="A")

    def test_ga_beats_nearest_neighbor_small(self, state_centers_weighted):
        points = routing.from_state_centers(state_centers_weighted)[:20]
        cfg = quick_cfg(seed=4, population_size=80, max_iterations=600, stall_iterations=200)
        tour = solve_tsp(points, "ff4", cfg, start_id=points[0].id)
        nn = nearest_neighbor_tour(points, "ff4", start_id=points[0].id)
        assert tour.fitness >= nn.fitness


class TestNormalization:
    def test_scaled_ranges(self, state_centers_weighted):
        points = routing.from_state_centers(state_centers_weighted)
        scaled, scale = normalize_route_inputs(points)
        patients = np.array([p.patients for p in scaled])
        costs = np.array([p.cost for p in scaled])
        ratings = np.array([p.rating for p in scaled])
        assert patients.min() == 0.0 and patients.max() == 1.0
        assert costs.max() == 1.0 and costs.min() > 0.0
        assert ratings.max() == 1.0 and ratings.min() > 0.0
        assert scale == pytest.approx(distance_matrix(points).max())

    def test_normalized_solve_keeps_km_distances(self):
        pts = [P(f"S{i}", float(la), float(lo), patients=float(i + 1), cost=2.0 + i, rating=1.0 + i)
               for i, (la, lo) in enumerate([(0, 0), (0, 1), (1, 1), (1, 0), (0.5, 2)])]
        raw = solve_tsp(pts, "ff4", quick_cfg(seed=1), start_id="S0")
        norm = solve_tsp(pts, "ff4", quick_cfg(seed=1), start_id="S0", normalized=True)
        # leg distances stay in km; only the fitness unit changes
        assert norm.total_distance == pytest.approx(raw.total_distance, rel=1e-9)
        assert norm.fitness == pytest.approx(raw.fitness * distance_matrix(pts).max(), rel=1e-9)


class TestKmeans:
    def test_k_equals_n_zero_sse(self):
        pts = SQUARE
        result = kmeans(pts, k=4, seed=0)
        assert result.sse == pytest.approx(0.0, abs=1e-18)
        assert sorted(result.labels) == [0, 1, 2, 3]

    def test_k1_centroid_is_mean(self, state_centers_all):
        points = routing.from_state_centers(state_centers_all)
        result = kmeans(points, k=1, seed=0)
        coords = np.array([(p.latitude, p.longitude) for p in points])
        assert result.centroids[0][0] == pytest.approx(coords[:, 0].mean())
        assert result.centroids[0][1] == pytest.approx(coords[:, 1].mean())
        expected_sse = float(((coords - coords.mean(axis=0)) ** 2).sum())
        assert result.sse == pytest.approx(expected_sse)

    def test_matches_exhaustive_oracle_n6_k2(self):
        pts = [
            P("A", 0.0, 0.0), P("B", 0.1, 0.1), P("C", 0.0, 0.2),
            P("D", 5.0, 5.0), P("E", 5.1, 5.1), P("F", 5.0, 5.2),
        ]
        coords = np.array([(p.latitude, p.longitude) for p in pts])

        def sse_for(labels):
            total = 0.0
            for c in (0, 1):
                members = coords[np.array(labels) == c]
                if len(members) == 0:
                    return math.inf
                total += float(((members - members.mean(axis=0)) ** 2).sum())
            return total

        best = min(sse_for(labels) for labels in itertools.product((0, 1), repeat=6))
        result = kmeans(pts, k=2, seed=0, n_init=10)
        assert result.sse == pytest.approx(best, rel=1e-9)

    def test_sse_history_nonincreasing(self):
        rng = np.random.default_rng(3)
        pts = [P(f"R{i}", float(rng.uniform(25, 48)), float(rng.uniform(-120, -70))) for i in range(40)]
        for k in (2, 3, 5, 8):
            result = kmeans(pts, k=k, seed=11)
            history = np.array(result.sse_history)
            assert np.all(np.diff(history) <= 1e-9)

    def test_labels_are_fixpoint(self, state_centers_all):
        points = routing.from_state_centers(state_centers_all)
        result = kmeans(points, k=4, seed=0, n_init=10)
        coords = np.array([(p.latitude, p.longitude) for p in points])
        centroids = np.array(result.centroids)
        d2 = ((coords[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        assert np.array_equal(np.array(result.labels), d2.argmin(axis=1))

    def test_k_out_of_range(self):
        with pytest.raises(RoutingError):
            kmeans(SQUARE, k=5, seed=0)
        with pytest.raises(RoutingError):
            kmeans(SQUARE, k=0, seed=0)

    def test_deterministic(self, state_centers_all):
        points = routing.from_state_centers(state_centers_all)
        assert kmeans(points, 4, seed=5, n_init=10) == kmeans(points, 4, seed=5, n_init=10)


class TestElbow:
    def test_two_blobs_select_two(self):
        rng = np.random.default_rng(0)
        pts = [P(f"A{i}", float(rng.normal(0, 0.3)), float(rng.normal(0, 0.3))) for i in range(15)]
        pts += [P(f"B{i}", float(rng.normal(20, 0.3)), float(rng.normal(20, 0.3))) for i in range(15)]
        assert elbow_select_k(pts, range(1, 7), seed=0) == 2

    def test_tie_breaks_to_smallest_k(self, monkeypatch):
        # force a flat curvature so every interior k ties
        canned = {k: 100.0 - 10 * k for k in range(1, 7)}

        def fake_kmeans(points, k, seed=0, n_init=1):
            return routing.ClusterAssignment(k=k, labels=(), centroids=(), sse=canned[k], sse_history=())

        monkeypatch.setattr(routing, "kmeans", fake_kmeans)
        pts = [P(f"T{i}", float(i), float(i)) for i in range(8)]
        assert elbow_select_k(pts, range(1, 7), seed=0) == 2

    def test_state_fixture_selects_four_regions(self, state_centers_weighted):
        points = routing.from_state_centers(state_centers_weighted)
        assert elbow_select_k(points, DEFAULT_AUTO_K_RANGE, seed=0) == 4

    def test_short_range_rejected(self):
        with pytest.raises(RoutingError, match="at least 3"):
            elbow_select_k(SQUARE, [1, 2], seed=0)

    def test_range_outside_n_rejected(self):
        with pytest.raises(RoutingError):
            elbow_select_k(SQUARE, range(1, 9), seed=0)


class TestRouteByCluster:
    def test_k1_equals_plain_solve(self, state_centers_weighted):
        points = routing.from_state_centers(state_centers_weighted)[:12]
        cfg = quick_cfg(seed=6)
        plan = route_by_cluster(points, "ff4", cfg, k=1, seed=6, start_id=points[0].id)
        solo = solve_tsp(points, "ff4", cfg, start_id=points[0].id)
        assert len(plan.tours) == 1
        assert plan.tours[0].order == solo.order
        assert plan.tours[0].fitness == pytest.approx(solo.fitness)
        assert plan.mean_fitness == pytest.approx(solo.fitness / solo.num_legs)

    def test_small_clusters_get_trivial_tours(self):
        pts = [
            P("A", 0.0, 0.0), P("B", 0.0, 0.1),        # pair
            P("C", 30.0, 30.0),                         # singleton
            P("D", -30.0, -30.0), P("E", -30.0, -29.9), P("F", -29.9, -30.0),  # triangle
        ]
        plan = route_by_cluster(pts, "ff4", quick_cfg(seed=1), k=3, seed=1)
        sizes = sorted(len(t.points) for t in plan.tours)
        assert sizes == [1, 2, 3]
        pair = next(t for t in plan.tours if len(t.points) == 2)
        assert pair.leg_distances[0] == pytest.approx(pair.leg_distances[1])  # out and back
        singleton = next(t for t in plan.tours if len(t.points) == 1)
        assert singleton.total_distance == 0.0 and singleton.fitness == 0.0

    def test_every_point_routed_exactly_once(self, state_centers_weighted):
        points = routing.from_state_centers(state_centers_weighted)[:16]
        plan = route_by_cluster(points, "ff4", quick_cfg(seed=2), k=3, seed=2)
        visited = sorted(i for t in plan.tours for i in t.order)
        assert visited == list(range(16))

    def test_cluster_ids_recorded(self, state_centers_weighted):
        points = routing.from_state_centers(state_centers_weighted)[:16]
        plan = route_by_cluster(points, "ff4", quick_cfg(seed=2), k=3, seed=2)
        assert sorted(t.cluster_id for t in plan.tours) == [0, 1, 2]


class TestGeojson:
    def test_empty(self):
        doc = export_geojson([])
        assert doc == {"type": "FeatureCollection", "features": []}

    def test_three_point_tour_linestring_closes(self):
        pts = SQUARE[:3]
        tour = solve_tsp(pts, "ff4", quick_cfg(), start_id="A")
        doc = export_geojson([tour])
        lines = [f for f in doc["features"] if f["geometry"]["type"] == "LineString"]
        assert len(lines) == 1
        coords = lines[0]["geometry"]["coordinates"]
        assert len(coords) == 4
        assert coords[0] == coords[-1]
        points = [f for f in doc["features"] if f["geometry"]["type"] == "Point"]
        assert len(points) == 3
        assert {f["properties"]["id"] for f in points} == {"A", "B", "C"}

    def test_clustered_run_has_distinct_cluster_lines(self, state_centers_weighted):
        points = routing.from_state_centers(state_centers_weighted)
        plan = route_by_cluster(points, "ff4", quick_cfg(seed=0, population_size=40, max_iterations=80, stall_iterations=40), k=4, seed=0)
        doc = export_geojson(plan.tours, plan.clusters)
        lines = [f for f in doc["features"] if f["geometry"]["type"] == "LineString"]
        assert len(lines) == 4
        assert {f["properties"]["cluster"] for f in lines} == {0, 1, 2, 3}
        point_features = [f for f in doc["features"] if f["geometry"]["type"] == "Point"]
        assert len(point_features) == len(points)
