"""JSON-over-HTTP service exposing the three decision methods.

Every response echoes the seed that produced it so clients can reproduce and
share scenarios. Request bodies failing schema validation return 400; inputs
that are well-formed but violate a domain rule (degenerate ranges, too few
points) return 422. Identical request body plus seed yields an identical
response body.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Any, Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, Field

from . import allocation, mdp, routing
from .config import AppConfig, canonical_json, load_config
from .dataset import DatasetError, load_hospitals, load_state_centers

API_PREFIXES = ("/api", "/api/v1")


class ScenarioRequest(BaseModel):
    ratio: float = Field(gt=0.0, le=1.0, description="hospitalization ratio")
    severity: float = Field(ge=1.0, le=7.0, description="clinical severity scale")
    transmissibility: float = Field(ge=1.0, le=5.0, description="transmissibility scale")
    seed: int | None = None


class GaOverrides(BaseModel):
    population_size: int | None = Field(default=None, ge=2)
    max_iterations: int | None = Field(default=None, ge=1)
    stall_iterations: int | None = Field(default=None, ge=1)
    mutation_prob: float | None = Field(default=None, ge=0.0, le=1.0)
    crossover_prob: float | None = Field(default=None, ge=0.0, le=1.0)


class AllocateRequest(BaseModel):
    ff: Literal["ff1", "ff2"] = "ff1"
    alpha: float = Field(default=2.0, gt=0.0)
    beta: float = Field(default=1.0, gt=0.0)
    gamma: float = Field(default=1.0, gt=0.0)
    budget: float = Field(default=100.0, ge=0.0)
    seed: int | None = None
    ga: GaOverrides | None = None


class RouteRequest(BaseModel):
    ff: Literal["ff3", "ff4"] = "ff4"
    normalized: bool = False
    kmeans: Literal["auto"] | int | None = None
    start: str = "PA"
    states: list[str] | None = None
    seed: int | None = None
    ga: GaOverrides | None = None


def _apply_overrides(config, overrides: GaOverrides | None):
    if overrides is None:
        return config
    fields = {k: v for k, v in overrides.model_dump().items() if v is not None}
    return replace(config, **fields)


def create_app(config: AppConfig | None = None) -> FastAPI:
    config = config or load_config()
    app = FastAPI(title="medalloc", version="1.0")

    @app.exception_handler(RequestValidationError)
    async def schema_violation(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "schema_violation", "message": str(exc.errors())}},
        )

    @app.exception_handler(ValueError)
    async def domain_error(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=422,
            content={"error": {"code": "domain_error", "message": str(exc)}},
        )

    def canonical(payload: dict[str, Any]) -> Response:
        return Response(content=canonical_json(payload), media_type="application/json")

    def register(prefix: str) -> None:
        @app.get(f"{prefix}/health")
        def health() -> dict[str, str]:
            return {"status": "ok"}

        @app.get(f"{prefix}/hospitals")
        def hospitals() -> Response:
            records = load_hospitals(config.hospitals_file)
            return canonical(
                {
                    "hospitals": [
                        {
                            "facility_name": r.facility_name,
                            "state": r.state,
                            "latitude": r.latitude,
                            "longitude": r.longitude,
                            "rating": r.rating,
                            "beds": r.beds,
                            "death_rate": r.death_rate,
                            "cost": r.cost,
                            "patients": r.patients,
                        }
                        for r in records
                    ]
                }
            )

        @app.post(f"{prefix}/mdp/solve")
        def solve_scenario(body: ScenarioRequest) -> Response:
            seed = body.seed if body.seed is not None else config.seed
            result = mdp.recommend(
                mdp.ScenarioInput(
                    hospitalization_ratio=body.ratio,
                    clinical_severity=body.severity,
                    transmissibility=body.transmissibility,
                )
            )
            return canonical(scenario_payload(result, seed))

        @app.post(f"{prefix}/allocate")
        def allocate(body: AllocateRequest) -> Response:
            seed = body.seed if body.seed is not None else config.seed
            constants = allocation.FitnessConstants(alpha=body.alpha, beta=body.beta, gamma=body.gamma)
            ga_config = _apply_overrides(replace(config.allocation_ga, seed=seed), body.ga)
            records = load_hospitals(config.hospitals_file)
            decisions = allocation.optimize_allocation(
                records, body.ff, constants, bed_budget=body.budget, config=ga_config
            )
            return canonical(
                {
                    "ff": body.ff,
                    "constants": {"alpha": body.alpha, "beta": body.beta, "gamma": body.gamma},
                    "budget": body.budget,
                    "seed": seed,
                    "decisions": [decision_payload(d) for d in decisions],
                }
            )

        @app.post(f"{prefix}/route")
        def route(body: RouteRequest) -> Response:
            seed = body.seed if body.seed is not None else config.seed
            ga_config = _apply_overrides(replace(config.routing_ga, seed=seed), body.ga)
            points = load_route_points(config, body.ff)
            if body.states is not None:
                wanted = {s.upper() for s in body.states}
                points = [p for p in points if p.id in wanted]
            return canonical(route_payload(points, body, ga_config, seed))

    for prefix in API_PREFIXES:
        register(prefix)
    return app


def scenario_payload(result: mdp.PolicyResult, seed: int) -> dict[str, Any]:
    return {
        "seed": seed,
        "discount": result.discount,
        "states": [
            {"index": i + 1, "value": round(float(v), 6), "action": a}
            for i, (v, a) in enumerate(zip(result.values, result.actions))
        ],
    }


def decision_payload(d: allocation.AllocationDecision) -> dict[str, Any]:
    return {
        "facility_name": d.facility_name,
        "baseline_beds": round(d.baseline_beds, 6),
        "optimized_beds": round(d.optimized_beds, 6),
        "ff1": round(d.ff1, 6),
        "ff2": round(d.ff2, 6),
        "decision_ff1": d.decision_ff1,
        "decision_ff2": d.decision_ff2,
    }


def load_route_points(config: AppConfig, ff: str) -> list[routing.GeoPoint]:
    """The patient-weighted score routes only states with patient data."""
    if routing.RouteFitness(ff) is routing.RouteFitness.FF3:
        centers = load_state_centers(config.state_centers_file, config.covid_patients_file)
    else:
        centers = load_state_centers(config.state_centers_file)
    return routing.from_state_centers(centers)


def tour_payload(tour: routing.Tour) -> dict[str, Any]:
    return {
        "ids": [p.id for p in tour.points],
        "leg_distances_km": [round(d, 6) for d in tour.leg_distances],
        "total_distance_km": round(tour.total_distance, 6),
        "fitness": tour.fitness,
        "fitness_kind": tour.fitness_kind.value,
        "normalized": tour.normalized,
        "cluster": tour.cluster_id,
    }


def route_payload(
    points: list[routing.GeoPoint], body: RouteRequest, ga_config, seed: int
) -> dict[str, Any]:
    start = body.start.upper()
    if body.kmeans is None:
        tour = routing.solve_tsp(points, body.ff, ga_config, start_id=start, normalized=body.normalized)
        return {
            "seed": seed,
            "fitness": tour.fitness,
            "mean_fitness": routing.plan_mean_fitness(tour),
            "tours": [tour_payload(tour)],
            "clusters": None,
            "geojson": routing.export_geojson([tour]),
        }
    k = None if body.kmeans == "auto" else int(body.kmeans)
    plan = routing.route_by_cluster(
        points, body.ff, ga_config, k=k, seed=seed, start_id=start, normalized=body.normalized
    )
    return {
        "seed": seed,
        "fitness": sum(t.fitness for t in plan.tours),
        "mean_fitness": plan.mean_fitness,
        "tours": [tour_payload(t) for t in plan.tours],
        "clusters": {
            "k": plan.clusters.k,
            "labels": {p.id: int(l) for p, l in zip(points, plan.clusters.labels)},
            "centroids": [[c[0], c[1]] for c in plan.clusters.centroids],
            "sse": plan.clusters.sse,
        },
        "geojson": routing.export_geojson(plan.tours, plan.clusters),
    }
