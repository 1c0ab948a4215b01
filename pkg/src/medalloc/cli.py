"""Command-line entry points: ingest, scenario, allocate, route, serve.

Fixed seeds make every run byte-reproducible. Failures exit nonzero with a
machine-readable JSON error on stderr.
"""

from __future__ import annotations

import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

import click

from . import allocation, mdp, routing
from .config import AppConfig, build_manifest, canonical_json, load_config
from .dataset import load_hospitals, load_state_centers
from .service import load_route_points, route_payload, RouteRequest, scenario_payload


def _fail(code: str, message: str) -> None:
    click.echo(json.dumps({"error": {"code": code, "message": message}}), err=True)
    sys.exit(1)


def _config(ctx: click.Context) -> AppConfig:
    try:
        return load_config(ctx.obj.get("config_path"), seed=ctx.obj.get("seed"))
    except ValueError as exc:
        _fail("config_error", str(exc))


@click.group()
@click.option("--seed", type=int, default=None, help="Seed every stochastic step; defaults to 0.")
@click.option("--config", "config_path", type=click.Path(), default=None, help="JSON config file.")
@click.pass_context
def main(ctx: click.Context, seed: int | None, config_path: str | None) -> None:
    """Decision support for hospital resource allocation, sharing, and routing."""
    ctx.ensure_object(dict)
    ctx.obj["seed"] = seed
    ctx.obj["config_path"] = config_path


@main.command()
@click.pass_context
def ingest(ctx: click.Context) -> None:
    """Validate the bundled datasets and print a summary."""
    cfg = _config(ctx)
    try:
        hospitals = load_hospitals(cfg.hospitals_file)
        centers = load_state_centers(cfg.state_centers_file)
        weighted = load_state_centers(cfg.state_centers_file, cfg.covid_patients_file)
    except ValueError as exc:
        _fail("dataset_error", str(exc))
    click.echo(
        canonical_json(
            {
                "hospitals": len(hospitals),
                "state_centers": len(centers),
                "state_centers_with_patients": len(weighted),
            }
        )
    )


@main.command()
@click.option("--ratio", type=float, required=True, help="Hospitalization ratio in (0, 1].")
@click.option("--severity", type=float, required=True, help="Clinical severity, 1-7.")
@click.option("--transmissibility", type=float, required=True, help="Transmissibility, 1-5.")
@click.option("--json", "as_json", is_flag=True, help="Emit the API JSON payload instead of a table.")
@click.pass_context
def scenario(ctx: click.Context, ratio: float, severity: float, transmissibility: float, as_json: bool) -> None:
    """Print per-stage values and Idle/Share/Ask recommendations for a scenario."""
    cfg = _config(ctx)
    try:
        result = mdp.recommend(mdp.ScenarioInput(ratio, severity, transmissibility))
    except ValueError as exc:
        _fail("scenario_error", str(exc))
    payload = scenario_payload(result, cfg.seed)
    if as_json:
        click.echo(canonical_json(payload))
        return
    click.echo("stage  value    action")
    for state in payload["states"]:
        click.echo(f"{state['index']:<6} {state['value']:<8.2f} {state['action']}")


@main.command()
@click.option("--ff", type=click.Choice(["ff1", "ff2"]), default="ff1", help="Readiness score to optimize.")
@click.option("--alpha", type=float, default=2.0)
@click.option("--beta", type=float, default=1.0)
@click.option("--gamma", type=float, default=1.0)
@click.option("--budget", type=float, default=100.0, help="Total extra beds available.")
@click.option("--population", type=int, default=None, help="Override GA population size.")
@click.option("--max-iterations", type=int, default=None)
@click.option("--stall-iterations", type=int, default=None)
@click.option("--out", type=click.Path(), default="allocation.csv", show_default=True)
@click.option("--manifest", "manifest_path", type=click.Path(), default=None, help="Optionally write a run manifest (timestamped).")
@click.pass_context
def allocate(
    ctx: click.Context,
    ff: str,
    alpha: float,
    beta: float,
    gamma: float,
    budget: float,
    population: int | None,
    max_iterations: int | None,
    stall_iterations: int | None,
    out: str,
    manifest_path: str | None,
) -> None:
    """Optimize bed increments and write the readiness table as CSV."""
    cfg = _config(ctx)
    ga_config = cfg.allocation_ga
    overrides = {
        "population_size": population,
        "max_iterations": max_iterations,
        "stall_iterations": stall_iterations,
    }
    ga_config = replace(ga_config, **{k: v for k, v in overrides.items() if v is not None})
    try:
        constants = allocation.FitnessConstants(alpha=alpha, beta=beta, gamma=gamma)
        records = load_hospitals(cfg.hospitals_file)
        decisions = allocation.optimize_allocation(records, ff, constants, budget, ga_config)
    except ValueError as exc:
        _fail("allocation_error", str(exc))

    by_name = {r.facility_name: r for r in records}
    with Path(out).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["facility_name", "rating", "beds", "death_rate", "cost", "decision_1", "ff1", "decision_2", "ff2"]
        )
        for d in decisions:
            r = by_name[d.facility_name]
            writer.writerow(
                [d.facility_name, r.rating, round(d.optimized_beds, 3), r.death_rate, r.cost,
                 d.decision_ff1, round(d.ff1, 3), d.decision_ff2, round(d.ff2, 3)]
            )
    if manifest_path:
        manifest = build_manifest(cfg, [vars(d) for d in decisions])
        Path(manifest_path).write_text(json.dumps(vars(manifest), indent=2))
    click.echo(canonical_json({"rows": len(decisions), "out": str(out), "seed": cfg.seed, "top": decisions[0].facility_name}))


@main.command()
@click.option("--ff", type=click.Choice(["ff3", "ff4"]), default="ff4", help="Tour score.")
@click.option("--normalized", is_flag=True, help="Scale patients/cost/rating/distance onto unit ranges.")
@click.option("--kmeans", "kmeans_opt", default=None, help="'auto' for elbow-selected k, or an integer k.")
@click.option("--start", default="PA", show_default=True, help="Anchor state for the tour.")
@click.option("--population", type=int, default=None, help="Override GA population size.")
@click.option("--max-iterations", type=int, default=None)
@click.option("--stall-iterations", type=int, default=None)
@click.option("--geojson", "geojson_path", type=click.Path(), default="route.geojson", show_default=True)
@click.option("--summary", "summary_path", type=click.Path(), default="route_summary.json", show_default=True)
@click.option("--manifest", "manifest_path", type=click.Path(), default=None, help="Optionally write a run manifest (timestamped).")
@click.pass_context
def route(
    ctx: click.Context,
    ff: str,
    normalized: bool,
    kmeans_opt: str | None,
    start: str,
    population: int | None,
    max_iterations: int | None,
    stall_iterations: int | None,
    geojson_path: str,
    summary_path: str,
    manifest_path: str | None,
) -> None:
    """Solve a delivery tour (optionally per k-means region) and write GeoJSON."""
    cfg = _config(ctx)
    kmeans_value: str | int | None = None
    if kmeans_opt is not None:
        if kmeans_opt == "auto":
            kmeans_value = "auto"
        else:
            try:
                kmeans_value = int(kmeans_opt)
            except ValueError:
                _fail("flag_error", f"--kmeans must be 'auto' or an integer, got {kmeans_opt!r}")
    ga_config = cfg.routing_ga
    overrides = {
        "population_size": population,
        "max_iterations": max_iterations,
        "stall_iterations": stall_iterations,
    }
    ga_config = replace(ga_config, **{k: v for k, v in overrides.items() if v is not None})
    try:
        body = RouteRequest(ff=ff, normalized=normalized, kmeans=kmeans_value, start=start, seed=cfg.seed)
        points = load_route_points(cfg, ff)
        payload = route_payload(points, body, ga_config, cfg.seed)
    except ValueError as exc:
        _fail("routing_error", str(exc))
    Path(geojson_path).write_text(canonical_json(payload["geojson"]))
    summary = {k: v for k, v in payload.items() if k != "geojson"}
    Path(summary_path).write_text(canonical_json(summary))
    if manifest_path:
        manifest = build_manifest(cfg, summary)
        Path(manifest_path).write_text(json.dumps(vars(manifest), indent=2))
    click.echo(
        canonical_json(
            {
                "geojson": str(geojson_path),
                "summary": str(summary_path),
                "seed": cfg.seed,
                "fitness": payload["fitness"],
                "tours": len(payload["tours"]),
            }
        )
    )


@main.command()
@click.option("--host", default=None, help="Bind address (defaults to config).")
@click.option("--port", type=int, default=None, help="Bind port (defaults to config).")
@click.pass_context
def serve(ctx: click.Context, host: str | None, port: int | None) -> None:
    """Start the JSON API for the dashboard."""
    import uvicorn

    from .service import create_app

    cfg = _config(ctx)
    app = create_app(cfg)
    uvicorn.run(app, host=host or cfg.host, port=port or cfg.port, log_level="warning")


if __name__ == "__main__":
    main()
