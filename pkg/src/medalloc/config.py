"""Application configuration and reproducible run manifests."""

from __future__ import annotations

import hashlib
import json
import os
import uuid
from dataclasses import asdict, dataclass, field, replace
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path
from typing import Any

from . import ga
from .allocation import FitnessConstants

ENV_HOST = "MEDALLOC_HOST"
ENV_PORT = "MEDALLOC_PORT"
ENV_DATA_DIR = "MEDALLOC_DATA_DIR"


class ConfigError(ValueError):
    """Raised when the config file or its referenced datasets are unusable."""


def default_data_dir() -> Path:
    return Path(str(resources.files("medalloc") / "data"))


def default_allocation_ga(seed: int = 0) -> ga.GaConfig:
    # population 1000, stall 250, cap 1000: the bed-allocation method defaults
    return ga.GaConfig(
        encoding=ga.Encoding.REAL,
        population_size=1000,
        mutation_prob=0.5,
        max_iterations=1000,
        stall_iterations=250,
        seed=seed,
        bounds=((0.0, 1.0),),  # placeholder; the optimizer rebinds per record
    )


def default_routing_ga(seed: int = 0) -> ga.GaConfig:
    # population 100, mutation 20%, cap 5000, stall 1000: the routing method defaults
    return ga.GaConfig(
        encoding=ga.Encoding.PERMUTATION,
        population_size=100,
        mutation_prob=0.2,
        max_iterations=5000,
        stall_iterations=1000,
        seed=seed,
    )


@dataclass(frozen=True)
class AppConfig:
    data_dir: Path
    hospitals_file: Path
    state_centers_file: Path
    covid_patients_file: Path
    constants: FitnessConstants
    allocation_ga: ga.GaConfig
    routing_ga: ga.GaConfig
    host: str = "127.0.0.1"
    port: int = 8000
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.port <= 65535:
            raise ConfigError(f"port must be in 1..65535, got {self.port}")
        for label in ("hospitals_file", "state_centers_file", "covid_patients_file"):
            path = getattr(self, label)
            if not Path(path).exists():
                raise ConfigError(f"{label} does not exist: {path}")

    def with_seed(self, seed: int) -> "AppConfig":
        return replace(
            self,
            seed=seed,
            allocation_ga=replace(self.allocation_ga, seed=seed),
            routing_ga=replace(self.routing_ga, seed=seed),
        )

    def snapshot(self) -> dict[str, Any]:
        """JSON-safe dump of every knob that influences results."""
        data = asdict(self)
        for key in ("data_dir", "hospitals_file", "state_centers_file", "covid_patients_file"):
            data[key] = str(data[key])
        for key in ("allocation_ga", "routing_ga"):
            data[key]["encoding"] = str(data[key]["encoding"].value)
        return data


def load_config(
    path: str | Path | None = None,
    seed: int | None = None,
    env: dict[str, str] | None = None,
) -> AppConfig:
    """Build the app config from defaults, an optional JSON file, and env overrides.

    File keys mirror :meth:`AppConfig.snapshot`. ``MEDALLOC_HOST``,
    ``MEDALLOC_PORT`` and ``MEDALLOC_DATA_DIR`` override the bind address and
    dataset directory.
    """
    env = os.environ if env is None else env
    overrides: dict[str, Any] = {}
    if path is not None:
        try:
            overrides = json.loads(Path(path).read_text())
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None

    data_dir = Path(env.get(ENV_DATA_DIR) or overrides.get("data_dir") or default_data_dir())
    base_seed = seed if seed is not None else int(overrides.get("seed", 0))

    constants_raw = overrides.get("constants", {})
    constants = FitnessConstants(
        alpha=float(constants_raw.get("alpha", 2.0)),
        beta=float(constants_raw.get("beta", 1.0)),
        gamma=float(constants_raw.get("gamma", 1.0)),
    )

    def build_ga(defaults: ga.GaConfig, raw: dict[str, Any]) -> ga.GaConfig:
        fields = {
            k: raw[k]
            for k in (
                "population_size",
                "mutation_prob",
                "crossover_prob",
                "max_iterations",
                "stall_iterations",
                "elitism_fraction",
            )
            if k in raw
        }
        return replace(defaults, seed=base_seed, **fields)

    return AppConfig(
        data_dir=data_dir,
        hospitals_file=Path(overrides.get("hospitals_file") or data_dir / "va_hospitals.csv"),
        state_centers_file=Path(overrides.get("state_centers_file") or data_dir / "state_centers.csv"),
        covid_patients_file=Path(
            overrides.get("covid_patients_file") or data_dir / "covid_patients_by_state.csv"
        ),
        constants=constants,
        allocation_ga=build_ga(default_allocation_ga(), overrides.get("allocation_ga", {})),
        routing_ga=build_ga(default_routing_ga(), overrides.get("routing_ga", {})),
        host=env.get(ENV_HOST) or overrides.get("host", "127.0.0.1"),
        port=int(env.get(ENV_PORT) or overrides.get("port", 8000)),
        seed=base_seed,
    )


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def result_digest(payload: Any) -> str:
    """Stable SHA-256 over the canonical JSON encoding of a result."""
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    """Provenance for one run: the inputs that reproduce its result digest."""

    run_id: str
    timestamp: str
    seed: int
    config: dict[str, Any]
    digest: str


def build_manifest(config: AppConfig, result: Any) -> RunManifest:
    return RunManifest(
        run_id=str(uuid.uuid4()),
        timestamp=datetime.now(timezone.utc).isoformat(),
        seed=config.seed,
        config=config.snapshot(),
        digest=result_digest(result),
    )
