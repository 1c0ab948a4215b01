"""Hospital readiness scoring and budget-constrained bed allocation.

Two readiness scores are available: ``ff1`` weights the bed/death-rate and
cost terms by the hospital's star rating, ``ff2`` omits the rating. The
optimizer searches per-hospital bed increments with a real-valued GA under a
total budget, coupling each hospital's cost to its added beds, and emits the
binary request/stop decision per hospital.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from . import ga
from .dataset import HospitalRecord


class AllocationError(ValueError):
    """Raised for domain errors: zero denominators, empty inputs, zero baselines."""


class FitnessKind(str, Enum):
    FF1 = "ff1"  # rating-weighted readiness
    FF2 = "ff2"  # readiness without the rating factor


@dataclass(frozen=True)
class FitnessConstants:
    """Policy weights for the readiness terms; all must be positive."""

    alpha: float = 2.0
    beta: float = 1.0
    gamma: float = 1.0

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            if getattr(self, name) <= 0:
                raise AllocationError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class AllocationDecision:
    """One optimizer row: bed increment outcome plus both decision columns."""

    facility_name: str
    baseline_beds: float
    optimized_beds: float
    ff1: float
    ff2: float
    decision_ff1: int
    decision_ff2: int


def ff2(record: HospitalRecord, constants: FitnessConstants = FitnessConstants()) -> float:
    """Readiness without the rating factor:
    (alpha * beds) / (beta * death_rate) + 1 / (gamma * cost)."""
    if record.death_rate <= 0:
        raise AllocationError(f"{record.facility_name}: death_rate must be positive for scoring")
    if record.cost <= 0:
        raise AllocationError(f"{record.facility_name}: cost must be positive for scoring")
    return (constants.alpha * record.beds) / (constants.beta * record.death_rate) + 1.0 / (
        constants.gamma * record.cost
    )


def ff1(record: HospitalRecord, constants: FitnessConstants = FitnessConstants()) -> float:
    """Rating-weighted readiness: rating times :func:`ff2`."""
    return record.rating * ff2(record, constants)


_SCORERS = {FitnessKind.FF1: ff1, FitnessKind.FF2: ff2}


def score(record: HospitalRecord, kind: FitnessKind | str, constants: FitnessConstants) -> float:
    return _SCORERS[FitnessKind(kind)](record, constants)


def rank(
    records: list[HospitalRecord],
    kind: FitnessKind | str = FitnessKind.FF1,
    constants: FitnessConstants = FitnessConstants(),
) -> list[tuple[HospitalRecord, float]]:
    """Order hospitals by descending readiness; ties break by facility name."""
    kind = FitnessKind(kind)
    scored = [(r, score(r, kind, constants)) for r in records]
    return sorted(scored, key=lambda pair: (-pair[1], pair[0].facility_name))


def _with_increment(record: HospitalRecord, delta: float) -> HospitalRecord:
    # adding beds drags cost up proportionally
    return replace(
        record,
        beds=record.beds + delta,
        cost=record.cost * (1.0 + delta / record.beds),
    )


DEFAULT_CAP_FRACTION = 0.5


def optimize_allocation(
    records: list[HospitalRecord],
    kind: FitnessKind | str = FitnessKind.FF1,
    constants: FitnessConstants = FitnessConstants(),
    bed_budget: float = 100.0,
    config: ga.GaConfig | None = None,
    cap_fraction: float = DEFAULT_CAP_FRACTION,
    penalty_weight: float | None = None,
) -> list[AllocationDecision]:
    """Search per-hospital bed increments maximizing total readiness under a budget.

    Each hospital's increment ranges over [0, cap_fraction * baseline]. A
    candidate's value is the summed readiness of the incremented hospitals
    (cost scaled by 1 + delta/baseline) minus a linear penalty on budget
    overshoot. The decision bit for a hospital is 1 iff its optimized
    increment exceeds half a bed. Both decision columns are filled: the
    requested kind drives ``optimized_beds``, and a twin run with the other
    kind (same seed and budget) supplies the other column. Rows come back
    sorted by the requested kind's per-hospital readiness, descending.
    """
    kind = FitnessKind(kind)
    if bed_budget < 0:
        raise AllocationError(f"bed_budget must be nonnegative, got {bed_budget}")
    if not records:
        raise AllocationError("no hospital records to optimize")
    zero_based = [r.facility_name for r in records if r.beds <= 0]
    if zero_based:
        raise AllocationError(
            "cost coupling is undefined for hospitals with zero baseline beds: "
            + ", ".join(zero_based)
        )

    other = FitnessKind.FF2 if kind is FitnessKind.FF1 else FitnessKind.FF1
    deltas = _optimize_deltas(records, kind, constants, bed_budget, config, cap_fraction, penalty_weight)
    twin_deltas = _optimize_deltas(records, other, constants, bed_budget, config, cap_fraction, penalty_weight)

    decisions = []
    for record, delta, twin_delta in zip(records, deltas, twin_deltas):
        optimized = _with_increment(record, delta)
        own_bit = int(delta > 0.5)
        twin_bit = int(twin_delta > 0.5)
        decisions.append(
            AllocationDecision(
                facility_name=record.facility_name,
                baseline_beds=record.beds,
                optimized_beds=optimized.beds,
                ff1=ff1(optimized, constants),
                ff2=ff2(optimized, constants),
                decision_ff1=own_bit if kind is FitnessKind.FF1 else twin_bit,
                decision_ff2=own_bit if kind is FitnessKind.FF2 else twin_bit,
            )
        )
    sort_value = {FitnessKind.FF1: lambda d: d.ff1, FitnessKind.FF2: lambda d: d.ff2}[kind]
    return sorted(decisions, key=lambda d: (-sort_value(d), d.facility_name))


def _optimize_deltas(
    records: list[HospitalRecord],
    kind: FitnessKind,
    constants: FitnessConstants,
    bed_budget: float,
    config: ga.GaConfig | None,
    cap_fraction: float,
    penalty_weight: float | None,
) -> np.ndarray:
    if bed_budget == 0:
        # the overshoot penalty forbids any increment; skip the search
        return np.zeros(len(records))
    caps = np.array([cap_fraction * r.beds for r in records])
    if penalty_weight is None:
        penalty_weight = 10.0 * max(score(r, kind, constants) for r in records)
    bounds = tuple((0.0, float(cap)) for cap in caps)
    if config is None:
        config = ga.GaConfig(encoding=ga.Encoding.REAL, bounds=bounds)
    else:
        config = replace(config, encoding=ga.Encoding.REAL, bounds=bounds)

    beds = np.array([r.beds for r in records])
    deaths = np.array([r.death_rate for r in records])
    costs = np.array([r.cost for r in records])
    weights = (
        np.array([float(r.rating) for r in records])
        if kind is FitnessKind.FF1
        else np.ones(len(records))
    )

    def fitness(chromosome: ga.Chromosome) -> float:
        deltas = chromosome.genes
        grown_cost = costs * (1.0 + deltas / beds)
        per_hospital = weights * (
            (constants.alpha * (beds + deltas)) / (constants.beta * deaths)
            + 1.0 / (constants.gamma * grown_cost)
        )
        total = float(per_hospital.sum())
        overshoot = float(deltas.sum()) - bed_budget
        if overshoot > 0:
            total -= penalty_weight * overshoot
        return total

    result = ga.run(config, fitness, genome_len=len(records))
    return result.best.genes
