"""Hospital and state-center datasets: CSV loading, validation, linear scaling.

All downstream modules consume the record types defined here. Loading is
strict: every cell is parsed or the row is rejected with a row-numbered
diagnostic, and nothing is imputed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

HOSPITAL_COLUMNS = [
    "facility_name",
    "state",
    "latitude",
    "longitude",
    "rating",
    "beds",
    "death_rate",
    "cost",
    "patients",
]

STATE_CENTER_COLUMNS = [
    "state",
    "latitude",
    "longitude",
    "recovery_days",
    "cost_per_day",
    "cost",
    "rating_sum",
]

COVID_PATIENT_COLUMNS = ["state", "patients"]


class DatasetError(ValueError):
    """Raised when a fixture file or a record violates the documented schema."""


class DegenerateRangeError(DatasetError):
    """Raised when a field is constant, so linear scaling has zero width."""


class Scale(str, Enum):
    UNIT = "unit"        # scale onto [0, 1]
    PERCENT = "percent"  # scale onto [0, 100]

    @property
    def factor(self) -> float:
        return 100.0 if self is Scale.PERCENT else 1.0


@dataclass(frozen=True)
class HospitalRecord:
    """One facility row: identity, location, rating, and the readiness inputs."""

    facility_name: str
    state: str
    latitude: float
    longitude: float
    rating: int
    beds: float
    death_rate: float
    cost: float
    patients: float

    def __post_init__(self) -> None:
        if self.rating not in (1, 2, 3, 4, 5):
            raise DatasetError(f"rating must be 1-5 stars, got {self.rating!r}")
        if not -90.0 <= self.latitude <= 90.0:
            raise DatasetError(f"latitude {self.latitude} outside [-90, 90]")
        if not -180.0 <= self.longitude <= 180.0:
            raise DatasetError(f"longitude {self.longitude} outside [-180, 180]")
        if self.beds < 0:
            raise DatasetError(f"beds must be nonnegative, got {self.beds}")
        if self.death_rate < 0:
            raise DatasetError(f"death_rate must be nonnegative, got {self.death_rate}")
        if self.cost <= 0:
            raise DatasetError(f"cost must be positive, got {self.cost}")
        if self.patients < 0:
            raise DatasetError(f"patients must be nonnegative, got {self.patients}")


@dataclass(frozen=True)
class StateCenter:
    """Geographic center of one state plus the per-state delivery inputs."""

    state: str
    latitude: float
    longitude: float
    patients: float
    cost: float
    rating_sum: float

    def __post_init__(self) -> None:
        if not -90.0 <= self.latitude <= 90.0:
            raise DatasetError(f"latitude {self.latitude} outside [-90, 90]")
        if not -180.0 <= self.longitude <= 180.0:
            raise DatasetError(f"longitude {self.longitude} outside [-180, 180]")
        if self.patients < 0:
            raise DatasetError(f"patients must be nonnegative, got {self.patients}")
        if self.cost <= 0:
            raise DatasetError(f"cost must be positive, got {self.cost}")
        if self.rating_sum <= 0:
            raise DatasetError(f"rating_sum must be positive, got {self.rating_sum}")


@dataclass(frozen=True)
class NormalizationSpec:
    """Min/max snapshot used to scale one field, kept so originals stay recoverable."""

    field_name: str
    vmin: float
    vmax: float
    target_scale: Scale

    def __post_init__(self) -> None:
        if not self.vmax > self.vmin:
            raise DegenerateRangeError(
                f"field {self.field_name!r}: max ({self.vmax}) must exceed min ({self.vmin})"
            )


@dataclass(frozen=True)
class NormalizedDataset:
    """Scaled records plus the originals and the per-field scaling specs."""

    records: tuple
    original: tuple
    specs: tuple[NormalizationSpec, ...]


def _parse_float(raw: str, column: str, row_num: int, errors: list[str]) -> float:
    text = raw.strip()
    if not text:
        errors.append(f"row {row_num}: column {column!r} is empty")
        return math.nan
    try:
        value = float(text)
    except ValueError:
        errors.append(f"row {row_num}: column {column!r} is not numeric: {raw!r}")
        return math.nan
    if not math.isfinite(value):
        errors.append(f"row {row_num}: column {column!r} is not finite: {raw!r}")
        return math.nan
    return value


def _parse_rating(raw: str, row_num: int, errors: list[str]) -> int:
    text = raw.strip()
    try:
        value = int(text)
    except ValueError:
        errors.append(f"row {row_num}: column 'rating' is not an integer: {raw!r}")
        return 0
    if value not in (1, 2, 3, 4, 5):
        errors.append(f"row {row_num}: rating {value} outside 1-5")
        return 0
    return value


def _read_rows(path: str | Path, expected_columns: Sequence[str]):
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"dataset file not found: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if header is None:
            raise DatasetError(f"{path}: file is empty, expected a header row")
        if list(header) != list(expected_columns):
            raise DatasetError(
                f"{path}: header mismatch, expected {list(expected_columns)}, got {list(header)}"
            )
        return list(reader)


def load_hospitals(path: str | Path) -> list[HospitalRecord]:
    """Load and validate the hospital fixture.

    Every row either parses cleanly into a :class:`HospitalRecord` or the whole
    load fails with diagnostics naming the offending rows (data rows are
    numbered from 2, matching spreadsheet line numbers under the header).
    """
    rows = _read_rows(path, HOSPITAL_COLUMNS)
    records: list[HospitalRecord] = []
    errors: list[str] = []
    seen_names: dict[str, int] = {}
    for offset, row in enumerate(rows):
        row_num = offset + 2
        name = (row["facility_name"] or "").strip()
        state = (row["state"] or "").strip().upper()
        if not name:
            errors.append(f"row {row_num}: facility_name is empty")
        if name in seen_names:
            errors.append(
                f"row {row_num}: duplicate facility name {name!r} (first seen row {seen_names[name]})"
            )
        elif name:
            seen_names[name] = row_num
        if len(state) != 2 or not state.isalpha():
            errors.append(f"row {row_num}: state must be a 2-letter code, got {row['state']!r}")
        values = {
            col: _parse_float(row[col], col, row_num, errors)
            for col in ("latitude", "longitude", "beds", "death_rate", "cost", "patients")
        }
        rating = _parse_rating(row["rating"], row_num, errors)
        if any(math.isnan(v) for v in values.values()) or rating == 0 or not name:
            continue
        try:
            records.append(HospitalRecord(facility_name=name, state=state, rating=rating, **values))
        except DatasetError as exc:
            errors.append(f"row {row_num}: {exc}")
    if errors:
        raise DatasetError("; ".join(errors))
    return records


def load_state_centers(
    centers_path: str | Path,
    patients_path: str | Path | None = None,
) -> list[StateCenter]:
    """Load state centers, optionally joined with the per-state patient counts.

    Without ``patients_path`` every state in the centers file is returned with
    ``patients`` set to 0 (distance-only routing does not read it). With it,
    states missing from the patients file are dropped from the result, which
    is how the patient-weighted runs exclude states lacking patient data.
    """
    rows = _read_rows(centers_path, STATE_CENTER_COLUMNS)
    errors: list[str] = []
    patients_by_state: dict[str, float] | None = None
    if patients_path is not None:
        patients_by_state = {}
        for offset, row in enumerate(_read_rows(patients_path, COVID_PATIENT_COLUMNS)):
            row_num = offset + 2
            state = (row["state"] or "").strip().upper()
            value = _parse_float(row["patients"], "patients", row_num, errors)
            if state in patients_by_state:
                errors.append(f"row {row_num}: duplicate state {state!r} in patients file")
            patients_by_state[state] = value

    centers: list[StateCenter] = []
    seen: dict[str, int] = {}
    for offset, row in enumerate(rows):
        row_num = offset + 2
        state = (row["state"] or "").strip().upper()
        if len(state) != 2 or not state.isalpha():
            errors.append(f"row {row_num}: state must be a 2-letter code, got {row['state']!r}")
            continue
        if state in seen:
            errors.append(f"row {row_num}: duplicate state {state!r} (first seen row {seen[state]})")
            continue
        seen[state] = row_num
        values = {
            col: _parse_float(row[col], col, row_num, errors)
            for col in ("latitude", "longitude", "recovery_days", "cost_per_day", "cost", "rating_sum")
        }
        if any(math.isnan(v) for v in values.values()):
            continue
        if patients_by_state is not None:
            if state not in patients_by_state:
                continue  # state lacks patient data: excluded from patient-weighted runs
            patients = patients_by_state[state]
        else:
            patients = 0.0
        try:
            centers.append(
                StateCenter(
                    state=state,
                    latitude=values["latitude"],
                    longitude=values["longitude"],
                    patients=patients,
                    cost=values["cost"],
                    rating_sum=values["rating_sum"],
                )
            )
        except DatasetError as exc:
            errors.append(f"row {row_num}: {exc}")
    if errors:
        raise DatasetError("; ".join(errors))
    return centers


def linear_scaling(
    x: Iterable[float] | np.ndarray,
    vmin: float | None = None,
    vmax: float | None = None,
    target: Scale | str = Scale.UNIT,
) -> np.ndarray:
    """Scale values linearly so vmin maps to the low bound and vmax to the high one.

    Defaults take the min/max over ``x`` itself. A constant input (vmax == vmin)
    has no width to scale over and raises :class:`DegenerateRangeError`; the
    caller decides the fallback.
    """
    target = Scale(target)
    arr = np.asarray(list(x) if not isinstance(x, np.ndarray) else x, dtype=float)
    if arr.size == 0:
        return arr.copy()
    lo = float(np.min(arr)) if vmin is None else float(vmin)
    hi = float(np.max(arr)) if vmax is None else float(vmax)
    if not hi > lo:
        raise DegenerateRangeError(f"max ({hi}) must exceed min ({lo})")
    return (arr - lo) / (hi - lo) * target.factor


def normalize_dataset(
    records: Sequence,
    fields: Sequence[str],
    target: Scale | str = Scale.UNIT,
) -> NormalizedDataset:
    """Apply per-field linear scaling across a dataset of records.

    Each listed field is scaled independently, with the min/max taken over the
    whole dataset. The returned bundle keeps both the scaled records and the
    originals, plus the :class:`NormalizationSpec` per field.
    """
    target = Scale(target)
    if not records:
        return NormalizedDataset(records=(), original=(), specs=())
    specs = []
    columns: dict[str, np.ndarray] = {}
    for field_name in fields:
        raw = np.array([float(getattr(r, field_name)) for r in records])
        lo, hi = float(raw.min()), float(raw.max())
        specs.append(NormalizationSpec(field_name=field_name, vmin=lo, vmax=hi, target_scale=target))
        columns[field_name] = linear_scaling(raw, lo, hi, target)
    scaled = [
        replace(record, **{f: float(columns[f][i]) for f in fields})
        for i, record in enumerate(records)
    ]
    return NormalizedDataset(records=tuple(scaled), original=tuple(records), specs=tuple(specs))
