from importlib import resources
from pathlib import Path

import pytest

from medalloc.dataset import load_hospitals, load_state_centers


DATA_DIR = Path(str(resources.files("medalloc") / "data"))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def hospitals():
    return load_hospitals(DATA_DIR / "va_hospitals.csv")


@pytest.fixture(scope="session")
def state_centers_all():
    """48 contiguous states plus DC; patients unset (distance-only routing)."""
    return load_state_centers(DATA_DIR / "state_centers.csv")


@pytest.fixture(scope="session")
def state_centers_weighted():
    """States joined with patient counts; MN and WY drop out."""
    return load_state_centers(
        DATA_DIR / "state_centers.csv", DATA_DIR / "covid_patients_by_state.csv"
    )
