"""Regenerate the bundled CSV fixtures under src/medalloc/data/.

Hospital rows carry the published Virginia readiness-table values verbatim
(they are already on a 0-100 scale); coordinates are approximate facility
locations. State rows use approximate geographic centers of the 48 contiguous
states plus DC. Per-state patient counts are plausible fall-2020 magnitudes;
Minnesota and Wyoming are absent from the patients file, which excludes them
from patient-weighted routing runs. The stored cost column is exactly
recovery_days * cost_per_day.
"""

import csv
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "src" / "medalloc" / "data"

HOSPITALS = [
    # name, lat, lon, rating, beds, death_rate, cost, patients
    ("CENTRA", 37.4188, -79.1611, 4, 39.1, 10.3, 63.6, 412),
    ("INOVA ALEXANDRIA HOSPITAL", 38.8156, -77.1266, 5, 42.4, 25.5, 64.5, 388),
    ("BON SECOURS ST MARYS HOSPITAL", 37.5862, -77.4996, 3, 68.5, 26.1, 77.6, 546),
    ("MARY WASHINGTON HOSPITAL", 38.3193, -77.4861, 3, 29.3, 13.3, 70.2, 301),
    ("SENTARA PRINCESS ANNE HOSPITAL", 36.7335, -76.0702, 5, 16.3, 15.2, 66.5, 204),
    ("INOVA FAIR OAKS HOSPITAL", 38.8782, -77.3824, 5, 33.7, 30.9, 69.2, 352),
    ("SENTARA NORFOLK GENERAL HOSPITAL", 36.8617, -76.3030, 3, 64.1, 34.5, 54.8, 587),
    ("WINCHESTER MEDICAL CENTER", 39.1935, -78.1847, 4, 51.1, 43.6, 50.3, 298),
    ("VIRGINIA HOSPITAL CENTER", 38.8937, -77.1272, 5, 33.7, 38.8, 68.8, 276),
    ("RESTON HOSPITAL CENTER", 38.9555, -77.3493, 4, 16.3, 17.0, 66.7, 189),
    ("INOVA LOUDOUN HOSPITAL", 39.0668, -77.4911, 5, 23.9, 30.9, 49.7, 243),
]

# state, lat, lon, recovery_days, cost_per_day, rating_sum
STATES = [
    ("AL", 32.806671, -86.791130, 13.0, 2100.0, 68),
    ("AZ", 34.168219, -111.930907, 12.5, 2600.0, 62),
    ("AR", 34.751928, -92.131378, 13.5, 1900.0, 55),
    ("CA", 37.271875, -119.270415, 14.0, 4100.0, 324),
    ("CO", 38.997934, -105.550567, 11.5, 2900.0, 57),
    ("CT", 41.518783, -72.757507, 12.0, 3600.0, 31),
    ("DE", 38.989550, -75.505093, 12.0, 3100.0, 9),
    ("DC", 38.910270, -77.014468, 11.0, 3900.0, 11),
    ("FL", 28.634440, -82.449099, 13.5, 2700.0, 214),
    ("GA", 32.678125, -83.222977, 13.0, 2300.0, 93),
    ("ID", 44.389049, -114.659934, 11.0, 2000.0, 26),
    ("IL", 39.739318, -89.504139, 12.5, 3000.0, 142),
    ("IN", 39.766910, -86.441277, 12.0, 2500.0, 86),
    ("IA", 42.074622, -93.499800, 11.5, 2200.0, 74),
    ("KS", 38.484770, -98.380121, 11.5, 2100.0, 73),
    ("KY", 37.526671, -85.290710, 12.5, 2200.0, 64),
    ("LA", 31.068933, -91.997913, 14.0, 2100.0, 77),
    ("ME", 45.370583, -69.243503, 10.5, 2500.0, 19),
    ("MD", 38.946350, -76.687592, 12.0, 3400.0, 46),
    ("MA", 42.272290, -71.363627, 12.5, 3800.0, 58),
    ("MI", 44.343714, -85.411395, 12.5, 2800.0, 108),
    ("MN", 46.282427, -94.305434, 11.5, 2700.0, 88),
    ("MS", 32.741646, -89.678696, 14.0, 1800.0, 52),
    ("MO", 38.356823, -92.458095, 12.0, 2400.0, 81),
    ("MT", 47.033458, -109.645445, 10.5, 2000.0, 24),
    ("NE", 41.527384, -99.810605, 11.0, 2100.0, 43),
    ("NV", 39.332998, -116.631651, 12.5, 2800.0, 24),
    ("NH", 43.681887, -71.583686, 10.5, 3200.0, 14),
    ("NJ", 40.143862, -74.727876, 13.0, 3700.0, 69),
    ("NM", 34.406381, -106.112963, 12.0, 2200.0, 25),
    ("NY", 42.917128, -75.525865, 14.0, 3900.0, 176),
    ("NC", 35.541153, -79.401458, 12.0, 2400.0, 97),
    ("ND", 47.446163, -100.469347, 10.5, 2100.0, 18),
    ("OH", 40.291260, -82.787701, 12.0, 2600.0, 151),
    ("OK", 35.588520, -97.534719, 12.5, 2000.0, 72),
    ("OR", 43.936493, -120.560390, 11.0, 3000.0, 38),
    ("PA", 40.873782, -77.799155, 12.5, 3100.0, 153),
    ("RI", 41.676595, -71.555837, 12.0, 3300.0, 9),
    ("SC", 33.916190, -80.895155, 13.0, 2300.0, 49),
    ("SD", 44.443365, -100.224261, 10.5, 2000.0, 23),
    ("TN", 35.858316, -86.350562, 12.5, 2300.0, 84),
    ("TX", 31.478511, -99.329988, 13.5, 2500.0, 306),
    ("UT", 39.305352, -111.673622, 11.0, 2400.0, 33),
    ("VT", 44.075343, -72.662473, 10.0, 2900.0, 7),
    ("VA", 37.515112, -78.869872, 12.0, 2800.0, 82),
    ("WA", 47.381156, -120.447016, 11.5, 3200.0, 61),
    ("WV", 38.642567, -80.613274, 12.5, 2000.0, 30),
    ("WI", 44.624665, -89.994965, 11.5, 2500.0, 87),
    ("WY", 42.999875, -107.551351, 10.5, 2100.0, 14),
]

# absent states (MN, WY) lack patient data and are excluded from
# patient-weighted routing runs
PATIENTS = {
    "AL": 131000, "AZ": 204000, "AR": 64500, "CA": 730000, "CO": 58000,
    "CT": 53400, "DE": 18300, "DC": 14500, "FL": 643000, "GA": 271000,
    "ID": 32000, "IL": 245000, "IN": 95000, "IA": 65000, "KS": 45000,
    "KY": 58000, "LA": 155000, "ME": 4600, "MD": 115000, "MA": 120000,
    "MI": 105000, "MS": 85500, "MO": 90000, "MT": 8100, "NE": 35500,
    "NV": 70800, "NH": 7200, "NJ": 195000, "NM": 25800, "NY": 440000,
    "NC": 175000, "ND": 12400, "OH": 130000, "OK": 60900, "OR": 28000,
    "PA": 140000, "RI": 22200, "SC": 125000, "SD": 14100, "TN": 160000,
    "TX": 650000, "UT": 55000, "VT": 1700, "VA": 125000, "WA": 78000,
    "WV": 12200, "WI": 80000,
}


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    with (DATA / "va_hospitals.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["facility_name", "state", "latitude", "longitude", "rating", "beds", "death_rate", "cost", "patients"]
        )
        for name, lat, lon, rating, beds, death, cost, patients in HOSPITALS:
            writer.writerow([name, "VA", lat, lon, rating, beds, death, cost, patients])

    with (DATA / "state_centers.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["state", "latitude", "longitude", "recovery_days", "cost_per_day", "cost", "rating_sum"])
        for state, lat, lon, days, per_day, rating_sum in STATES:
            writer.writerow([state, lat, lon, days, per_day, days * per_day, rating_sum])

    with (DATA / "covid_patients_by_state.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["state", "patients"])
        for state, patients in sorted(PATIENTS.items()):
            writer.writerow([state, patients])


if __name__ == "__main__":
    main()
