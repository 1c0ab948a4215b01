"""Decision-support toolkit for hospital resource allocation and sharing.

Three methods behind one library: a two-action MDP that recommends idling on
or sharing resources per scenario, GA-driven bed-allocation ranking with two
readiness scores, and GA-solved closed delivery tours over state centers or
facilities with optional k-means regioning. A CLI and a JSON HTTP service
expose all three.
"""

from .allocation import (
    AllocationDecision,
    AllocationError,
    FitnessConstants,
    FitnessKind,
    ff1,
    ff2,
    optimize_allocation,
    rank,
)
from .dataset import (
    DatasetError,
    DegenerateRangeError,
    HospitalRecord,
    NormalizationSpec,
    NormalizedDataset,
    Scale,
    StateCenter,
    linear_scaling,
    load_hospitals,
    load_state_centers,
    normalize_dataset,
)
from .ga import Chromosome, Encoding, GaConfig, GaError, GaResult, crossover, mutate, run
from .mdp import (
    MdpError,
    MdpModel,
    PolicyResult,
    ScenarioInput,
    build_forest_mdp,
    recommend,
    scenario_to_model,
    solve,
)
from .routing import (
    ClusterAssignment,
    GeoPoint,
    RouteFitness,
    RoutePlan,
    RoutingError,
    Tour,
    cost_of_care,
    distance_matrix,
    elbow_select_k,
    export_geojson,
    from_hospitals,
    from_state_centers,
    haversine,
    kmeans,
    nearest_neighbor_tour,
    normalize_route_inputs,
    plan_mean_fitness,
    route_by_cluster,
    solve_tsp,
    tour_fitness_ff3,
    tour_fitness_ff4,
)

__version__ = "0.1.0"

__all__ = [
    "AllocationDecision",
    "AllocationError",
    "Chromosome",
    "ClusterAssignment",
    "DatasetError",
    "DegenerateRangeError",
    "Encoding",
    "FitnessConstants",
    "FitnessKind",
    "GaConfig",
    "GaError",
    "GaResult",
    "GeoPoint",
    "HospitalRecord",
    "MdpError",
    "MdpModel",
    "NormalizationSpec",
    "NormalizedDataset",
    "PolicyResult",
    "RouteFitness",
    "RoutePlan",
    "RoutingError",
    "Scale",
    "ScenarioInput",
    "StateCenter",
    "Tour",
    "build_forest_mdp",
    "cost_of_care",
    "crossover",
    "distance_matrix",
    "elbow_select_k",
    "export_geojson",
    "ff1",
    "ff2",
    "from_hospitals",
    "from_state_centers",
    "haversine",
    "kmeans",
    "linear_scaling",
    "load_hospitals",
    "load_state_centers",
    "mutate",
    "nearest_neighbor_tour",
    "normalize_dataset",
    "normalize_route_inputs",
    "optimize_allocation",
    "plan_mean_fitness",
    "rank",
    "recommend",
    "route_by_cluster",
    "run",
    "scenario_to_model",
    "solve",
    "solve_tsp",
    "tour_fitness_ff3",
    "tour_fitness_ff4",
]
