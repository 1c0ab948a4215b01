"""Share/idle recommendations from a two-action renewal MDP.

The model mirrors the classic forest-management tradeoff: keep growing the
resource stock (Wait) versus liquidate it now (Cut). Mapped to hospitals,
Wait means idling on current resources and Cut means sharing them out, with a
random reset event (the outlier scenario) knocking the system back to the
first state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

WAIT = 0
CUT = 1

ACTION_NAMES = {WAIT: "Wait", CUT: "Cut"}

# Recommendation labels shown to hospital managers.
IDLE = "Idle"
SHARE = "Share"
ASK = "Ask"

ROW_SUM_TOL = 1e-12
BELLMAN_TOL = 1e-9

DEFAULT_NUM_STATES = 3
DEFAULT_DISCOUNT = 0.5


class MdpError(ValueError):
    """Raised for malformed models or out-of-range scenario inputs."""


@dataclass(frozen=True)
class ScenarioInput:
    """What-if scenario: hospitalization ratio plus severity/transmissibility scales."""

    hospitalization_ratio: float
    clinical_severity: float
    transmissibility: float

    def __post_init__(self) -> None:
        if not 0.0 < self.hospitalization_ratio <= 1.0:
            raise MdpError(
                f"hospitalization_ratio must be in (0, 1], got {self.hospitalization_ratio}"
            )
        if not 1.0 <= self.clinical_severity <= 7.0:
            raise MdpError(f"clinical_severity must be in [1, 7], got {self.clinical_severity}")
        if not 1.0 <= self.transmissibility <= 5.0:
            raise MdpError(f"transmissibility must be in [1, 5], got {self.transmissibility}")


@dataclass(frozen=True)
class MdpModel:
    """Transition tensor P[action][from][to] and reward matrix R[state][action]."""

    transitions: np.ndarray
    rewards: np.ndarray

    def __post_init__(self) -> None:
        P = np.asarray(self.transitions, dtype=float)
        R = np.asarray(self.rewards, dtype=float)
        if P.ndim != 3 or P.shape[1] != P.shape[2]:
            raise MdpError(f"transitions must have shape (A, S, S), got {P.shape}")
        if R.shape != (P.shape[1], P.shape[0]):
            raise MdpError(f"rewards must have shape (S, A) = {(P.shape[1], P.shape[0])}, got {R.shape}")
        if P.shape[1] < 2:
            raise MdpError("model needs at least 2 states")
        if np.any(P < -ROW_SUM_TOL) or np.any(P > 1 + ROW_SUM_TOL):
            raise MdpError("transition probabilities must lie in [0, 1]")
        row_sums = P.sum(axis=2)
        if np.any(np.abs(row_sums - 1.0) > ROW_SUM_TOL):
            bad = np.argwhere(np.abs(row_sums - 1.0) > ROW_SUM_TOL)[0]
            raise MdpError(
                f"transition row for action {bad[0]}, state {bad[1]} sums to "
                f"{row_sums[bad[0], bad[1]]!r}, not 1"
            )
        object.__setattr__(self, "transitions", P)
        object.__setattr__(self, "rewards", R)

    @property
    def num_states(self) -> int:
        return self.transitions.shape[1]

    @property
    def num_actions(self) -> int:
        return self.transitions.shape[0]


@dataclass(frozen=True)
class PolicyResult:
    """Optimal state values with the greedy policy and its manager-facing labels."""

    values: np.ndarray
    policy: np.ndarray          # WAIT/CUT index per state
    actions: tuple[str, ...]    # Idle / Share / Ask per state
    discount: float


def build_forest_mdp(
    num_states: int,
    mature_wait_reward: float,
    mature_cut_reward: float,
    reset_prob: float,
) -> MdpModel:
    """Build the two-action renewal MDP over ``num_states`` growth stages.

    Wait advances one stage (capped at the last) unless the reset event fires
    with probability ``reset_prob``, which sends the system back to stage 1.
    Waiting pays nothing until the final stage, which pays
    ``mature_wait_reward``. Cut always returns to stage 1 and pays 1 from any
    interior stage, ``mature_cut_reward`` from the final stage, and 0 from the
    first.
    """
    if num_states < 2:
        raise MdpError(f"num_states must be >= 2, got {num_states}")
    if not 0.0 <= reset_prob <= 1.0:
        raise MdpError(f"reset_prob must be in [0, 1], got {reset_prob}")
    S = num_states
    P = np.zeros((2, S, S))
    for s in range(S):
        nxt = min(s + 1, S - 1)
        P[WAIT, s, 0] += reset_prob
        P[WAIT, s, nxt] += 1.0 - reset_prob
        P[CUT, s, 0] = 1.0
    R = np.zeros((S, 2))
    R[S - 1, WAIT] = mature_wait_reward
    R[1:S - 1, CUT] = 1.0
    R[S - 1, CUT] = mature_cut_reward
    return MdpModel(transitions=P, rewards=R)


def _q_values(model: MdpModel, values: np.ndarray, discount: float) -> np.ndarray:
    # Q[s, a] = R[s, a] + discount * sum_t P[a, s, t] * V[t]
    return model.rewards + discount * np.einsum("ast,t->sa", model.transitions, values)


def solve(model: MdpModel, discount: float) -> PolicyResult:
    """Solve for the exact infinite-horizon optimal values and greedy policy.

    Policy iteration with an exact linear-system policy evaluation at each
    step, so the returned values are fixed points of the Bellman optimality
    operator to solver precision (residual below ``BELLMAN_TOL``). Ties between
    Wait and Cut resolve to Wait.
    """
    if not 0.0 < discount < 1.0:
        raise MdpError(f"discount must be in (0, 1), got {discount}")
    S = model.num_states
    policy = np.zeros(S, dtype=int)  # start from all-Wait
    identity = np.eye(S)
    for _ in range(200):
        P_pi = model.transitions[policy, np.arange(S), :]
        R_pi = model.rewards[np.arange(S), policy]
        values = np.linalg.solve(identity - discount * P_pi, R_pi)
        q = _q_values(model, values, discount)
        # strict improvement keeps ties on Wait
        new_policy = np.where(q[:, CUT] > q[:, WAIT], CUT, WAIT)
        if np.array_equal(new_policy, policy):
            break
        policy = new_policy
    else:
        raise MdpError("policy iteration did not converge")
    residual = float(np.max(np.abs(values - _q_values(model, values, discount).max(axis=1))))
    if residual >= BELLMAN_TOL:
        raise MdpError(f"Bellman residual {residual} exceeds tolerance {BELLMAN_TOL}")
    actions = tuple(_label(int(a), float(v)) for a, v in zip(policy, values))
    return PolicyResult(values=values, policy=policy, actions=actions, discount=discount)


def _label(action: int, value: float) -> str:
    if value < 0:
        return ASK
    return SHARE if action == CUT else IDLE


def scenario_to_model(scenario: ScenarioInput) -> tuple[MdpModel, float]:
    """Map a scenario onto model parameters.

    The hospitalization ratio plays the reset probability, clinical severity
    the final-stage Wait reward, and transmissibility the final-stage Cut
    reward, over three stages with a 0.5 discount. Every parameter can be
    overridden by building the model directly.
    """
    model = build_forest_mdp(
        num_states=DEFAULT_NUM_STATES,
        mature_wait_reward=scenario.clinical_severity,
        mature_cut_reward=scenario.transmissibility,
        reset_prob=scenario.hospitalization_ratio,
    )
    return model, DEFAULT_DISCOUNT


def recommend(scenario: ScenarioInput) -> PolicyResult:
    """Solve the scenario and return per-stage Idle/Share/Ask recommendations.

    Wait maps to Idle (hold resources), Cut to Share (offer surplus); any
    stage whose optimal value is negative is labeled Ask, meaning the hospital
    should request resources. With the default nonnegative rewards Ask can
    only appear under manual model overrides.
    """
    model, discount = scenario_to_model(scenario)
    return solve(model, discount)
