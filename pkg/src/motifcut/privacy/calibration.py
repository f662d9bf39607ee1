# src/motifcut/privacy/calibration.py

from __future__ import annotations
from dataclasses import asdict, dataclass
from typing import Dict, List, Sequence
import math


@dataclass(frozen=True)
class TuningConstants:
    """Constants hidden in the Theta(.) of the parameter formulas.

    All logarithms are natural; a change of base folds into these constants.
    """
    c_T: float = 1.0
    c_lambda: float = 1.0
    c_eta: float = 1.0
    c_degW: float = 1.0
    c_degL3: float = 1.0

    def __post_init__(self) -> None:
        for name, value in asdict(self).items():
            if not (value > 0.0 and math.isfinite(value)):
                raise ValueError(f"Tuning constant {name} must be positive, got {value!r}.")


@dataclass(frozen=True)
class MechanismParams:
    """Run parameters of the private mechanism."""
    epsilon: float
    delta: float
    beta: float
    eps1: float
    eps2: float
    eps3: float
    eps4: float
    T: int
    L: int
    lam: float
    eta: float
    R: float
    B: float
    constants: TuningConstants = TuningConstants()

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "MechanismParams":
        data = dict(data)
        data["constants"] = TuningConstants(**data.get("constants", {}))
        return cls(**data)


def stage_budgets(epsilon: float, L: int) -> tuple[float, float, float, float]:
    """Split epsilon over the preprocessing releases and the L reference releases."""
    eps1 = eps2 = eps3 = epsilon / 6.0
    eps4 = epsilon / (6.0 * L)
    return eps1, eps2, eps3, eps4


def restart_count(beta: float) -> int:
    """L = ceil(log_3(3 / beta)), at least 1."""
    # the small shift keeps exact powers of 3 from rounding up
    return max(1, math.ceil(math.log(3.0 / beta, 3.0) - 1e-12))


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not (value > 0.0 and math.isfinite(value)):
            raise ValueError(f"{name} must be positive and finite, got {value!r}.")


def calibrate(
    epsilon: float,
    delta: float,
    beta: float,
    W: float,
    U_tri: float,
    U_lam: float,
    l3_tilde: float,
    n: int,
    constants: TuningConstants = TuningConstants(),
) -> MechanismParams:
    """Turn the privacy budget and released quantities into run parameters.

        L   = max(1, ceil(log_3(3 / beta)))
        T   = max(1, round(c_T W (eps U_tri + U_lam) / (n ln(n / delta) l3)))
        lam = c_lambda l3 sqrt(T) ln^{3/2}(max(T, 2) / delta) ln(3 / beta) / eps
        R   = sqrt(W ln n),  B = (U_tri + U_lam L / eps) ln n
        eta = c_eta (R / B) sqrt(2 / T)
    """
    _require_positive(
        epsilon=epsilon, delta=delta, beta=beta, W=W,
        U_tri=U_tri, U_lam=U_lam, l3_tilde=l3_tilde,
    )
    if delta >= 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta!r}.")
    if beta >= 1.0:
        raise ValueError(f"beta must be in (0, 1), got {beta!r}.")
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}.")

    L = restart_count(beta)
    eps1, eps2, eps3, eps4 = stage_budgets(epsilon, L)

    log_n = math.log(n)
    T_real = constants.c_T * W * (epsilon * U_tri + U_lam) / (
        n * math.log(n / delta) * l3_tilde
    )
    T = max(1, int(round(T_real)))

    lam = (
        constants.c_lambda
        * l3_tilde
        * math.sqrt(T)
        * math.log(max(T, 2) / delta) ** 1.5
        * math.log(3.0 / beta)
        / epsilon
    )
    R = math.sqrt(W * log_n)
    B = (U_tri + U_lam * L / epsilon) * log_n
    eta = constants.c_eta * (R / B) * math.sqrt(2.0 / T)

    return MechanismParams(
        epsilon=epsilon,
        delta=delta,
        beta=beta,
        eps1=eps1,
        eps2=eps2,
        eps3=eps3,
        eps4=eps4,
        T=T,
        L=L,
        lam=lam,
        eta=eta,
        R=R,
        B=B,
        constants=constants,
    )


def basic_composition(epsilons: Sequence[float]) -> float:
    """Total epsilon of pure-DP releases composed sequentially."""
    return float(sum(epsilons))


def advanced_composition(epsilon: float, delta_prime: float, k: int) -> float:
    """Epsilon of k-fold composition of epsilon-DP steps, failing with delta_prime.

        eps' = sqrt(2 k ln(1 / delta')) eps + k eps (e^eps - 1)
    """
    _require_positive(epsilon=epsilon, delta_prime=delta_prime)
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}.")
    return math.sqrt(2.0 * k * math.log(1.0 / delta_prime)) * epsilon + k * epsilon * math.expm1(epsilon)


def sketch_step_epsilon(params: MechanismParams) -> float:
    """Privacy loss of one released sketch, l3_tilde ln(2T / delta) / lam, constants dropped.

    lam is proportional to l3_tilde, so the ratio follows from the run parameters.
    """
    T = params.T
    return (
        params.epsilon
        * math.log(2.0 * T / params.delta)
        / (
            params.constants.c_lambda
            * math.sqrt(T)
            * math.log(max(T, 2) / params.delta) ** 1.5
            * math.log(3.0 / params.beta)
        )
    )


def privacy_ledger(params: MechanismParams) -> List[Dict[str, object]]:
    """Releases of one run with their budgets, closed by a composition entry.

    The Laplace budgets sum to 2 eps / 3; the remaining eps / 3 is allotted
    to the T Gaussian releases per restart through the choice of lambda.
    The closing ``run`` entry composes the T sketch steps of a restart by
    advanced composition (per-step delta delta / (2T), slack delta / 2), then
    the restarts and the Laplace releases by basic composition. Constants
    are dropped, so ``epsilon_composed`` is an accounting figure.
    """
    entries: List[Dict[str, object]] = [
        {"release": "total_weight", "mechanism": "laplace", "epsilon": params.eps1},
        {"release": "pair_caps", "mechanism": "laplace", "epsilon": params.eps2},
        {"release": "sensitivity_proxy", "mechanism": "laplace", "epsilon": params.eps3},
    ]
    for restart in range(params.L):
        entries.append(
            {"release": f"reference_weights[{restart}]", "mechanism": "laplace",
             "epsilon": params.eps4}
        )
    laplace = [float(entry["epsilon"]) for entry in entries]

    step_epsilon = sketch_step_epsilon(params)
    restart_epsilon = advanced_composition(step_epsilon, params.delta / 2.0, params.T)
    entries.append(
        {"release": "sdp_sketches", "mechanism": "gaussian",
         "epsilon": params.epsilon / 3.0, "steps": params.T * params.L,
         "step_epsilon": step_epsilon, "step_delta": params.delta / (2.0 * params.T),
         "restart_epsilon": restart_epsilon}
    )
    entries.append(
        {"release": "run", "mechanism": "composition",
         "epsilon_allocated": basic_composition(laplace + [params.epsilon / 3.0]),
         "epsilon_composed": basic_composition(laplace + [restart_epsilon] * params.L),
         "delta": params.delta}
    )
    return entries
