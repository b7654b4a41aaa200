"""Long-run opinions when one group's information source is shifted by ``xi``.

Members of the biased group receive ``theta_star + xi`` instead of
``theta_star``; ``Wt`` is unchanged. The steady state decomposes as
``mu = b_tilde * theta_star + b_tilde_B * xi``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dynamics import SteadyStateResult, resolvent_solve, steady_state_direct
from .signed_core import GroupAssignment, OpinionExchangeNetwork


@dataclass(frozen=True)
class BiasSpec:
    xi: float
    biased_group: int = 1


def _mask(groups: GroupAssignment, bias: BiasSpec, n: int) -> np.ndarray:
    if groups.n != n:
        raise ValueError(f"groups cover {groups.n} agents, network has {n}")
    if not 0 <= bias.biased_group < groups.k:
        raise ValueError(f"biased group {bias.biased_group} not in assignment with {groups.k} groups")
    return groups.mask(bias.biased_group)


def bias_injection(x: OpinionExchangeNetwork, theta_star: float, agent_bias) -> np.ndarray:
    """Right-hand side ``wt_i * (theta_star + bias_i)`` for an arbitrary per-agent bias vector."""
    agent_bias = np.asarray(agent_bias, dtype=float)
    if agent_bias.shape != (x.n,):
        raise ValueError(f"bias vector must have length {x.n}")
    return x.wt * (theta_star + agent_bias)


def steady_state_biased(
    x: OpinionExchangeNetwork, groups: GroupAssignment, theta_star: float, bias: BiasSpec
) -> np.ndarray:
    agent_bias = np.where(_mask(groups, bias, x.n), bias.xi, 0.0)
    return resolvent_solve(x.Wt, bias_injection(x, theta_star, agent_bias))


def bias_response(x: OpinionExchangeNetwork, mask) -> np.ndarray:
    """Long-run response to a unit bias on the agents selected by ``mask``."""
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != (x.n,):
        raise ValueError(f"mask must have length {x.n}")
    return resolvent_solve(x.Wt, np.where(mask, x.wt, 0.0))


def decompose_bias(
    x: OpinionExchangeNetwork, groups: GroupAssignment, bias: BiasSpec
) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(b_tilde, b_tilde_B)``: responses to a unit truth and to a unit bias."""
    b_tilde = resolvent_solve(x.Wt, x.wt)
    return b_tilde, bias_response(x, _mask(groups, bias, x.n))


def biased_result(
    x: OpinionExchangeNetwork, groups: GroupAssignment, theta_star: float, bias: BiasSpec
) -> tuple[SteadyStateResult, np.ndarray]:
    """Unbiased centralities with the biased long-run opinions, plus ``b_tilde_B``."""
    base = steady_state_direct(x, theta_star)
    b_tilde, b_tilde_B = decompose_bias(x, groups, bias)
    mu = steady_state_biased(x, groups, theta_star, bias)
    agent_bias = np.where(_mask(groups, bias, x.n), bias.xi, 0.0)
    gap = np.abs(mu - x.Wt @ mu - bias_injection(x, theta_star, agent_bias))
    residual = float(gap.max()) if x.n else 0.0
    degenerate = ~x.Wt.any(axis=1) & (x.wt == 0)
    nash = float(np.where(degenerate, 0.0, gap).max()) if x.n else 0.0
    result = replace(base, mu=mu, b_tilde=b_tilde, residual=residual, nash_residual=nash)
    return result, b_tilde_B
