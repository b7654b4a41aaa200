"""Constructors for example topologies and homogeneous societies.

Weights follow an equal-share rule: an agent with ``d`` links splits its
attention into ``d + 2`` equal parts, one per link, one for its own previous
opinion (the self-loop) and one for the truth. Weights are computed as
fractions and rounded once, so :mod:`signed_opinion.exact` recovers them
exactly.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import to_fraction
from .homogeneous import HomogeneousSociety
from .signed_core import GroupAssignment, InteractionNetwork


def _as_network(W: list[list[Fraction]], w: list[Fraction]) -> InteractionNetwork:
    return InteractionNetwork(np.array(W, dtype=float), np.array(w, dtype=float))


def _labels_to_groups(labels: Sequence) -> GroupAssignment:
    order = {g: k for k, g in enumerate(sorted(set(labels)))}
    return GroupAssignment(tuple(order[g] for g in labels))


def complete_network(
    sizes: Sequence[int], truth_weights: Sequence[float] | None = None
) -> tuple[InteractionNetwork, GroupAssignment]:
    """Everyone attends to everyone (self included).

    By default every share is ``1/(n+1)``. ``truth_weights`` overrides
    ``w_i`` per agent; the rest of that row is split evenly over the ``n``
    attention entries.
    """
    groups = GroupAssignment.from_sizes(sizes)
    n = groups.n
    if n < 2:
        raise ValueError(f"complete network needs at least 2 agents, got {n}")
    if truth_weights is None:
        w = [Fraction(1, n + 1)] * n
    else:
        if len(truth_weights) != n:
            raise ValueError(f"need {n} truth weights, got {len(truth_weights)}")
        w = [to_fraction(v) for v in truth_weights]
        if any(not 0 <= v <= 1 for v in w):
            raise ValueError("truth weights must lie in [0, 1]")
    W = [[(1 - w[i]) / n] * n for i in range(n)]
    return _as_network(W, w), groups


def ring_network(labels: Sequence) -> tuple[InteractionNetwork, GroupAssignment]:
    """Agents on a circle in the given order; each attends to itself and both neighbours."""
    n = len(labels)
    if n < 3:
        raise ValueError(f"ring network needs at least 3 agents, got {n}")
    share = Fraction(1, 4)
    W = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in (i - 1, i, i + 1):
            W[i][j % n] = share
    return _as_network(W, [share] * n), _labels_to_groups(labels)


def homogeneous_network(s: HomogeneousSociety, n: int) -> tuple[InteractionNetwork, GroupAssignment]:
    """Full matrix for a two-group homogeneous society; group A occupies indices ``0..n_A-1``."""
    eta = to_fraction(s.eta)
    n_A = eta * n
    if n_A.denominator != 1:
        raise ValueError(f"n * eta = {float(n_A)} is not an integer")
    n_A = int(n_A)
    n_B = n - n_A
    if n_A < 1 or n_B < 1:
        raise ValueError(f"both groups need members, got n_A={n_A}, n_B={n_B}")
    wA, wB, hA, hB = map(to_fraction, (s.w_A, s.w_B, s.h_A, s.h_B))
    rA = hA + (1 - hA) * eta
    rB = hB + (1 - hB) * (1 - eta)

    def row(rho, w, own, other, own_first):
        inside = [rho * (1 - w) / own] * own
        outside = [(1 - rho) * (1 - w) / other] * other
        return inside + outside if own_first else outside + inside

    W = [row(rA, wA, n_A, n_B, True) for _ in range(n_A)]
    W += [row(rB, wB, n_B, n_A, False) for _ in range(n_B)]
    groups = GroupAssignment.from_sizes((n_A, n_B))
    return _as_network(W, [wA] * n_A + [wB] * n_B), groups


def random_balanced_network(
    n: int,
    rng: np.random.Generator | int | None = None,
    groups: int = 2,
    density: float = 0.5,
    truth_range: tuple[float, float] = (0.05, 0.95),
) -> tuple[InteractionNetwork, GroupAssignment]:
    """Random interaction network with uniform weights and a random partition.

    Each off-diagonal link is present with probability ``density``; present
    links and the self-loop get uniform random weights, rescaled so the row
    sums to ``1 - w_i`` with ``w_i`` drawn from ``truth_range``.
    """
    rng = np.random.default_rng(rng)
    if n < 1:
        raise ValueError("n must be positive")
    k = min(groups, n)
    labels = np.concatenate([np.arange(k), rng.integers(0, k, size=n - k)])
    rng.shuffle(labels)
    mask = rng.random((n, n)) < density
    np.fill_diagonal(mask, True)
    raw = rng.random((n, n)) * mask
    w = rng.uniform(*truth_range, size=n)
    W = raw / raw.sum(axis=1, keepdims=True) * (1 - w)[:, None]
    return InteractionNetwork(W, w), GroupAssignment(tuple(int(g) for g in labels))
