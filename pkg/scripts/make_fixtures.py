"""Regenerate the JSON fixtures in fixtures/ from the network generators."""
from pathlib import Path

import numpy as np

from signed_opinion import (
    GroupAssignment,
    HomogeneousSociety,
    IdentityParams,
    NetworkProblem,
    OpinionExchangeNetwork,
    complete_network,
    homogeneous_network,
    random_balanced_network,
    ring_network,
    write_network,
)

OUT = Path(__file__).resolve().parent.parent / "fixtures"
PARAMS = IdentityParams(1.0, -1.0)


def problem(pair, xi=None):
    net, groups = pair
    return NetworkProblem(groups, 1.0, net, PARAMS, xi)


def main():
    OUT.mkdir(exist_ok=True)
    write_network(problem(complete_network((1, 3))), OUT / "fig1.json")
    write_network(problem(ring_network("AAABBB")), OUT / "fig2.json")
    write_network(problem(complete_network((2, 2))), OUT / "fig3.json")
    write_network(problem(complete_network((1, 3), truth_weights=[0.5, 0.2, 0.2, 0.2])), OUT / "table4.json")
    t5 = HomogeneousSociety(0.25, 0.2, 0.2, h_B=0.5)
    write_network(problem(homogeneous_network(t5, 4)), OUT / "table5.json")
    write_network(problem(complete_network((2, 2)), xi=1.5), OUT / "bias_example.json")
    write_network(problem(complete_network((4,))), OUT / "all_positive.json")
    write_network(problem(random_balanced_network(10, rng=20261014)), OUT / "random_seed.json")

    # triangle with exactly one negative edge: not representable by two groups
    q = 0.25
    Wt = np.array([[q, q, -q], [q, q, q], [-q, q, q]])
    signed = OpinionExchangeNetwork(Wt, np.full(3, q))
    write_network(NetworkProblem(GroupAssignment((0, 0, 0)), 1.0, signed=signed), OUT / "triangle_unbalanced.json")


if __name__ == "__main__":
    main()
