"""Representative-agent model for two homogeneous groups (alpha = -beta = 1).

Group A has population share ``eta``; each member puts weight ``w_A`` on the
truth and meets own-group members with probability
``rho_A = h_A + (1 - h_A) * eta`` (inbreeding homophily ``h_A``), and
symmetrically for B. Every member of a group then holds the same opinion and
the dynamics reduce to a 2x2 affine map.
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace

import numpy as np


class NoAnchorError(ArithmeticError):
    """Neither group listens to the truth, so the long-run opinion is undetermined."""


@dataclass(frozen=True)
class HomogeneousSociety:
    eta: float
    w_A: float
    w_B: float
    h_A: float = 0.0
    h_B: float = 0.0
    theta_star: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.eta < 1.0:
            raise ValueError(f"eta must lie in (0, 1), got {self.eta}")
        for name in ("w_A", "w_B", "h_A", "h_B"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    @property
    def rho_A(self) -> float:
        return self.h_A + (1.0 - self.h_A) * self.eta

    @property
    def rho_B(self) -> float:
        return self.h_B + (1.0 - self.h_B) * (1.0 - self.eta)

    def swapped(self) -> "HomogeneousSociety":
        """Same society with the roles of A and B exchanged."""
        return replace(self, eta=1.0 - self.eta, w_A=self.w_B, w_B=self.w_A, h_A=self.h_B, h_B=self.h_A)

    def transition(self) -> np.ndarray:
        """Signed 2x2 matrix acting on (mu_A, mu_B)."""
        rA, rB = self.rho_A, self.rho_B
        return np.array(
            [
                [rA * (1 - self.w_A), -(1 - rA) * (1 - self.w_A)],
                [-(1 - rB) * (1 - self.w_B), rB * (1 - self.w_B)],
            ]
        )


def steady_state_no_homophily(s: HomogeneousSociety) -> tuple[float, float]:
    if s.h_A != 0 or s.h_B != 0:
        raise ValueError("steady_state_no_homophily requires h_A = h_B = 0")
    eta, wA, wB = s.eta, s.w_A, s.w_B
    den = 1 - eta * (1 - wA) - (1 - eta) * (1 - wB)
    if den == 0:
        raise NoAnchorError("no anchor to truth: w_A = w_B = 0")
    cross = wA + wB - 2 * wA * wB
    mu_A = (wA - (1 - eta) * cross) / den * s.theta_star
    mu_B = (wB - eta * cross) / den * s.theta_star
    return mu_A, mu_B


def steady_state_homophily(s: HomogeneousSociety) -> tuple[float, float]:
    """Solve ``(I - T) mu = (w_A, w_B) * theta_star`` for the representative opinions."""
    A = np.eye(2) - s.transition()
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    if det == 0:
        raise NoAnchorError("no anchor to truth: representative system is singular")
    rhs = np.array([s.w_A, s.w_B]) * s.theta_star
    mu = np.linalg.solve(A, rhs)
    return float(mu[0]), float(mu[1])


def reduced_step(s: HomogeneousSociety, mu_pair) -> tuple[float, float]:
    mu = s.transition() @ np.asarray(mu_pair, dtype=float) + np.array([s.w_A, s.w_B]) * s.theta_star
    return float(mu[0]), float(mu[1])


PARAMS = ("eta", "w_A", "w_B", "h_A", "h_B")


@dataclass(frozen=True)
class Partials:
    """Derivatives of the representative opinions; each scales linearly with ``theta_star``."""

    dA_deta: float
    dA_dwA: float
    dA_dwB: float
    dA_dhA: float
    dA_dhB: float
    dB_deta: float
    dB_dwA: float
    dB_dwB: float
    dB_dhA: float
    dB_dhB: float

    def for_param(self, param: str) -> tuple[float, float]:
        key = param.replace("_", "")
        return getattr(self, f"dA_d{key}"), getattr(self, f"dB_d{key}")

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _group_A_partials(s: HomogeneousSociety) -> dict[str, float]:
    eta, wA, wB, hA, hB = s.eta, s.w_A, s.w_B, s.h_A, s.h_B
    rA, rB = s.rho_A, s.rho_B
    delta = wA * (1 - rB) + wB * (1 - rA) - wA * wB * (1 - rA - rB)
    d2 = delta**2
    reach_B = wB + (1 - hB) * (1 - wB) * eta
    t = s.theta_star
    return {
        "eta": t * 2 * (1 - hA) * (1 - wA) * wA * (1 - hB * (1 - wB)) * wB / d2,
        "h_A": t * 2 * (1 - wA) * wA * wB * (1 - eta) * reach_B / d2,
        "h_B": -t * 2 * (1 - hA) * (1 - wA) * (1 - wB) * wA * wB * (1 - eta) * eta / d2,
        "w_A": t * 2 * (1 - hA) * wB * (1 - eta) * reach_B / d2,
        "w_B": -t * 2 * (1 - hA) * (1 - hB) * (1 - wA) * wA * (1 - eta) * eta / d2,
    }


def _check_interior(s: HomogeneousSociety) -> None:
    # h = 0 is admitted: the no-homophily society is the main case of interest
    checks = {
        "w_A": 0 < s.w_A < 1,
        "w_B": 0 < s.w_B < 1,
        "h_A": 0 <= s.h_A < 1,
        "h_B": 0 <= s.h_B < 1,
    }
    bad = [k for k, ok in checks.items() if not ok]
    if bad:
        raise ValueError(f"comparative statics need interior parameters; boundary values for {bad}")


def comparative_statics(s: HomogeneousSociety) -> Partials:
    """Analytic partials of ``mu_A`` and ``mu_B``; B's follow from A's by swapping the groups."""
    _check_interior(s)
    a = _group_A_partials(s)
    b = _group_A_partials(s.swapped())
    return Partials(
        dA_deta=a["eta"],
        dA_dwA=a["w_A"],
        dA_dwB=a["w_B"],
        dA_dhA=a["h_A"],
        dA_dhB=a["h_B"],
        # eta -> 1 - eta under the swap flips the sign of the eta partial
        dB_deta=-b["eta"],
        dB_dwA=b["w_B"],
        dB_dwB=b["w_A"],
        dB_dhA=b["h_B"],
        dB_dhB=b["h_A"],
    )
