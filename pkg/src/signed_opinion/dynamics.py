"""Opinion updating, long-run opinions and centralities for the signed model.

The update is ``mu_t = Wt @ mu_{t-1} + wt * theta_star``. When the spectral
radius of ``|Wt|`` is below one the iteration contracts to the unique fixed
point ``(I - Wt)^{-1} wt * theta_star``, which is also the Nash equilibrium of
the quadratic opinion game.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import EXACT_MAX_N, identity_minus, solve_rational, to_fraction
from .signed_core import GroupAssignment, IdentityParams, InteractionNetwork, OpinionExchangeNetwork

ITERATION_TOL = 1e-12
RESIDUAL_TOL = 1e-10
NASH_TOL = 1e-10


class NumericalError(ArithmeticError):
    pass


class SingularSystemError(NumericalError):
    """``I - Wt`` (or ``I - W``) could not be inverted."""

    def __init__(self, message: str, spectral_radius: float | None = None):
        super().__init__(message)
        self.spectral_radius = spectral_radius


class PowerIterationError(NumericalError):
    def __init__(self, message: str, estimates: tuple[float, float]):
        super().__init__(message)
        self.estimates = estimates


class DegenerateAgentWarning(RuntimeWarning):
    """Agent has no links and no truth weight, so every opinion is a best reply."""


def _opinions(mu, n: int) -> np.ndarray:
    mu = np.asarray(mu, dtype=float)
    if mu.shape != (n,):
        raise ValueError(f"opinion vector must have length {n}, got shape {mu.shape}")
    if not np.all(np.isfinite(mu)):
        raise ValueError("opinion vector has non-finite entries")
    return mu


def step(x: OpinionExchangeNetwork, mu, theta_star: float) -> np.ndarray:
    mu = _opinions(mu, x.n)
    return x.Wt @ mu + x.wt * theta_star


@dataclass(frozen=True)
class Trajectory:
    states: np.ndarray  # (steps + 1, n); row 0 is mu0
    converged: bool
    final_change: float

    @property
    def iterations(self) -> int:
        return self.states.shape[0] - 1

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def simulate(
    x: OpinionExchangeNetwork,
    mu0,
    theta_star: float,
    max_steps: int = 10_000,
    tol: float = ITERATION_TOL,
) -> Trajectory:
    """Iterate :func:`step` until the sup-norm change drops below ``tol``.

    Non-convergence is reported through ``Trajectory.converged``; iteration
    also stops early if the opinions overflow.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_steps < 0:
        raise ValueError("max_steps must be nonnegative")
    mu = _opinions(mu0, x.n)
    states = [mu]
    change = float("inf")
    converged = False
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(max_steps):
            nxt = x.Wt @ mu + x.wt * theta_star
            states.append(nxt)
            if not np.all(np.isfinite(nxt)):
                change = float("inf")
                break
            change = float(np.max(np.abs(nxt - mu))) if x.n else 0.0
            mu = nxt
            if change < tol:
                converged = True
                break
    return Trajectory(np.array(states).reshape(len(states), x.n), converged, change)


def _strong_components(A: np.ndarray) -> list[list[int]]:
    """Strongly connected components of the support of ``A`` (iterative Tarjan)."""
    n = A.shape[0]
    succ = [np.flatnonzero(A[i]).tolist() for i in range(n)]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            for j in range(pos, len(succ[v])):
                u = succ[v][j]
                if index[u] < 0:
                    work.append((v, j + 1))
                    work.append((u, 0))
                    break
                if on_stack[u]:
                    low[v] = min(low[v], index[u])
            else:
                if low[v] == index[v]:
                    comp = []
                    while True:
                        u = stack.pop()
                        on_stack[u] = False
                        comp.append(u)
                        if u == v:
                            break
                    comps.append(comp)
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
    return comps


def _perron_irreducible(A: np.ndarray, tol: float, max_iter: int) -> float:
    # A + cI is primitive for any c > 0, so the Collatz-Wielandt bracket
    # closes; c on the scale of rho keeps the contraction ratio away from 1
    n = A.shape[0]
    c = float(A.sum(axis=1).max())
    shifted = A + c * np.eye(n)
    x = np.ones(n)
    prev = est = 0.0
    for _ in range(max_iter):
        y = shifted @ x
        ratios = y / x
        lo, hi = float(ratios.min()), float(ratios.max())
        prev, est = est, float(np.max(y))  # ||x||_inf == 1 throughout
        if hi - lo < tol:
            return max((lo + hi) / 2 - c, 0.0)
        x = y / est
    raise PowerIterationError(
        f"power iteration did not converge in {max_iter} iterations", (prev - c, est - c)
    )


def spectral_radius(m, tol: float = 1e-10, max_iter: int = 10_000) -> float:
    """Perron root of ``|m|`` by power iteration.

    ``rho(|m|)`` is the largest Perron root over the strongly connected
    blocks of the support, so each block is iterated on its own. Within a
    block the iteration runs on ``|m| + cI`` so that periodic patterns
    (bipartite rings, permutations) converge, and stops once the
    Collatz-Wielandt bracket ``min_i (Ax)_i/x_i <= rho <= max_i (Ax)_i/x_i``
    is narrower than ``tol``. ``rho(|m|)`` bounds ``rho(m)`` from above.
    """
    A = np.abs(np.asarray(m, dtype=float))
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"spectral radius needs a square matrix, got shape {A.shape}")
    best = 0.0
    for comp in _strong_components(A):
        if len(comp) == 1:
            best = max(best, float(A[comp[0], comp[0]]))
            continue
        best = max(best, _perron_irreducible(A[np.ix_(comp, comp)], tol, max_iter))
    return best


def _radius_estimate(m) -> float:
    try:
        return spectral_radius(m)
    except PowerIterationError as exc:
        return exc.estimates[-1]


def resolvent_solve(M, rhs, radius_of=None) -> np.ndarray:
    """Solve ``(I - M) x = rhs``; ``radius_of`` is the matrix quoted in singularity errors."""
    M = np.asarray(M, dtype=float)
    radius_of = M if radius_of is None else radius_of
    A = np.eye(M.shape[0]) - M
    try:
        sol = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:
        rho = _radius_estimate(radius_of)
        raise SingularSystemError(f"I - W is singular (spectral radius ~ {rho:.6g}): {exc}", rho) from exc
    if not np.all(np.isfinite(sol)):
        rho = _radius_estimate(radius_of)
        raise SingularSystemError(f"I - W solve produced non-finite values (spectral radius ~ {rho:.6g})", rho)
    return sol


def _solve_exact(M, rhs) -> list[Fraction]:
    try:
        return solve_rational(identity_minus(M), rhs)
    except ZeroDivisionError as exc:
        rho = _radius_estimate(M)
        raise SingularSystemError(f"I - W is singular (spectral radius ~ {rho:.6g})", rho) from exc


def bonacich(net: InteractionNetwork, exact: bool = False):
    """Classical Bonacich centrality ``(I - W)^{-1} 1`` of the unsigned network."""
    if exact:
        return tuple(_solve_exact(net.W, [1] * net.n))
    return resolvent_solve(net.W, np.ones(net.n), net.W)


def weighted_bonacich(x: OpinionExchangeNetwork, exact: bool = False):
    """Weighted Bonacich centrality ``(I - Wt)^{-1} wt``; long-run opinions per unit of truth."""
    if exact:
        return tuple(_solve_exact(x.Wt, x.wt))
    return resolvent_solve(x.Wt, x.wt)


@dataclass(frozen=True)
class SteadyStateResult:
    mu: np.ndarray
    b: np.ndarray | None
    b_tilde: np.ndarray
    iterations: int
    residual: float
    nash_residual: float
    spectral_radius: float
    mu_exact: tuple[Fraction, ...] | None = None
    b_exact: tuple[Fraction, ...] | None = None
    b_tilde_exact: tuple[Fraction, ...] | None = None


def fixed_point_residual(x: OpinionExchangeNetwork, mu, theta_star: float) -> float:
    mu = np.asarray(mu, dtype=float)
    if x.n == 0:
        return 0.0
    return float(np.max(np.abs(mu - x.Wt @ mu - x.wt * theta_star)))


def steady_state_direct(
    x: OpinionExchangeNetwork,
    theta_star: float,
    exact: bool = False,
    residual_tol: float = RESIDUAL_TOL,
) -> SteadyStateResult:
    """Long-run opinions by a dense LU solve of ``(I - Wt) mu = wt * theta_star``.

    With ``exact=True`` (n <= 32) the centralities are also solved over the
    rationals and the float fields are the rounded exact values.
    """
    rho = _radius_estimate(x.Wt)
    mu_exact = b_exact = bt_exact = None
    if exact:
        if x.n > EXACT_MAX_N:
            raise ValueError(f"exact mode supports n <= {EXACT_MAX_N}, got {x.n}")
        bt_exact = weighted_bonacich(x, exact=True)
        theta = to_fraction(theta_star)
        mu_exact = tuple(v * theta for v in bt_exact)
        b_tilde = np.array([float(v) for v in bt_exact])
        mu = np.array([float(v) for v in mu_exact])
    else:
        b_tilde = weighted_bonacich(x)
        mu = resolvent_solve(x.Wt, x.wt * theta_star)

    b = None
    if x.source is not None:
        try:
            if exact:
                b_exact = bonacich(x.source, exact=True)
                b = np.array([float(v) for v in b_exact])
            else:
                b = bonacich(x.source)
        except SingularSystemError:
            b = None

    residual = fixed_point_residual(x, mu, theta_star)
    scale = max(1.0, abs(theta_star), float(np.max(np.abs(mu))) if x.n else 0.0)
    if residual > residual_tol * scale:
        raise SingularSystemError(
            f"direct solve residual {residual:.3g} exceeds {residual_tol:g} (spectral radius ~ {rho:.6g})", rho
        )
    nash = verify_nash(mu, x, theta_star).max_deviation
    for arr in (mu, b_tilde) + ((b,) if b is not None else ()):
        arr.setflags(write=False)
    return SteadyStateResult(mu, b, b_tilde, 0, residual, nash, rho, mu_exact, b_exact, bt_exact)


def steady_state(x: OpinionExchangeNetwork, theta_star: float, **kw) -> np.ndarray:
    return steady_state_direct(x, theta_star, **kw).mu


def utility(
    i: int,
    mu,
    net: InteractionNetwork,
    groups: GroupAssignment,
    params: IdentityParams,
    theta_star: float,
) -> float:
    """Agent ``i``'s payoff: in-group disagreement cost, out-group term, distance from truth.

    With ``beta < 0`` the out-group term rewards distance.
    """
    n = net.n
    if not 0 <= i < n:
        raise IndexError(f"agent {i} out of range for {n} agents")
    mu = _opinions(mu, n)
    same = np.asarray(groups.labels) == groups.labels[i]
    sq = (mu[i] - mu) ** 2
    in_group = float(np.sum(net.W[i, same] * sq[same]))
    out_group = float(np.sum(net.W[i, ~same] * sq[~same]))
    truth = net.w[i] * (mu[i] - theta_star) ** 2
    return -params.alpha * in_group - params.beta * out_group - params.truth_scale * truth


def best_response(i: int, mu, x: OpinionExchangeNetwork, theta_star: float) -> float:
    n = x.n
    if not 0 <= i < n:
        raise IndexError(f"agent {i} out of range for {n} agents")
    mu = _opinions(mu, n)
    if not x.Wt[i].any() and x.wt[i] == 0:
        warnings.warn(f"agent {i} is degenerate; keeping current opinion", DegenerateAgentWarning, stacklevel=2)
        return float(mu[i])
    return float(x.Wt[i] @ mu + x.wt[i] * theta_star)


@dataclass(frozen=True)
class NashReport:
    deviations: np.ndarray
    max_deviation: float
    worst_agent: int
    tol: float

    @property
    def is_nash(self) -> bool:
        return self.max_deviation <= self.tol


def verify_nash(mu, x: OpinionExchangeNetwork, theta_star: float, tol: float = NASH_TOL) -> NashReport:
    """Per-agent gap between current opinion and best reply."""
    mu = _opinions(mu, x.n)
    reply = x.Wt @ mu + x.wt * theta_star
    degenerate = ~x.Wt.any(axis=1) & (x.wt == 0)
    reply[degenerate] = mu[degenerate]
    dev = np.abs(mu - reply)
    worst = int(np.argmax(dev)) if x.n else -1
    return NashReport(dev, float(dev.max()) if x.n else 0.0, worst, tol)
