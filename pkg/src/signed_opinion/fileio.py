"""JSON network documents and CSV/JSON exports.

A network document looks like::

    {"n": 4, "groups": [0, 1, 1, 1],
     "W": [[0.2, 0.2, 0.2, 0.2], ...], "w": [0.2, 0.2, 0.2, 0.2],
     "alpha": 1.0, "beta": -1.0, "theta_star": 1.0, "xi": 1.5}

``xi`` is optional. A document may instead carry a signed matrix ``"Wt"``
and truth vector ``"wt"`` directly (heterogeneous intensities, k-group or
unbalanced patterns); ``W``/``w``/``alpha``/``beta`` are then optional.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .signed_core import (
    GroupAssignment,
    IdentityParams,
    InteractionNetwork,
    InvalidNetworkError,
    OpinionExchangeNetwork,
    build_opinion_exchange,
    require_valid,
)


class NetworkFormatError(InvalidNetworkError):
    """Malformed network document."""


@dataclass(frozen=True)
class NetworkProblem:
    groups: GroupAssignment | None
    theta_star: float
    net: InteractionNetwork | None = None
    params: IdentityParams | None = None
    xi: float | None = None
    signed: OpinionExchangeNetwork | None = None

    def exchange(self) -> OpinionExchangeNetwork:
        if self.signed is not None:
            return self.signed
        return build_opinion_exchange(self.net, self.groups, self.params)

    @property
    def n(self) -> int:
        return self.signed.n if self.signed is not None else self.net.n


def _matrix(doc: dict, key: str, n: int) -> np.ndarray:
    try:
        arr = np.array(doc[key], dtype=float)
    except (TypeError, ValueError) as exc:
        raise NetworkFormatError(f"field {key!r} is not numeric: {exc}") from exc
    expected = (n, n) if key in ("W", "Wt") else (n,)
    if arr.shape != expected:
        raise NetworkFormatError(f"field {key!r} has shape {arr.shape}, expected {expected}")
    return arr


def problem_from_dict(doc: dict) -> NetworkProblem:
    if not isinstance(doc, dict):
        raise NetworkFormatError("network document must be a JSON object")
    signed_mode = "Wt" in doc
    required = ["n", "theta_star"] + (["wt"] if signed_mode else ["groups", "W", "w", "alpha", "beta"])
    missing = [k for k in required if k not in doc]
    if missing:
        raise NetworkFormatError(f"missing fields: {missing}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise NetworkFormatError(f"'n' must be a positive integer, got {n!r}")
    try:
        theta = float(doc["theta_star"])
        xi = None if doc.get("xi") is None else float(doc["xi"])
    except (TypeError, ValueError) as exc:
        raise NetworkFormatError(f"theta_star/xi must be numbers: {exc}") from exc

    groups = None
    if doc.get("groups") is not None:
        labels = doc["groups"]
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(g, int) for g in labels):
            raise NetworkFormatError(f"'groups' must be a list of {n} integers")
        try:
            groups = GroupAssignment(tuple(labels))
        except ValueError as exc:
            raise NetworkFormatError(str(exc)) from exc

    net = params = None
    if "W" in doc:
        net = InteractionNetwork(_matrix(doc, "W", n), _matrix(doc, "w", n))
        require_valid(net)
    if "alpha" in doc:
        try:
            params = IdentityParams(float(doc["alpha"]), float(doc["beta"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise NetworkFormatError(f"invalid identity parameters: {exc}") from exc

    signed = None
    if signed_mode:
        signed = OpinionExchangeNetwork(_matrix(doc, "Wt", n), _matrix(doc, "wt", n), groups=groups, source=net)
    else:
        try:
            build_opinion_exchange(net, groups, params)
        except ValueError as exc:
            raise NetworkFormatError(str(exc)) from exc
    return NetworkProblem(groups, theta, net, params, xi, signed)


def problem_to_dict(p: NetworkProblem) -> dict:
    doc: dict = {"n": p.n}
    if p.groups is not None:
        doc["groups"] = list(p.groups.labels)
    if p.net is not None:
        doc["W"] = p.net.W.tolist()
        doc["w"] = p.net.w.tolist()
    if p.params is not None:
        doc["alpha"] = p.params.alpha
        doc["beta"] = p.params.beta
    if p.signed is not None:
        doc["Wt"] = p.signed.Wt.tolist()
        doc["wt"] = p.signed.wt.tolist()
    doc["theta_star"] = p.theta_star
    if p.xi is not None:
        doc["xi"] = p.xi
    return doc


def read_network(path) -> NetworkProblem:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(f"{path}: not valid JSON: {exc}") from exc
    return problem_from_dict(doc)


def write_network(p: NetworkProblem, path) -> None:
    # json writes floats with repr, the shortest string that round-trips exactly
    doc = problem_to_dict(p)
    body = ",\n".join(f" {json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items())
    Path(path).write_text("{\n" + body + "\n}\n", encoding="utf-8")


def fmt(x: float) -> str:
    return f"{x:.17g}"


def trajectory_csv(states: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    n = states.shape[1]
    writer.writerow(["step"] + [f"agent_{i}" for i in range(n)])
    for t, row in enumerate(states):
        writer.writerow([t] + [fmt(v) for v in row])
    return buf.getvalue()


def read_trajectory_csv(text: str) -> np.ndarray:
    rows = list(csv.reader(io.StringIO(text)))
    return np.array([[float(v) for v in r[1:]] for r in rows[1:]])


def _vec(a) -> list[float] | None:
    return None if a is None else [float(v) for v in a]


def result_to_dict(result, b_tilde_B=None, xi=None) -> dict:
    doc = {
        "mu": _vec(result.mu),
        "b": _vec(result.b),
        "b_tilde": _vec(result.b_tilde),
        "residual": result.residual,
        "nash_residual": result.nash_residual,
        "iterations": result.iterations,
        "spectral_radius": result.spectral_radius,
    }
    if result.mu_exact is not None:
        doc["mu_exact"] = [str(v) for v in result.mu_exact]
        doc["b_tilde_exact"] = [str(v) for v in result.b_tilde_exact]
        if result.b_exact is not None:
            doc["b_exact"] = [str(v) for v in result.b_exact]
    if xi is not None:
        doc["xi"] = xi
        doc["b_tilde_B"] = _vec(b_tilde_B)
    return doc
