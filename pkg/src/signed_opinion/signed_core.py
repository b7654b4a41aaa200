"""Agents, groups, interaction networks and their signed opinion-exchange form.

An :class:`InteractionNetwork` is the physical network: a nonnegative
attention matrix ``W`` and per-agent truth weights ``w`` whose rows satisfy
``sum_j W[i, j] + w[i] == 1``. Self-loops ``W[i, i]`` are ordinary in-group
weights.

An :class:`OpinionExchangeNetwork` is the signed matrix ``Wt`` and truth
vector ``wt`` that the solvers consume. :func:`build_opinion_exchange` derives
one from an interaction network, a two-group partition and the identity
parameters; heterogeneous or k-group patterns can be supplied directly.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

ROW_SUM_TOL = 1e-12


class InvalidNetworkError(ValueError):
    """Input violates a structural invariant (shape, sign, row sums)."""

    def __init__(self, message: str, report: "ValidationReport | None" = None):
        super().__init__(message)
        self.report = report


def _frozen_array(a, ndim: int, name: str) -> np.ndarray:
    arr = np.array(a, dtype=float)
    if arr.ndim != ndim:
        raise InvalidNetworkError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GroupAssignment:
    """Partition of agents into groups labelled ``0..k-1``."""

    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(g) for g in self.labels)
        if not labels:
            raise ValueError("group assignment needs at least one agent")
        k = max(labels) + 1
        if min(labels) < 0 or len(set(labels)) != k:
            raise ValueError(f"group labels must cover 0..{k - 1} with no gaps, got {sorted(set(labels))}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "GroupAssignment":
        """Consecutive blocks: group 0 takes the first ``sizes[0]`` agents, etc."""
        if any(s < 1 for s in sizes):
            raise ValueError(f"group sizes must be >= 1, got {tuple(sizes)}")
        return cls(tuple(g for g, s in enumerate(sizes) for _ in range(s)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def k(self) -> int:
        return max(self.labels) + 1

    @property
    def group_sizes(self) -> tuple[int, ...]:
        return tuple(self.labels.count(g) for g in range(self.k))

    def members(self, group: int) -> tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.labels) if g == group)

    def mask(self, group: int) -> np.ndarray:
        return np.array([g == group for g in self.labels])

    def clusters(self) -> list[tuple[int, ...]]:
        return [self.members(g) for g in range(self.k)]


@dataclass(frozen=True)
class InteractionNetwork:
    """Nonnegative attention matrix ``W`` and truth weights ``w``.

    Construction only checks shapes; use :func:`validate` for the row-sum and
    sign invariants.
    """

    W: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        W = _frozen_array(self.W, 2, "W")
        w = _frozen_array(self.w, 1, "w")
        if W.shape != (w.size, w.size):
            raise InvalidNetworkError(f"W has shape {W.shape} but w has length {w.size}")
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.size

    def normalized(self) -> "InteractionNetwork":
        """Rescale each row of ``W`` together with ``w[i]`` so the row sums to 1."""
        totals = self.W.sum(axis=1) + self.w
        if np.any(totals <= 0):
            bad = np.flatnonzero(totals <= 0).tolist()
            raise InvalidNetworkError(f"cannot normalize rows with nonpositive total: {bad}")
        return InteractionNetwork(self.W / totals[:, None], self.w / totals)


@dataclass(frozen=True)
class IdentityParams:
    """In-group identity ``alpha`` in [0, 1] and out-group conflict ``beta`` in [-1, 0]."""

    alpha: float = 1.0
    beta: float = -1.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not -1.0 <= self.beta <= 0.0:
            raise ValueError(f"beta must lie in [-1, 0], got {self.beta}")
        if not 0.0 <= self.truth_scale <= 1.0:
            raise ValueError(f"1 - alpha - beta must lie in [0, 1], got {self.truth_scale}")

    @property
    def truth_scale(self) -> float:
        return 1.0 - self.alpha - self.beta


@dataclass(frozen=True)
class OpinionExchangeNetwork:
    """Signed opinion-exchange matrix ``Wt`` and truth weights ``wt``.

    Every row must satisfy ``sum_j |Wt[i, j]| + wt[i] <= 1`` (up to
    ``ROW_SUM_TOL``). ``source`` and ``groups`` are kept when the network was
    derived by :func:`build_opinion_exchange`.
    """

    Wt: np.ndarray
    wt: np.ndarray
    groups: GroupAssignment | None = None
    source: InteractionNetwork | None = field(default=None, compare=False)

    def __post_init__(self):
        Wt = _frozen_array(self.Wt, 2, "Wt")
        wt = _frozen_array(self.wt, 1, "wt")
        if Wt.shape != (wt.size, wt.size):
            raise InvalidNetworkError(f"Wt has shape {Wt.shape} but wt has length {wt.size}")
        if not (np.all(np.isfinite(Wt)) and np.all(np.isfinite(wt))):
            raise InvalidNetworkError("Wt and wt must be finite")
        if np.any(np.abs(Wt) > 1.0) or np.any(wt < 0) or np.any(wt > 1.0):
            raise InvalidNetworkError("Wt entries must lie in [-1, 1] and wt in [0, 1]")
        totals = np.abs(Wt).sum(axis=1) + wt
        over = np.flatnonzero(totals > 1.0 + ROW_SUM_TOL)
        if over.size:
            raise InvalidNetworkError(
                f"rows {over.tolist()} have sum |Wt| + wt > 1 (max {totals.max():.17g})"
            )
        if self.groups is not None and self.groups.n != wt.size:
            raise InvalidNetworkError(f"groups cover {self.groups.n} agents, network has {wt.size}")
        object.__setattr__(self, "Wt", Wt)
        object.__setattr__(self, "wt", wt)

    @property
    def n(self) -> int:
        return self.wt.size


@dataclass(frozen=True)
class ValidationReport:
    row_deviation: np.ndarray
    bad_rows: tuple[int, ...]
    negative_entries: tuple[tuple[int, int], ...]
    nonfinite: bool
    shape_error: str | None = None

    @property
    def ok(self) -> bool:
        return (
            self.shape_error is None
            and not self.nonfinite
            and not self.bad_rows
            and not self.negative_entries
        )

    def describe(self) -> str:
        if self.ok:
            return "valid"
        parts = []
        if self.shape_error:
            parts.append(self.shape_error)
        if self.nonfinite:
            parts.append("non-finite entries present")
        if self.negative_entries:
            parts.append(f"negative entries at {list(self.negative_entries)}")
        for i in self.bad_rows:
            parts.append(f"row {i}: sum_j W[i,j] + w[i] deviates from 1 by {self.row_deviation[i]:.3g}")
        return "; ".join(parts)


def validate(net: InteractionNetwork, tol: float = ROW_SUM_TOL) -> ValidationReport:
    """Check nonnegativity, finiteness and ``sum_j W[i,j] + w[i] == 1`` per row."""
    W, w = net.W, net.w
    nonfinite = not (np.all(np.isfinite(W)) and np.all(np.isfinite(w)))
    deviation = W.sum(axis=1) + w - 1.0
    bad_rows = tuple(int(i) for i in np.flatnonzero(~(np.abs(deviation) <= tol)))
    neg = [(int(i), int(j)) for i, j in zip(*np.nonzero(W < 0))]
    neg += [(int(i), -1) for i in np.flatnonzero(w < 0)]
    shape_error = None
    if np.any(W > 1) or np.any(w > 1):
        shape_error = "entries above 1"
    return ValidationReport(deviation, bad_rows, tuple(neg), nonfinite, shape_error)


def require_valid(net: InteractionNetwork, tol: float = ROW_SUM_TOL) -> None:
    report = validate(net, tol)
    if not report.ok:
        raise InvalidNetworkError(f"invalid interaction network: {report.describe()}", report)


def build_opinion_exchange(
    net: InteractionNetwork, groups: GroupAssignment, params: IdentityParams
) -> OpinionExchangeNetwork:
    """Scale in-group links by ``alpha``, cross-group links by ``beta`` and truth by ``1 - alpha - beta``.

    A single group is accepted (no cross-group links exist); more than two
    groups are not, since ``beta`` is only defined between a pair.
    """
    require_valid(net)
    if groups.n != net.n:
        raise InvalidNetworkError(f"groups cover {groups.n} agents, network has {net.n}")
    if groups.k > 2:
        raise ValueError(f"two-group constructor got {groups.k} groups; supply Wt directly")
    labels = np.asarray(groups.labels)
    same = labels[:, None] == labels[None, :]
    Wt = np.where(same, params.alpha, params.beta) * net.W
    wt = params.truth_scale * net.w
    # -0.0 from beta * 0 would otherwise print as a negative entry
    Wt = Wt + 0.0
    return OpinionExchangeNetwork(Wt, wt, groups=groups, source=net)


@dataclass(frozen=True)
class BalanceReport:
    strongly_balanced: bool
    weakly_balanced: bool
    recovered_partition: GroupAssignment | None
    witness: tuple[int, ...] | None
    weak_witness: tuple[int, ...] | None

    def describe(self) -> str:
        if self.strongly_balanced:
            head = "strongly balanced"
        elif self.weakly_balanced:
            head = "weakly balanced (not strongly)"
        else:
            head = "unbalanced"
        if self.recovered_partition is not None:
            clusters = ",".join("{" + ",".join(map(str, c)) + "}" for c in self.recovered_partition.clusters())
            return f"{head}, clusters {clusters}"
        cycle = self.weak_witness or self.witness
        return f"{head}, witness cycle {list(cycle)}"


def _signed_edges(Wt: np.ndarray) -> list[tuple[int, int, int]]:
    """Undirected signed edges of the support graph; a pair may appear twice with opposite signs."""
    edges = []
    n = Wt.shape[0]
    for i in range(n):
        if Wt[i, i] < 0:
            edges.append((i, i, -1))
        for j in range(i + 1, n):
            signs = {int(np.sign(v)) for v in (Wt[i, j], Wt[j, i]) if v != 0}
            edges.extend((i, j, s) for s in sorted(signs))
    return edges


def _tree_cycle(parent: list[int], u: int, v: int) -> tuple[int, ...]:
    """Cycle formed by the BFS-tree paths u->lca, lca->v and the closing edge v-u."""
    if u == v:
        return (u,)
    up, anc = [u], {u: 0}
    while parent[up[-1]] != -1:
        up.append(parent[up[-1]])
        anc[up[-1]] = len(up) - 1
    down = [v]
    while down[-1] not in anc:
        down.append(parent[down[-1]])
    lca = down[-1]
    return tuple(up[: anc[lca] + 1] + down[-2::-1])


def _canonical_labels(colors: list[int]) -> GroupAssignment:
    mapping: dict[int, int] = {}
    for c in colors:
        mapping.setdefault(c, len(mapping))
    return GroupAssignment(tuple(mapping[c] for c in colors))


def check_structural_balance(x: OpinionExchangeNetwork | np.ndarray) -> BalanceReport:
    """Decide strong (two-clique) and weak (k-clique) balance on the support graph of ``Wt``.

    Strong balance is a parity 2-colouring of the sign graph. Weak balance
    holds iff no negative edge joins two agents of the same positive-edge
    component. Witnesses are simple cycles given as agent-index tuples.
    """
    Wt = x.Wt if isinstance(x, OpinionExchangeNetwork) else np.asarray(x, dtype=float)
    n = Wt.shape[0]
    edges = _signed_edges(Wt)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, j, s in edges:
        adj[i].append((j, s))
        if i != j:
            adj[j].append((i, s))

    # strong balance: color[j] = color[i] xor (edge negative)
    color = [-1] * n
    parent = [-1] * n
    witness = None
    for root in range(n):
        if color[root] != -1 or witness is not None:
            continue
        color[root] = 0
        queue = deque([root])
        while queue and witness is None:
            u = queue.popleft()
            for v, s in adj[u]:
                want = color[u] ^ (s < 0)
                if color[v] == -1:
                    color[v], parent[v] = want, u
                    queue.append(v)
                elif color[v] != want:
                    witness = _tree_cycle(parent, u, v)
                    break

    # weak balance: components of the positive subgraph
    comp = [-1] * n
    pparent = [-1] * n
    for root in range(n):
        if comp[root] != -1:
            continue
        comp[root] = root
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, s in adj[u]:
                if s > 0 and comp[v] == -1:
                    comp[v], pparent[v] = root, u
                    queue.append(v)
    weak_witness = None
    for i, j, s in edges:
        if s < 0 and comp[i] == comp[j]:
            weak_witness = _tree_cycle(pparent, i, j)
            break

    strong = witness is None
    weak = weak_witness is None
    if strong:
        partition = _canonical_labels(color)
    elif weak:
        partition = _canonical_labels(comp)
    else:
        partition = None
    return BalanceReport(strong, weak, partition, witness, weak_witness)
