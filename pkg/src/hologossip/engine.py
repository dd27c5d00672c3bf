"""Simulation of weighted gossip schedules.

A schedule is a finite sequence of edges: explicit, periodic, or drawn
uniformly at random from the edge set with a seeded generator. Stepping an
edge (i, j) left-multiplies the running product by that edge's local
matrix, which only mixes rows i and j, so each step costs O(n) instead of
a dense multiply.

Diagnostics follow the standard contraction toolkit for products of
stochastic matrices: the row-spread semi-norm (max column spread, zero
exactly on rank-one matrices with equal rows), the ergodicity coefficient
(half the max L1 row distance, a contraction factor for the semi-norm),
and the scrambling test (no pair of rows with disjoint support). When a
periodic schedule's smallest spanning window m is known, the run keeps a
ledger checking the geometric decay certificate

    seminorm(P(t:0)) <= (1 - eps) ** (t / (m * floor(n/2)) - 1)

with eps = min_weight ** (n - 1).

Reproducibility: random schedules draw edge indices with numpy's PCG64
generator seeded from the schedule's 64-bit seed; for a fixed numpy
version the draw is bit-identical across platforms. The engine always
simulates in float64 regardless of the weight kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import GraphMismatch, NotStochastic, UnknownEdge
from .graph import Graph, UnionFind, normalize_edge
from .weights import EdgeWeights, WeightSet, entry_floor

DEFAULT_TOL = 1e-10

#: Floor applied to the decay certificate when checking it against the
#: computed seminorm. Rows of a float64 product cannot differ by less than
#: a few ulps, while the certificate keeps shrinking geometrically, so past
#: this resolution the raw comparison would only measure rounding noise.
LEDGER_RESOLUTION = 1e-15

#: Trace recording policy: every step up to this bound, ...
DENSE_RECORD_LIMIT = 1000
#: ... then every this many steps.
SPARSE_RECORD_EVERY = 100


def _should_record(t: int) -> bool:
    return t <= DENSE_RECORD_LIMIT or t % SPARSE_RECORD_EVERY == 0


# -- schedules ----------------------------------------------------------------

@dataclass(frozen=True)
class Schedule:
    """Finite edge sequence: explicit list, repeated period, or seeded draws."""

    graph: Graph
    kind: str  # "explicit" | "periodic" | "random"
    edges: tuple = ()
    period: tuple = ()
    repetitions: int = 0
    seed: Optional[int] = None
    steps: int = 0

    @classmethod
    def explicit(cls, graph: Graph, edges) -> "Schedule":
        canon = tuple(graph.require_edge(*e) for e in edges)
        return cls(graph=graph, kind="explicit", edges=canon)

    @classmethod
    def periodic(cls, graph: Graph, period, repetitions: int) -> "Schedule":
        canon = tuple(graph.require_edge(*e) for e in period)
        if not canon:
            raise ValueError("period must be nonempty")
        if repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        return cls(graph=graph, kind="periodic", period=canon, repetitions=repetitions)

    @classmethod
    def random(cls, graph: Graph, seed: int, steps: int) -> "Schedule":
        if seed is None:
            raise ValueError("random schedules need an explicit seed")
        if steps < 1:
            raise ValueError("steps must be >= 1")
        if not graph.edges:
            raise UnknownEdge("graph has no edges to draw from")
        return cls(graph=graph, kind="random", seed=int(seed), steps=int(steps))

    def __len__(self):
        if self.kind == "explicit":
            return len(self.edges)
        if self.kind == "periodic":
            return len(self.period) * self.repetitions
        return self.steps

    def edge_list(self) -> list:
        """Materialize the full edge sequence."""
        if self.kind == "explicit":
            return list(self.edges)
        if self.kind == "periodic":
            return list(self.period) * self.repetitions
        rng = np.random.Generator(np.random.PCG64(self.seed))
        order = self.graph.sorted_edges
        idx = rng.integers(0, len(order), size=self.steps)
        return [order[k] for k in idx]


@dataclass(frozen=True)
class ScheduleClass:
    """Spanning classification; ``almost_sure`` marks probability-one claims."""

    spanning: bool
    m_spanning: Optional[int] = None
    almost_sure: bool = False


def covers_spanning_tree(n: int, edges) -> bool:
    """True when the edge set connects all n nodes (incremental union-find)."""
    uf = UnionFind(n)
    for e in edges:
        uf.union(*e)
        if uf.components == 1:
            return True
    return uf.components == 1


def classify_schedule(s: Schedule) -> ScheduleClass:
    """Spanning test plus, for periodic schedules, the smallest window m
    such that every length-m window of the repeated period is spanning.

    Windows are scanned at every offset within one period over a tripled
    period, which covers all windows of the infinite repetition up to
    length 2 * len(period); if the period spans at all, some m in that
    range works. Random schedules are spanning with probability one and
    have no defined m.
    """
    n = s.graph.n
    if s.kind == "explicit":
        return ScheduleClass(spanning=covers_spanning_tree(n, s.edges))
    if s.kind == "random":
        return ScheduleClass(spanning=True, m_spanning=None, almost_sure=True)
    period = s.period
    if not covers_spanning_tree(n, period):
        return ScheduleClass(spanning=False)
    tripled = period * 3
    length = len(period)
    for m in range(1, 2 * length + 1):
        if all(
            covers_spanning_tree(n, tripled[o : o + m]) for o in range(length)
        ):
            return ScheduleClass(spanning=True, m_spanning=m)
    return ScheduleClass(spanning=True, m_spanning=None)


# -- single-step updates ------------------------------------------------------

def gossip_step(x, edge, w: EdgeWeights):
    """Apply one pairwise update to the state vector in place.

    For edge (i, j): x_i <- (1-a_ij) x_i + a_ij x_j and
    x_j <- a_ji x_i + (1-a_ji) x_j, computed from the old values; all other
    entries are untouched, so the update is O(1).
    """
    i, j = normalize_edge(int(edge[0]), int(edge[1]))
    if i == j or i < 1 or j > len(x):
        raise UnknownEdge(f"edge ({edge[0]},{edge[1]}) invalid for {len(x)} nodes")
    a, b = float(w.a_ij), float(w.a_ji)
    xi, xj = x[i - 1], x[j - 1]
    x[i - 1] = (1.0 - a) * xi + a * xj
    x[j - 1] = b * xi + (1.0 - b) * xj
    return x


class ProductTracker:
    """Running left product of local matrices with recorded diagnostics.

    Starts at the identity. ``step`` left-multiplies one edge's local
    matrix by replacing rows i and j with their mixtures; histories of
    (t, seminorm) and (t, min nonzero entry) are appended per the trace
    recording policy.
    """

    def __init__(self, n: int):
        self.P = np.eye(n)
        self.t = 0
        self.seminorm_history = [(0, seminorm(self.P))]
        self.minentry_history = [(0, 1.0)]

    def step(self, edge, w: EdgeWeights) -> "ProductTracker":
        i, j = normalize_edge(int(edge[0]), int(edge[1]))
        a, b = float(w.a_ij), float(w.a_ji)
        new_i = (1.0 - a) * self.P[i - 1] + a * self.P[j - 1]
        new_j = b * self.P[i - 1] + (1.0 - b) * self.P[j - 1]
        self.P[i - 1] = new_i
        self.P[j - 1] = new_j
        self.t += 1
        if _should_record(self.t):
            self.seminorm_history.append((self.t, self.seminorm()))
            self.minentry_history.append((self.t, self.min_entry()))
        return self

    def seminorm(self) -> float:
        return seminorm(self.P)

    def min_entry(self) -> float:
        return float(self.P[self.P > 0].min())


def product_step(tracker: ProductTracker, edge, w: EdgeWeights) -> ProductTracker:
    """Advance the tracker by one edge (mutates and returns it)."""
    return tracker.step(edge, w)


# -- matrix diagnostics -------------------------------------------------------

def seminorm(M) -> float:
    """Maximum column spread; zero exactly when all rows are equal."""
    m = np.asarray(M, dtype=float)
    return float((m.max(axis=0) - m.min(axis=0)).max())


def ergodicity_coefficient(M) -> float:
    """Half the maximum L1 distance between rows of a stochastic matrix."""
    m = np.asarray(M, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotStochastic("matrix must be square")
    if (m < -1e-12).any() or np.abs(m.sum(axis=1) - 1.0).max() > 1e-9:
        raise NotStochastic("matrix is not row stochastic")
    diffs = np.abs(m[:, None, :] - m[None, :, :]).sum(axis=2)
    return float(diffs.max() / 2.0)


def is_scrambling(M) -> bool:
    """True when no two rows have disjoint support."""
    pos = np.asarray(M) > 0
    shared = (pos[:, None, :] & pos[None, :, :]).any(axis=2)
    return bool(shared.all())


# -- full runs ----------------------------------------------------------------

@dataclass
class RunOptions:
    """Knobs for :func:`run`. ``tol`` of 0 disables early stopping."""

    tol: float = DEFAULT_TOL
    x0: Optional[Sequence[float]] = None


@dataclass(frozen=True)
class TraceRow:
    t: int
    edge: tuple
    seminorm: float
    bound: Optional[float]
    min_entry: float


@dataclass
class RunReport:
    """Outcome of one schedule run (float64 arithmetic throughout)."""

    p_hat: list
    P: np.ndarray
    steps: int
    converged: bool
    final_seminorm: float
    trace: list
    max_bound_violation: Optional[float]
    spanning: bool
    m_spanning: Optional[int]
    epsilon: float
    tol: float
    schedule_kind: str
    schedule_seed: Optional[int] = None
    x_final: Optional[list] = None


def run(ws: WeightSet, schedule: Schedule, opts: Optional[RunOptions] = None) -> RunReport:
    """Step the product (and optionally a state vector) through a schedule.

    Stops at the end of the schedule or as soon as the product's seminorm
    drops below ``opts.tol``. The limit estimate ``p_hat`` is the vector of
    column means of the final product, and the residual seminorm is its
    error certificate. When the schedule is periodic with a known spanning
    window m, every recorded step is checked against the geometric decay
    certificate and the worst violation is reported (<= 0 means the
    certificate held everywhere it is measurable; the certificate is
    floored at LEDGER_RESOLUTION for the comparison, traces carry the raw
    value).
    """
    if ws.graph != schedule.graph:
        raise GraphMismatch("weight set and schedule use different graphs")
    opts = opts or RunOptions()
    n = ws.graph.n
    info = classify_schedule(schedule)
    eps = float(entry_floor(ws))
    window = info.m_spanning * (n // 2) if info.m_spanning else None
    wsf = ws.to_float()
    pairs = {e: wsf.pair(e) for e in wsf.graph.sorted_edges}

    tracker = ProductTracker(n)
    x = None
    if opts.x0 is not None:
        x = np.asarray(opts.x0, dtype=float).copy()
        if x.shape != (n,):
            raise GraphMismatch(f"initial state has shape {x.shape}, wanted ({n},)")

    trace = []
    max_viol = None

    def record(edge, s):
        nonlocal max_viol
        bound = None
        if window is not None:
            bound = (1.0 - eps) ** (tracker.t / window - 1.0)
            viol = s - max(bound, LEDGER_RESOLUTION)
            max_viol = viol if max_viol is None else max(max_viol, viol)
        trace.append(TraceRow(tracker.t, edge, s, bound, tracker.min_entry()))

    s = tracker.seminorm()
    converged = s < opts.tol
    last_edge = None
    for edge in schedule.edge_list():
        if converged:
            break
        w = pairs[edge]
        tracker.step(edge, w)
        if x is not None:
            gossip_step(x, edge, w)
        last_edge = edge
        s = tracker.seminorm()
        converged = s < opts.tol
        if _should_record(tracker.t) or converged:
            record(edge, s)
    if last_edge is not None and (not trace or trace[-1].t != tracker.t):
        record(last_edge, s)

    p_hat = tracker.P.mean(axis=0)
    return RunReport(
        p_hat=[float(v) for v in p_hat],
        P=tracker.P,
        steps=tracker.t,
        converged=bool(converged),
        final_seminorm=float(s),
        trace=trace,
        max_bound_violation=max_viol,
        spanning=info.spanning,
        m_spanning=info.m_spanning,
        epsilon=eps,
        tol=opts.tol,
        schedule_kind=schedule.kind,
        schedule_seed=schedule.seed,
        x_final=None if x is None else [float(v) for v in x],
    )


def min_entry_floor_check(ws: WeightSet, schedule: Schedule) -> bool:
    """Check min nonzero entry > min_weight ** (n-1) for every prefix product."""
    if ws.graph != schedule.graph:
        raise GraphMismatch("weight set and schedule use different graphs")
    eps = float(entry_floor(ws))
    tracker = ProductTracker(ws.graph.n)
    if not tracker.min_entry() > eps:
        return False
    wsf = ws.to_float()
    pairs = {e: wsf.pair(e) for e in wsf.graph.sorted_edges}
    for edge in schedule.edge_list():
        tracker.step(edge, pairs[edge])
        if not tracker.min_entry() > eps:
            return False
    return True
