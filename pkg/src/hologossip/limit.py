"""Closed-form consensus limits and their certificates.

For a cycle-balanced weight set the limit of any spanning gossip schedule
is a unique positive probability vector. It is computed by assigning each
node the product of directed ratios along a tree path from a base node and
normalizing. Without cycle balance no single vector works, but every
spanning tree still induces one; two trees extracted from a violated cycle
give vectors that provably differ, which is the witness this module
produces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NotHolonomic
from .graph import SpanningTree, normalize_edge, spanning_tree, spanning_tree_containing
from .weights import WeightSet, check_holonomy, ratio, walk_ratio

#: Max per-entry deviation tolerated by float-mode vector checks.
VECTOR_TOL = 1e-12


@dataclass(frozen=True)
class ProbabilityVector:
    """Strictly positive vector summing to one; entry k belongs to node k+1."""

    entries: tuple

    def __post_init__(self):
        if not self.entries or any(v <= 0 for v in self.entries):
            raise ValueError("entries must be strictly positive")
        total = sum(self.entries)
        exact = all(isinstance(v, (Fraction, int)) for v in self.entries)
        if exact:
            if total != 1:
                raise ValueError(f"entries sum to {total}, not 1")
        elif abs(total - 1.0) > VECTOR_TOL:
            raise ValueError(f"entries sum to {total}, not 1")

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, idx):
        return self.entries[idx]

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (Fraction, int)) for v in self.entries)

    def as_floats(self) -> tuple:
        return tuple(float(v) for v in self.entries)


@dataclass(frozen=True)
class Potential:
    """Unnormalized node potentials; the entry at ``base`` is one."""

    entries: tuple
    base: int


def _normalized(values) -> ProbabilityVector:
    total = sum(values)
    return ProbabilityVector(tuple(v / total for v in values))


def consensus_limit(ws: WeightSet, base: int = 1):
    """Limit distribution of any spanning schedule for a balanced weight set.

    Node potentials are products of directed ratios along the breadth-first
    tree paths from ``base``; the normalized potentials form the limit. The
    result is independent of ``base``.

    Returns:
        (Potential, ProbabilityVector)

    Raises:
        NotHolonomic: when the weight set is not cycle-balanced (the limit
            would depend on the schedule; use :func:`tree_vector` for the
            vector attached to one spanning tree).
    """
    report = check_holonomy(ws)
    if not report.holonomic:
        w = report.witness
        raise NotHolonomic(
            f"weights are not cycle-balanced: cycle {w.cycle} has ratio {w.ratio}",
            witness=w,
        )
    t = spanning_tree(ws.graph, root=base)
    q = tuple(walk_ratio(ws, t.path(base, v)) for v in range(1, ws.graph.n + 1))
    return Potential(q, base), _normalized(q)


def tree_vector(ws: WeightSet, t: SpanningTree) -> ProbabilityVector:
    """Probability vector fixed by the local matrices of the tree edges.

    Defined for every weight set: restricted to a tree there are no cycles
    to balance. For a cycle-balanced set every spanning tree yields the
    same vector as :func:`consensus_limit`.
    """
    q = {t.root: ws.one()}
    stack = [t.root]
    adj = {v: [] for v in t.parent}
    for i, j in t.edges:
        adj[i].append(j)
        adj[j].append(i)
    while stack:
        u = stack.pop()
        for v in sorted(adj[u]):
            if v not in q:
                q[v] = q[u] * ratio(ws, u, v)
                stack.append(v)
    return _normalized([q[v] for v in range(1, ws.graph.n + 1)])


def verify_left_eigenvector(ws: WeightSet, p, tol: Optional[float] = None) -> bool:
    """Check that p is fixed (on the left) by every edge's local matrix.

    For the edge (i, j) the fixed-point condition reduces to
    p_i * a_ij == p_j * a_ji. Exact inputs are checked exactly unless a
    ``tol`` is supplied; float inputs use ``tol`` (default 1e-12) on the
    worst edge deviation. Such a vector exists exactly when the weight set
    is cycle-balanced.
    """
    entries = p.entries if isinstance(p, ProbabilityVector) else tuple(p)
    if len(entries) != ws.graph.n:
        raise ValueError(f"vector has {len(entries)} entries for {ws.graph.n} nodes")
    exact = (
        tol is None
        and ws.exact
        and all(isinstance(v, (Fraction, int)) for v in entries)
    )
    limit = VECTOR_TOL if tol is None else tol
    for i, j in ws.graph.sorted_edges:
        dev = entries[i - 1] * ws.weight(i, j) - entries[j - 1] * ws.weight(j, i)
        if exact:
            if dev != 0:
                return False
        elif abs(float(dev)) > limit:
            return False
    return True


@dataclass(frozen=True)
class WitnessTrees:
    """Two spanning trees whose attached vectors disagree.

    ``path_tree`` contains the path edges of a violated cycle, and
    ``chord_tree`` contains the edge closing it; because the cycle's ratio
    product differs from one, the two vectors differ in the ratio of the
    entries at the cycle's endpoints.
    """

    path_tree: SpanningTree
    chord_tree: SpanningTree
    path_vector: ProbabilityVector
    chord_vector: ProbabilityVector


def nonholonomy_witness_trees(ws: WeightSet) -> Optional[WitnessTrees]:
    """Tree pair with distinct vectors, or None for a balanced set."""
    report = check_holonomy(ws)
    if report.holonomic:
        return None
    nodes = report.witness.cycle.nodes  # (v1, ..., vk, v1)
    path_edges = {normalize_edge(u, v) for u, v in zip(nodes, nodes[1:-1])}
    chord = normalize_edge(nodes[0], nodes[-2])
    t_path = spanning_tree_containing(ws.graph, path_edges)
    t_chord = spanning_tree_containing(ws.graph, {chord})
    return WitnessTrees(
        path_tree=t_path,
        chord_tree=t_chord,
        path_vector=tree_vector(ws, t_path),
        chord_vector=tree_vector(ws, t_chord),
    )
