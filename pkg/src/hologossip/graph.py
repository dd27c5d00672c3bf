"""Simple connected graphs, walks, spanning trees, and digraph composition.

Nodes are integers 1..n. Undirected edges are stored canonically as pairs
(i, j) with i < j; public helpers accept either orientation. Every traversal
visits neighbors in ascending node order, so spanning trees and the cycle
basis are deterministic across runs and platforms.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import (
    DisconnectedGraph,
    DuplicateEdge,
    EmptyGraph,
    InvalidNode,
    InvalidWalk,
    MismatchedNodeCounts,
    SelfLoop,
    UnknownEdge,
)


def normalize_edge(i: int, j: int) -> tuple[int, int]:
    """Canonical (min, max) form of an undirected edge."""
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph on nodes 1..n.

    Instances are immutable after construction and safe to share between
    concurrent tasks. Build through :func:`build_graph`, which validates
    the invariants (no self-loops, no duplicates, connected).
    """

    n: int
    edges: frozenset

    @cached_property
    def sorted_edges(self) -> tuple:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: [] for v in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}

    def neighbors(self, v: int) -> tuple:
        if v not in self.adjacency:
            raise InvalidNode(f"node {v} outside 1..{self.n}")
        return self.adjacency[v]

    def has_edge(self, i: int, j: int) -> bool:
        return normalize_edge(i, j) in self.edges

    def require_edge(self, i: int, j: int) -> tuple[int, int]:
        e = normalize_edge(i, j)
        if e not in self.edges:
            raise UnknownEdge(f"({i},{j}) is not an edge of the graph")
        return e


def build_graph(n: int, edges: Iterable) -> Graph:
    """Validate and build a simple connected graph.

    Args:
        n: node count; nodes are 1..n.
        edges: iterable of (i, j) pairs in either orientation.

    Raises:
        EmptyGraph, InvalidNode, SelfLoop, DuplicateEdge, DisconnectedGraph.
    """
    if n < 1:
        raise EmptyGraph("graph needs at least one node")
    seen = set()
    for pair in edges:
        i, j = int(pair[0]), int(pair[1])
        if not (1 <= i <= n) or not (1 <= j <= n):
            raise InvalidNode(f"edge ({i},{j}) uses a node outside 1..{n}")
        if i == j:
            raise SelfLoop(f"self-loop ({i},{i}) not allowed")
        e = normalize_edge(i, j)
        if e in seen:
            raise DuplicateEdge(f"edge ({e[0]},{e[1]}) given more than once")
        seen.add(e)
    g = Graph(n=n, edges=frozenset(seen))
    reached = _bfs_reach(g, 1)
    if len(reached) != n:
        missing = min(v for v in range(1, n + 1) if v not in reached)
        raise DisconnectedGraph(f"node {missing} unreachable from node 1")
    return g


def _bfs_reach(g: Graph, start: int) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


@dataclass(frozen=True)
class Walk:
    """A walk given by its node sequence; closed when first == last."""

    nodes: tuple

    def __len__(self):
        return len(self.nodes)

    @property
    def is_closed(self) -> bool:
        return len(self.nodes) >= 1 and self.nodes[0] == self.nodes[-1]

    def steps(self):
        """Consecutive (u, v) node pairs along the walk."""
        return zip(self.nodes, self.nodes[1:])

    def inverse(self) -> "Walk":
        return Walk(tuple(reversed(self.nodes)))

    def concat(self, other: "Walk") -> "Walk":
        if not self.nodes or not other.nodes:
            return Walk(self.nodes or other.nodes)
        if self.nodes[-1] != other.nodes[0]:
            raise InvalidWalk("walks do not share an endpoint")
        return Walk(self.nodes + other.nodes[1:])

    def __str__(self):
        return "→".join(str(v) for v in self.nodes)


def walk(g: Graph, nodes: Iterable[int]) -> Walk:
    """Build a walk and check every consecutive pair is an edge of ``g``."""
    w = Walk(tuple(int(v) for v in nodes))
    for u, v in w.steps():
        if not g.has_edge(u, v):
            raise InvalidWalk(f"({u},{v}) is not an edge of the graph")
    return w


@dataclass(frozen=True)
class EdgeSequence:
    """Finite ordered sequence of edges of one graph."""

    edges: tuple

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __getitem__(self, idx):
        return self.edges[idx]

    def string(self, t: int, s: int = 0) -> "EdgeSequence":
        """Contiguous subsequence covering steps s+1..t."""
        return EdgeSequence(self.edges[s:t])

    def append(self, e) -> "EdgeSequence":
        return EdgeSequence(self.edges + (tuple(e),))


def edge_sequence(g: Graph, edges: Iterable) -> EdgeSequence:
    """Validate membership and canonicalize each edge's orientation."""
    out = []
    for pair in edges:
        out.append(g.require_edge(int(pair[0]), int(pair[1])))
    return EdgeSequence(tuple(out))


@dataclass(eq=False)
class SpanningTree:
    """Rooted spanning tree: parent pointers plus the tree edge subset."""

    root: int
    parent: dict
    edges: frozenset

    @property
    def n(self) -> int:
        return len(self.parent)

    def path_to_root(self, v: int) -> list:
        chain = [v]
        while self.parent[chain[-1]] is not None:
            chain.append(self.parent[chain[-1]])
        return chain

    def path(self, i: int, j: int) -> Walk:
        """Unique tree walk from i to j (through the lowest common ancestor)."""
        up_i = self.path_to_root(i)
        pos = {v: k for k, v in enumerate(up_i)}
        down = [j]
        while down[-1] not in pos:
            down.append(self.parent[down[-1]])
        lca = down.pop()
        return Walk(tuple(up_i[: pos[lca] + 1] + list(reversed(down))))


def spanning_tree(g: Graph, root: int = 1) -> SpanningTree:
    """Breadth-first spanning tree rooted at ``root``.

    Neighbors are visited in ascending index order, so the result is a
    deterministic function of the graph.
    """
    if not (1 <= root <= g.n):
        raise InvalidNode(f"root {root} outside 1..{g.n}")
    parent = {root: None}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if v not in parent:
                parent[v] = u
                queue.append(v)
    edges = frozenset(normalize_edge(v, p) for v, p in parent.items() if p is not None)
    return SpanningTree(root=root, parent=parent, edges=edges)


def spanning_tree_from_edges(g: Graph, edges: Iterable, root: int = 1) -> SpanningTree:
    """Root the given spanning edge set at ``root`` via BFS over those edges."""
    treeset = frozenset(normalize_edge(*e) for e in edges)
    adj = {v: [] for v in range(1, g.n + 1)}
    for i, j in treeset:
        g.require_edge(i, j)
        adj[i].append(j)
        adj[j].append(i)
    parent = {root: None}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in sorted(adj[u]):
            if v not in parent:
                parent[v] = u
                queue.append(v)
    if len(parent) != g.n or len(treeset) != g.n - 1:
        raise DisconnectedGraph("edge set is not a spanning tree")
    return SpanningTree(root=root, parent=parent, edges=treeset)


def spanning_tree_containing(g: Graph, required: Iterable, root: int = 1) -> SpanningTree:
    """Grow a spanning tree that contains all ``required`` edges.

    The required edges must be acyclic; remaining graph edges are added in
    ascending order, skipping any that would close a cycle.
    """
    uf = UnionFind(g.n)
    chosen = []
    for e in sorted(normalize_edge(*e) for e in required):
        g.require_edge(*e)
        if not uf.union(*e):
            raise InvalidWalk("required edges contain a cycle")
        chosen.append(e)
    for e in g.sorted_edges:
        if uf.union(*e):
            chosen.append(e)
    return spanning_tree_from_edges(g, chosen, root=root)


def fundamental_cycles(g: Graph, t: SpanningTree) -> list:
    """One closed walk per non-tree edge: the tree path i..j plus edge j-i.

    Returns |E| - n + 1 closed walks; together with the multiplicativity of
    walk products over concatenation they determine the product over every
    cycle of the graph.
    """
    cycles = []
    for i, j in g.sorted_edges:
        if (i, j) in t.edges:
            continue
        path = t.path(i, j)
        cycles.append(Walk(path.nodes + (i,)))
    return cycles


class UnionFind:
    """Union-find over nodes 1..n with path compression."""

    def __init__(self, n: int):
        self._parent = list(range(n + 1))
        self.components = n

    def find(self, v: int) -> int:
        root = v
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[v] != root:
            self._parent[v], v = root, self._parent[v]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self._parent[rb] = ra
        self.components -= 1
        return True


# -- directed graphs (matrix supports) ---------------------------------------

@dataclass(frozen=True)
class DirectedGraph:
    """Directed graph on nodes 1..n given by a set of (source, target) pairs."""

    n: int
    edges: frozenset

    @cached_property
    def out_neighbors(self) -> dict:
        out = {v: [] for v in range(1, self.n + 1)}
        for u, v in self.edges:
            out[u].append(v)
        return {v: tuple(sorted(t)) for v, t in out.items()}

    @cached_property
    def in_neighbors(self) -> dict:
        inn = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.edges:
            inn[v].add(u)
        return inn


def directed_graph(n: int, edges: Iterable) -> DirectedGraph:
    out = set()
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (1 <= u <= n) or not (1 <= v <= n):
            raise InvalidNode(f"arc ({u},{v}) uses a node outside 1..{n}")
        out.add((u, v))
    return DirectedGraph(n=n, edges=frozenset(out))


def identity_digraph(n: int) -> DirectedGraph:
    """Self-loops only; the identity of composition."""
    return DirectedGraph(n=n, edges=frozenset((v, v) for v in range(1, n + 1)))


def support_digraph(matrix) -> DirectedGraph:
    """Support of a square matrix as a digraph.

    There is an arc u -> v exactly when entry (v, u) is nonzero, i.e. when
    applying the matrix moves mass from position u to position v. With this
    convention the support of a product M2 @ M1 is compose(support(M2),
    support(M1)).
    """
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise MismatchedNodeCounts("support requires a square matrix")
    rows, cols = np.nonzero(m)
    return DirectedGraph(
        n=m.shape[0],
        edges=frozenset((int(c) + 1, int(r) + 1) for r, c in zip(rows, cols)),
    )


def compose(gq: DirectedGraph, gp: DirectedGraph) -> DirectedGraph:
    """Composition applying ``gp`` first, then ``gq``.

    There is an arc u -> v in the result exactly when some k has u -> k in
    gp and k -> v in gq; this matches the support of the matrix product
    Mq @ Mp.
    """
    if gq.n != gp.n:
        raise MismatchedNodeCounts(f"node counts differ: {gq.n} vs {gp.n}")
    out = set()
    for u in range(1, gp.n + 1):
        targets = set()
        for k in gp.out_neighbors[u]:
            targets.update(gq.out_neighbors[k])
        out.update((u, v) for v in targets)
    return DirectedGraph(n=gp.n, edges=frozenset(out))


def is_neighbor_shared(g: DirectedGraph) -> bool:
    """True when every pair of distinct nodes has a common in-neighbor."""
    inn = g.in_neighbors
    for i in range(1, g.n + 1):
        for j in range(i + 1, g.n + 1):
            if inn[i].isdisjoint(inn[j]):
                return False
    return True


def is_strongly_connected(g: DirectedGraph) -> bool:
    """True when every node is reachable from node 1 and node 1 from every node."""

    def reach(neigh):
        seen = {1}
        queue = deque([1])
        while queue:
            u = queue.popleft()
            for v in neigh(u):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen

    fwd = reach(lambda u: g.out_neighbors[u])
    bwd = reach(lambda u: g.in_neighbors[u])
    return len(fwd) == g.n and len(bwd) == g.n
