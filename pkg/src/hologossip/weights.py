"""Per-edge averaging weights, their local update matrices, and cycle balance.

Each undirected edge (i, j) carries a pair of weights (a_ij, a_ji) in the
open interval (0, 1): a_ij is the weight agent i places on agent j's value
during a pairwise update, and vice versa. A weight set is homogeneous in
scalar kind: either every weight is an exact ``fractions.Fraction`` or every
weight is a float. Exact sets make the cycle-balance decision exact; float
sets fall back to a relative tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import InvalidWalk, MixedScalarKinds, UnknownEdge, WeightOutOfRange
from .graph import Graph, Walk, fundamental_cycles, spanning_tree

Scalar = Union[Fraction, float]

#: Relative tolerance for the cycle-balance decision in float mode. Exact
#: sets are decided exactly.
HOLONOMY_TOL = 1e-9


def _is_exact(v) -> bool:
    return isinstance(v, (Fraction, int)) and not isinstance(v, bool)


@dataclass(frozen=True)
class EdgeWeights:
    """Weight pair for a canonical edge (i, j) with i < j.

    ``a_ij`` weights the influence of j on i; ``a_ji`` the influence of i
    on j. Both lie in the open interval (0, 1).
    """

    a_ij: Scalar
    a_ji: Scalar


class WeightSet:
    """One weight pair per graph edge; immutable after construction."""

    def __init__(self, graph: Graph, pairs):
        """Build from ``{(i, j): (a_ij, a_ji)}`` with keys in either orientation.

        For a key given as (j, i) with j > i the pair is stored flipped so
        the canonical record keeps its meaning.
        """
        store = {}
        kinds = set()
        for key, (a, b) in pairs.items():
            i, j = int(key[0]), int(key[1])
            e = graph.require_edge(i, j)
            if e in store:
                raise UnknownEdge(f"edge ({i},{j}) given more than once")
            if i > j:
                a, b = b, a
            for v in (a, b):
                if not (0 < v < 1):
                    raise WeightOutOfRange(f"weight {v} on edge {e} outside (0,1)")
                kinds.add("exact" if _is_exact(v) else "float")
            store[e] = EdgeWeights(a, b)
        missing = set(graph.edges) - set(store)
        if missing:
            raise UnknownEdge(f"no weights for edges {sorted(missing)}")
        if len(kinds) > 1:
            raise MixedScalarKinds("weight set mixes exact rationals and floats")
        self.graph = graph
        self.exact = kinds == {"exact"}
        self._pairs = store

    def pair(self, edge) -> EdgeWeights:
        e = self.graph.require_edge(*edge)
        return self._pairs[e]

    def weight(self, i: int, j: int) -> Scalar:
        """The weight a_ij that agent i places on agent j's value."""
        rec = self.pair((i, j))
        return rec.a_ij if i < j else rec.a_ji

    def items(self):
        """(edge, EdgeWeights) pairs in ascending edge order."""
        return [(e, self._pairs[e]) for e in self.graph.sorted_edges]

    def to_float(self) -> "WeightSet":
        if not self.exact:
            return self
        return WeightSet(
            self.graph,
            {e: (float(w.a_ij), float(w.a_ji)) for e, w in self._pairs.items()},
        )

    @property
    def kind(self) -> str:
        return "rational" if self.exact else "float"

    def one(self) -> Scalar:
        return Fraction(1) if self.exact else 1.0


def standard_gossip(graph: Graph) -> WeightSet:
    """All weights 1/2: plain pairwise averaging, exact kind."""
    half = Fraction(1, 2)
    return WeightSet(graph, {e: (half, half) for e in graph.sorted_edges})


def local_matrix(ws: WeightSet, edge):
    """Full n-by-n update matrix for one edge, as nested lists.

    The matrix is the identity except for the 2x2 principal block at rows
    and columns i, j, which holds [[1-a_ij, a_ij], [a_ji, 1-a_ji]]. Entries
    are Fractions for exact sets and floats otherwise, so row sums are
    exactly one in exact mode.
    """
    i, j = ws.graph.require_edge(*edge)
    w = ws.pair((i, j))
    one = ws.one()
    zero = one - one
    n = ws.graph.n
    m = [[one if r == c else zero for c in range(n)] for r in range(n)]
    m[i - 1][i - 1] = one - w.a_ij
    m[i - 1][j - 1] = w.a_ij
    m[j - 1][i - 1] = w.a_ji
    m[j - 1][j - 1] = one - w.a_ji
    return m


def ratio(ws: WeightSet, i: int, j: int) -> Scalar:
    """Directed ratio a_ij / a_ji; reciprocal under orientation swap."""
    return ws.weight(i, j) / ws.weight(j, i)


def walk_ratio(ws: WeightSet, w) -> Scalar:
    """Product of directed ratios along a walk; 1 for empty or single-node walks.

    Multiplicative over concatenation, and equal to 1 on any walk followed
    by its own inverse.
    """
    nodes = w.nodes if isinstance(w, Walk) else tuple(w)
    value = ws.one()
    for u, v in zip(nodes, nodes[1:]):
        if not ws.graph.has_edge(u, v):
            raise InvalidWalk(f"({u},{v}) is not an edge of the graph")
        value = value * ratio(ws, u, v)
    return value


@dataclass(frozen=True)
class HolonomyWitness:
    """A closed walk whose ratio product differs from one."""

    cycle: Walk
    ratio: Scalar


@dataclass(frozen=True)
class HolonomyReport:
    holonomic: bool
    witness: Optional[HolonomyWitness] = None


def check_holonomy(ws: WeightSet) -> HolonomyReport:
    """Decide whether every cycle has ratio product one.

    Only the fundamental cycles of the breadth-first tree rooted at node 1
    are checked: walk products are multiplicative over concatenation and
    cancel on back-and-forth steps, so the cycle basis determines the
    product over every cycle. Exact sets are decided exactly; float sets
    use |R - 1| <= HOLONOMY_TOL. The witness is the first failing cycle in
    ascending non-tree-edge order.
    """
    t = spanning_tree(ws.graph, root=1)
    for cycle in fundamental_cycles(ws.graph, t):
        r = walk_ratio(ws, cycle)
        if ws.exact:
            ok = r == 1
        else:
            ok = abs(r - 1.0) <= HOLONOMY_TOL
        if not ok:
            return HolonomyReport(False, HolonomyWitness(cycle, r))
    return HolonomyReport(True, None)


def min_weight(ws: WeightSet) -> Scalar:
    """Smallest nonzero entry over all materialized local matrices.

    Equals the minimum of {a, 1-a} over every directed weight. For a graph
    with no edges the only product is the identity, so the floor is 1.
    """
    values = []
    for _, w in ws.items():
        values.extend((w.a_ij, 1 - w.a_ij, w.a_ji, 1 - w.a_ji))
    if not values:
        return ws.one()
    return min(values)


def entry_floor(ws: WeightSet) -> Scalar:
    """Lower bound min_weight ** (n - 1) for nonzero entries of any
    schedule product; also the contraction amount in the decay certificate."""
    return min_weight(ws) ** (ws.graph.n - 1)
