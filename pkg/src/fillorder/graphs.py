"""Static graphs, the dynamic component (quotient) graph, and exact fill oracles.

The component graph tracks a partially eliminated symmetric non-zero
structure: eliminated vertices are contracted into component vertices, and
the graph stays quasi-bipartite (components are never adjacent to each
other; any adjacency created by a pivot is resolved by melding).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from sortedcontainers import SortedList

REMAINING = "remaining"
ELIMINATED = "eliminated"


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph (no self-loops, sorted adjacency)."""

    n: int
    adjacency: tuple
    m: int

    @staticmethod
    def from_edges(n: int, edges: Iterable) -> "Graph":
        """Build a graph from an edge iterable; drops self-loops and duplicates."""
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u < 0 or u >= n or v < 0 or v >= n:
                raise GraphError(f"vertex id out of range: edge ({u}, {v}) with n={n}")
            if u == v:
                continue
            adj[u].add(v)
            adj[v].add(u)
        adjacency = tuple(tuple(sorted(s)) for s in adj)
        m = sum(len(a) for a in adjacency) // 2
        return Graph(n=n, adjacency=adjacency, m=m)

    def neighbors(self, v: int):
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self):
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    def validate(self) -> None:
        for u in range(self.n):
            a = self.adjacency[u]
            assert list(a) == sorted(set(a)), "adjacency must be strictly sorted"
            assert u not in a, "self-loop found"
            for v in a:
                assert u in self.adjacency[v], "adjacency not symmetric"
        assert 2 * self.m == sum(len(a) for a in self.adjacency)


@dataclass(frozen=True)
class PivotDelta:
    """Summary of one pivot, consumed by sketch structures run in lockstep."""

    vertex: int
    component: int                 # id of the resulting (possibly melded) component
    absorbed: tuple                # component ids that were melded away
    remaining_neighbors: tuple     # N_remaining(vertex) just before the pivot
    component_neighbors: tuple     # N_component(vertex) just before the pivot, ascending


def meld_survivor(a_id: int, a_size: int, b_id: int, b_size: int) -> int:
    """Deterministic meld winner: larger remaining-neighbor set, ties to smaller id.

    Shared by the component graph and every sketch copy so that component
    ids stay aligned across all structures.
    """
    if (a_size, -a_id) >= (b_size, -b_id):
        return a_id
    return b_id


class ComponentGraph:
    """Mutable partially-eliminated state of a graph under vertex pivots.

    Components are identified by the id of one of their eliminated vertices
    (the meld survivor).  Neighbor sets are kept in sorted order so that
    sampling, rank queries, and structural comparison are deterministic.

    Single-writer: callers serialize pivots; concurrent reads between
    pivots are safe (no internal locking).
    """

    def __init__(self, graph: Graph, validate: bool = False):
        self.graph = graph
        self._validate = validate
        n = graph.n
        self._eliminated = [False] * n
        self._rem_adj = [SortedList(graph.adjacency[v]) for v in range(n)]
        self._comp_adj = [SortedList() for _ in range(n)]
        self._comp_rem: dict = {}           # component id -> SortedList of remaining neighbors
        self._active_comps = SortedList()   # currently active component ids
        self._uf_parent: dict = {}          # eliminated vertex -> meld parent
        self.num_eliminated = 0

    # ----- state queries -----

    @property
    def n(self) -> int:
        return self.graph.n

    def state_of(self, v: int) -> str:
        return ELIMINATED if self._eliminated[v] else REMAINING

    def is_remaining(self, v: int) -> bool:
        return not self._eliminated[v]

    def remaining_vertices(self):
        return [v for v in range(self.n) if not self._eliminated[v]]

    def component_ids(self):
        return list(self._active_comps)

    def comp_of(self, x: int) -> int:
        """Component id of an eliminated vertex (follows meld parents)."""
        if not self._eliminated[x]:
            raise GraphError(f"vertex {x} is not eliminated")
        root = x
        while self._uf_parent[root] != root:
            root = self._uf_parent[root]
        while self._uf_parent[x] != root:
            self._uf_parent[x], x = root, self._uf_parent[x]
        return root

    def component_members(self, c: int):
        """Eliminated vertices contracted into component c (linear scan)."""
        return [x for x in range(self.n) if self._eliminated[x] and self.comp_of(x) == c]

    def remaining_neighbors_of_vertex(self, u: int) -> SortedList:
        if self._eliminated[u]:
            raise GraphError(f"vertex {u} is eliminated")
        return self._rem_adj[u]

    def component_neighbors(self, u: int) -> SortedList:
        if self._eliminated[u]:
            raise GraphError(f"vertex {u} is eliminated")
        return self._comp_adj[u]

    def remaining_neighbors_of_component(self, c: int) -> SortedList:
        if c not in self._comp_rem:
            raise GraphError(f"{c} is not an active component id")
        return self._comp_rem[c]

    def d_remain(self, x: int) -> int:
        """|N_remaining(x)| for a remaining vertex or an active component id."""
        if not self._eliminated[x]:
            return len(self._rem_adj[x])
        return len(self.remaining_neighbors_of_component(x))

    def d_component(self, u: int) -> int:
        return len(self.component_neighbors(u))

    def has_edge_component_remaining(self, c: int, u: int) -> bool:
        if self._eliminated[u]:
            raise GraphError(f"vertex {u} is eliminated")
        return c in self._comp_adj[u]

    # ----- sampling oracle -----

    def sample_remaining_neighbor(self, x: int, rng) -> int:
        s = self._rem_adj[x] if not self._eliminated[x] else self.remaining_neighbors_of_component(x)
        if not s:
            raise GraphError(f"cannot sample from empty remaining-neighbor set of {x}")
        return s[int(rng.integers(len(s)))]

    def sample_component_vertex(self, rng) -> int:
        if not self._active_comps:
            raise GraphError("no component vertices to sample")
        return self._active_comps[int(rng.integers(len(self._active_comps)))]

    # ----- pivoting -----

    def pivot(self, u: int) -> PivotDelta:
        if self._eliminated[u]:
            raise GraphError(f"cannot pivot eliminated vertex {u}")
        comp_nbrs = list(self._comp_adj[u])
        rem_nbrs = list(self._rem_adj[u])

        for v in rem_nbrs:
            self._rem_adj[v].remove(u)
        for w in comp_nbrs:
            self._comp_rem[w].remove(u)

        self._eliminated[u] = True
        self.num_eliminated += 1
        self._uf_parent[u] = u
        self._rem_adj[u] = SortedList()
        self._comp_adj[u] = SortedList()

        # Fresh singleton component for u, melded left-to-right with the
        # component neighbors in ascending id order.
        cur_id = u
        cur_set = SortedList(rem_nbrs)
        self._comp_rem[u] = cur_set
        self._active_comps.add(u)
        absorbed = []
        for w in comp_nbrs:
            w_set = self._comp_rem[w]
            winner = meld_survivor(cur_id, len(cur_set), w, len(w_set))
            if winner == cur_id:
                loser_id, loser_set, win_set = w, w_set, cur_set
            else:
                loser_id, loser_set, win_set = cur_id, cur_set, w_set
            for v in loser_set:
                if v not in win_set:
                    win_set.add(v)
                ca = self._comp_adj[v]
                if loser_id in ca:
                    ca.remove(loser_id)
            self._uf_parent[loser_id] = winner
            del self._comp_rem[loser_id]
            self._active_comps.remove(loser_id)
            absorbed.append(loser_id)
            cur_id, cur_set = winner, win_set

        for v in cur_set:
            ca = self._comp_adj[v]
            if cur_id not in ca:
                ca.add(cur_id)

        delta = PivotDelta(
            vertex=u,
            component=cur_id,
            absorbed=tuple(absorbed),
            remaining_neighbors=tuple(rem_nbrs),
            component_neighbors=tuple(comp_nbrs),
        )
        if self._validate:
            self.check_invariants()
        return delta

    # ----- invariants and structural comparison -----

    def check_invariants(self) -> None:
        m = self.graph.m
        total = 0
        for c in self._active_comps:
            members = self._comp_rem[c]
            total += len(members)
            for v in members:
                assert not self._eliminated[v], "component adjacent to eliminated vertex"
                assert c in self._comp_adj[v], "component adjacency not symmetric"
        assert total <= m, "sum of component remaining-degrees exceeds edge count"
        for v in range(self.n):
            if self._eliminated[v]:
                continue
            for c in self._comp_adj[v]:
                assert c in self._comp_rem, "dangling component id"
                assert v in self._comp_rem[c], "vertex adjacency not symmetric"
            for w in self._rem_adj[v]:
                assert not self._eliminated[w], "remaining adjacency to eliminated vertex"

    def canonical_state(self):
        """Order-invariant snapshot: component ids replaced by member tuples."""
        comp_key = {c: tuple(sorted(self.component_members(c))) for c in self._active_comps}
        comps = tuple(sorted((comp_key[c], tuple(self._comp_rem[c])) for c in self._active_comps))
        rem = tuple(
            (v, tuple(self._rem_adj[v]), tuple(sorted(comp_key[c] for c in self._comp_adj[v])))
            for v in range(self.n)
            if not self._eliminated[v]
        )
        return (tuple(self._eliminated), comps, rem)

    def fill_neighborhood(self, u: int) -> set:
        """N_fill(u) without u itself, by direct union over the component sets."""
        if self._eliminated[u]:
            raise GraphError(f"vertex {u} is eliminated")
        out = set(self._rem_adj[u])
        for c in self._comp_adj[u]:
            out.update(self._comp_rem[c])
        out.discard(u)
        return out

    def fill_degree(self, u: int) -> int:
        return len(self.fill_neighborhood(u))


# ----- brute-force fill oracles on the static graph -----


def fill_degree_bruteforce(g: Graph, eliminated, v: int) -> int:
    """Fill degree of v by DFS through eliminated vertices, counting distinct
    remaining endpoints (v itself excluded)."""
    elim = set(eliminated)
    if v in elim:
        raise GraphError(f"vertex {v} is eliminated")
    seen_elim = set()
    reached = set()
    stack = [v]
    while stack:
        x = stack.pop()
        for y in g.adjacency[x]:
            if y in elim:
                if y not in seen_elim:
                    seen_elim.add(y)
                    stack.append(y)
            elif y != v:
                reached.add(y)
    return len(reached)


def fill_graph_bruteforce(g: Graph, eliminated) -> Graph:
    """Explicit fill graph by repeated clique insertion over the eliminated set.

    Result keeps the original vertex numbering; eliminated vertices become
    isolated in the returned graph.
    """
    elim = set(eliminated)
    for x in elim:
        if x < 0 or x >= g.n:
            raise GraphError(f"vertex id out of range: {x}")
    adj = [set(g.adjacency[v]) for v in range(g.n)]
    for w in sorted(elim):
        nbrs = [x for x in adj[w] if x != w]
        for x in nbrs:
            adj[x].discard(w)
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1:]:
                adj[x].add(y)
                adj[y].add(x)
        adj[w] = set()
    edges = [(u, v) for u in range(g.n) for v in adj[u] if u < v]
    return Graph.from_edges(g.n, edges)


@dataclass
class OrderingResult:
    """Elimination permutation with its per-step reported fill degrees."""

    order: list
    degrees: list
    method: str = ""
    seed: int | None = None
    audit: dict = field(default_factory=dict)

    def __iter__(self):
        return iter(self.order)


def _check_permutation(n: int, perm: Sequence[int]) -> list:
    p = [int(x) for x in perm]
    if sorted(p) != list(range(n)):
        raise GraphError("not a permutation of 0..n-1")
    return p


class MinDegreeEngine:
    """Exact incremental min-degree state: component graph plus a sorted
    (fill degree, vertex) index maintained by recomputing only the vertices
    whose fill neighborhood a pivot touched.  Purely set-arithmetic; used as
    the scalable exact oracle and by the verifier."""

    def __init__(self, g: Graph):
        self.cg = ComponentGraph(g)
        self.deg = [g.degree(v) for v in range(g.n)]
        self.index = SortedList((self.deg[v], v) for v in range(g.n))

    def min_entry(self):
        """(fill degree, vertex) for the lexicographically-least min-degree vertex."""
        if not self.index:
            raise GraphError("no remaining vertices")
        return self.index[0]

    def degree_of(self, v: int) -> int:
        return self.deg[v]

    def pivot(self, u: int) -> int:
        """Pivot u; returns its fill degree at pivot time."""
        d_u = self.deg[u]
        self.index.remove((d_u, u))
        delta = self.cg.pivot(u)
        affected = self.cg.remaining_neighbors_of_component(delta.component)
        for v in affected:
            nd = self.cg.fill_degree(v)
            if nd != self.deg[v]:
                self.index.remove((self.deg[v], v))
                self.deg[v] = nd
                self.index.add((nd, v))
        return d_u


def mindeg_ordering_bruteforce(g: Graph) -> OrderingResult:
    """Deterministic lexicographically-first min-degree ordering with exact
    per-step fill degrees."""
    eng = MinDegreeEngine(g)
    order, degrees = [], []
    for _ in range(g.n):
        d, u = eng.min_entry()
        eng.pivot(u)
        order.append(u)
        degrees.append(d)
    return OrderingResult(order=order, degrees=degrees, method="brute")


def total_fill(g: Graph, perm: Sequence[int]) -> int:
    """Total fill of an ordering: sum of each vertex's fill degree at its
    pivot time (DFS oracle at every step)."""
    p = _check_permutation(g.n, perm)
    eliminated: set = set()
    out = 0
    for u in p:
        out += fill_degree_bruteforce(g, eliminated, u)
        eliminated.add(u)
    return out


@dataclass
class VerifyReport:
    n: int
    max_ratio: float
    violating_steps: int
    step_degrees: list       # (pivoted degree, true minimum) per step

    @property
    def ok(self) -> bool:
        return self.violating_steps == 0


def verify_ordering(g: Graph, perm: Sequence[int], eps: float) -> VerifyReport:
    """Check the (1+eps)-approximate greedy min-degree property step by step
    against the exact incremental engine."""
    p = _check_permutation(g.n, perm)
    eng = MinDegreeEngine(g)
    max_ratio = 0.0
    violations = 0
    steps = []
    for u in p:
        d_min, _ = eng.min_entry()
        d_u = eng.degree_of(u)
        steps.append((d_u, d_min))
        if d_min == 0:
            ratio = 1.0 if d_u == 0 else float("inf")
        else:
            ratio = d_u / d_min
        max_ratio = max(max_ratio, ratio)
        if d_u > (1.0 + eps) * d_min:
            violations += 1
        eng.pivot(u)
    return VerifyReport(n=g.n, max_ratio=max_ratio, violating_steps=violations, step_degrees=steps)
