"""Oriented multigraphs, subgraphs as edge bitmasks, and divergence tests.

Edges are ordered pairs (tail, head); self-loops and parallel edges are
first-class.  Edge order is stable: every polynomial variable index in the
rest of the package refers to an edge position here.  All objects are
immutable after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

ENUMERATION_EDGE_LIMIT = 24  # subset-enumeration operations refuse beyond this


class Graph:
    """Oriented multigraph with labeled edges 0..E-1."""

    __slots__ = ("vertex_count", "edges", "_h1", "_components")

    def __init__(self, vertex_count: int, edges):
        if vertex_count < 0:
            raise ValueError("negative vertex count")
        edges = tuple((int(u), int(v)) for u, v in edges)
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
        self.vertex_count = vertex_count
        self.edges = edges
        self._h1 = None
        self._components = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    def __repr__(self) -> str:
        return f"Graph(vertices={self.vertex_count}, edges={list(self.edges)})"

    def to_text(self) -> str:
        parts = [f"v={self.vertex_count}"]
        parts += [f"e{i}:({u},{v})" for i, (u, v) in enumerate(self.edges)]
        return "; ".join(parts)

    def to_json_dict(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Graph":
        return cls(int(data["vertices"]), [tuple(e) for e in data["edges"]])

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        return cls.from_json_dict(json.loads(text))

    def full_subgraph(self) -> "Subgraph":
        return Subgraph(self, (1 << self.edge_count) - 1)

    def subgraph(self, edge_indices) -> "Subgraph":
        mask = 0
        for i in edge_indices:
            mask |= 1 << i
        return Subgraph(self, mask)


class Subgraph:
    """Edge subset of a parent graph, stored as a bitmask over positions."""

    __slots__ = ("parent", "edge_set")

    def __init__(self, parent: Graph, edge_set: int):
        if edge_set < 0 or edge_set >> parent.edge_count:
            raise ValueError("edge bitmask outside parent's edge range")
        self.parent = parent
        self.edge_set = edge_set

    def edge_indices(self) -> tuple:
        return tuple(
            i for i in range(self.parent.edge_count) if self.edge_set >> i & 1
        )

    @property
    def edge_count(self) -> int:
        return self.edge_set.bit_count()

    def vertices(self) -> tuple:
        """Induced vertex set: endpoints of included edges only."""
        seen = set()
        for i in self.edge_indices():
            u, v = self.parent.edges[i]
            seen.add(u)
            seen.add(v)
        return tuple(sorted(seen))

    def contains(self, other: "Subgraph") -> bool:
        return other.edge_set & ~self.edge_set == 0

    def union(self, other: "Subgraph") -> "Subgraph":
        return Subgraph(self.parent, self.edge_set | other.edge_set)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgraph):
            return NotImplemented
        return self.parent == other.parent and self.edge_set == other.edge_set

    def __hash__(self) -> int:
        return hash((self.parent, self.edge_set))

    def __repr__(self) -> str:
        return f"Subgraph(edges={list(self.edge_indices())})"


@dataclass(frozen=True)
class DivergenceWitness:
    """A subgraph whose edge/loop balance certifies non-convergence."""

    subgraph: Subgraph
    edges: int
    loops: int

    @property
    def defect(self) -> int:
        return 2 * self.loops - self.edges


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def _components_of(g_or_s):
    """(#components, vertex set) of the edge-induced space.

    For a Graph every vertex counts (isolated ones included); for a
    Subgraph only endpoints of included edges count.
    """
    if isinstance(g_or_s, Graph):
        verts = range(g_or_s.vertex_count)
        edges = g_or_s.edges
    else:
        verts = g_or_s.vertices()
        edges = [g_or_s.parent.edges[i] for i in g_or_s.edge_indices()]
    dsu = _DSU(verts)
    n = len(tuple(verts))
    for u, v in edges:
        if dsu.union(u, v):
            n -= 1
    return n


def component_count(g_or_s) -> int:
    """Number of connected components spanned by the edges (and, for a
    full Graph, by its vertices)."""
    if isinstance(g_or_s, Graph):
        if g_or_s._components is None:
            g_or_s._components = _components_of(g_or_s)
        return g_or_s._components
    return _components_of(g_or_s)


def loop_rank(g_or_s) -> int:
    """First Betti number h1 = E - V + c of the edge-induced space."""
    if isinstance(g_or_s, Graph):
        if g_or_s._h1 is None:
            g_or_s._h1 = (
                g_or_s.edge_count - g_or_s.vertex_count + component_count(g_or_s)
            )
        return g_or_s._h1
    e = g_or_s.edge_count
    v = len(g_or_s.vertices())
    return e - v + component_count(g_or_s)


def is_connected(g: Graph) -> bool:
    return component_count(g) <= 1


def is_forest(g: Graph, mask: int) -> bool:
    """True iff the edge subset given by ``mask`` is acyclic."""
    dsu = _DSU(range(g.vertex_count))
    for i in range(g.edge_count):
        if mask >> i & 1:
            u, v = g.edges[i]
            if u == v or not dsu.union(u, v):
                return False
    return True


def spanning_forests(g: Graph) -> list:
    """All maximal forests (a spanning tree per component), ascending bitmask."""
    if g.edge_count > ENUMERATION_EDGE_LIMIT:
        raise ValueError(
            f"spanning_forests refuses graphs with more than "
            f"{ENUMERATION_EDGE_LIMIT} edges"
        )
    size = g.vertex_count - component_count(g)
    out = []
    for combo in combinations(range(g.edge_count), size):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if is_forest(g, mask):
            out.append(Subgraph(g, mask))
    out.sort(key=lambda s: s.edge_set)
    return out


def first_spanning_forest(g: Graph) -> Subgraph:
    """The ascending-bitmask-first maximal forest (deterministic choice)."""
    size = g.vertex_count - component_count(g)
    dsu = _DSU(range(g.vertex_count))
    mask = 0
    picked = 0
    for i, (u, v) in enumerate(g.edges):
        if u != v and dsu.union(u, v):
            mask |= 1 << i
            picked += 1
            if picked == size:
                break
    return Subgraph(g, mask)


def is_spanning_forest(g: Graph, s: Subgraph) -> bool:
    if s.parent is not g and s.parent != g:
        return False
    return (
        is_forest(g, s.edge_set)
        and s.edge_count == g.vertex_count - component_count(g)
    )


def contract(g: Graph, s: Subgraph) -> Graph:
    """Quotient g // s: each connected component of s collapses to a vertex.

    Distinct components collapse to distinct vertices; edges of s vanish;
    remaining edges keep their relative order; loops created by the
    collapse are retained.  Vertices keep their relative order, a collapsed
    component sitting at the position of its smallest vertex.
    """
    dsu = _DSU(range(g.vertex_count))
    for i in s.edge_indices():
        u, v = g.edges[i]
        dsu.union(u, v)
    root_to_new = {}
    next_id = 0
    for v in range(g.vertex_count):
        r = dsu.find(v)
        if r not in root_to_new:
            root_to_new[r] = next_id
            next_id += 1
    new_edges = []
    for i, (u, v) in enumerate(g.edges):
        if s.edge_set >> i & 1:
            continue
        new_edges.append((root_to_new[dsu.find(u)], root_to_new[dsu.find(v)]))
    return Graph(next_id, new_edges)


def delete(g: Graph, s: Subgraph) -> Graph:
    """Remove the edges of s; the vertex set is unchanged."""
    keep = [e for i, e in enumerate(g.edges) if not s.edge_set >> i & 1]
    return Graph(g.vertex_count, keep)


def cycle_basis(g: Graph, tree: Subgraph) -> list:
    """Fundamental cycles for each non-tree edge, rows over edge coordinates.

    Row i belongs to the i-th non-tree edge (ascending), carries +1 there,
    0 at all other non-tree edges, and +/-1 on the tree path closing it.
    """
    if not is_spanning_forest(g, tree):
        raise ValueError("tree argument is not a spanning forest")
    adj = {v: [] for v in range(g.vertex_count)}
    for i in tree.edge_indices():
        u, v = g.edges[i]
        adj[u].append((v, i, 1))
        adj[v].append((u, i, -1))
    # root the forest, record parent pointers
    parent_edge = {}
    depth = {}
    for root in range(g.vertex_count):
        if root in depth:
            continue
        depth[root] = 0
        parent_edge[root] = None
        stack = [root]
        while stack:
            x = stack.pop()
            for y, ei, sign in adj[x]:
                if y not in depth:
                    depth[y] = depth[x] + 1
                    parent_edge[y] = (x, ei, sign)
                    stack.append(y)
    rows = []
    nontree = [i for i in range(g.edge_count) if not tree.edge_set >> i & 1]
    for i in nontree:
        u, v = g.edges[i]
        row = [0] * g.edge_count
        row[i] = 1
        # close the cycle with the head -> tail forest path: with the
        # boundary convention d(e) = tail - head, traversing an edge
        # against its stored direction flips the sign
        a, b = v, u
        while a != b:
            if depth[a] >= depth[b]:
                x, ei, sign = parent_edge[a]
                row[ei] -= sign  # climbing a: traversal child -> parent
                a = x
            else:
                x, ei, sign = parent_edge[b]
                row[ei] += sign  # this leg is descended parent -> child
                b = x
        rows.append(row)
    return rows


def subgraphs_nonempty(g: Graph):
    """All nonempty edge subsets, ascending bitmask (exhaustive)."""
    if g.edge_count > ENUMERATION_EDGE_LIMIT:
        raise ValueError(
            f"exhaustive enumeration refuses graphs with more than "
            f"{ENUMERATION_EDGE_LIMIT} edges"
        )
    for mask in range(1, 1 << g.edge_count):
        yield Subgraph(g, mask)


def circuits(g: Graph) -> list:
    """All circuits (minimal edge sets with h1 = 1): simple cycles,
    parallel pairs and self-loops, as subgraphs in ascending bitmask order."""
    out = set()
    E = g.edge_count
    adj = {v: [] for v in range(g.vertex_count)}
    for i, (u, v) in enumerate(g.edges):
        if u == v:
            out.add(1 << i)  # self-loop is its own circuit
        else:
            adj[u].append((v, i))
            adj[v].append((u, i))

    # paths from start vertex back to itself using edges of index > first
    for first in range(E):
        u0, v0 = g.edges[first]
        if u0 == v0:
            continue
        stack = [(v0, 1 << first, 1 << v0 | 1 << u0)]
        while stack:
            x, mask, visited = stack.pop()
            for y, ei in adj[x]:
                if ei <= first or mask >> ei & 1:
                    continue
                if y == u0:
                    out.add(mask | 1 << ei)
                elif not visited >> y & 1:
                    stack.append((y, mask | 1 << ei, visited | 1 << y))
    return [Subgraph(g, m) for m in sorted(out)]


def bridgeless_subgraphs(g: Graph) -> list:
    """Nonempty subgraphs in which every edge lies on a cycle.

    These are exactly the unions of circuits; closure under union keeps
    the enumeration polynomial in the output size.
    """
    if g.edge_count > ENUMERATION_EDGE_LIMIT:
        raise ValueError(
            f"bridgeless enumeration refuses graphs with more than "
            f"{ENUMERATION_EDGE_LIMIT} edges"
        )
    circs = [c.edge_set for c in circuits(g)]
    members = set(circs)
    frontier = list(circs)
    while frontier:
        m = frontier.pop()
        for c in circs:
            u = m | c
            if u not in members:
                members.add(u)
                frontier.append(u)
    return [Subgraph(g, m) for m in sorted(members)]


def is_primitive_divergent(g: Graph, method: str = "exhaustive"):
    """Test E = 2*h1 with every proper nonempty subgraph strictly convergent.

    Returns (flag, witness): on failure the witness is a subgraph with
    defect 2*h1 - E >= 0, or the full graph when the global edge/loop
    count is off.  ``method`` is "exhaustive" (all subsets, E <= 24) or
    "cycles" (only bridgeless subgraphs need checking, usable beyond).
    """
    if not is_connected(g):
        raise ValueError("is_primitive_divergent requires a connected graph")
    h1 = loop_rank(g)
    E = g.edge_count
    if E != 2 * h1:
        return False, DivergenceWitness(g.full_subgraph(), E, h1)
    full = (1 << E) - 1
    if method == "exhaustive":
        candidates = subgraphs_nonempty(g)
    elif method == "cycles":
        candidates = bridgeless_subgraphs(g)
    else:
        raise ValueError(f"unknown method {method!r}")
    for s in candidates:
        if s.edge_set == full:
            continue
        se = s.edge_count
        sh = loop_rank(s)
        if se <= 2 * sh:
            return False, DivergenceWitness(s, se, sh)
    return True, None
