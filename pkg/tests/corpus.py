"""Shared graph corpus for the test suite.

Tier (a): every connected multigraph with at most 6 edges, enumerated up
to isomorphism by edge-growth with canonical dedup.  Tier (b): 200
seeded random connected multigraphs with at most 10 edges.  Tier (c):
wheels.  Named small graphs cover the degenerate shapes (self-loops,
parallel edges, disconnected unions).
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations

from graphpoly.graphs import Graph
from graphpoly.wheels import example_graph_12, wheel

TRIANGLE = Graph(3, [(0, 1), (1, 2), (2, 0)])
BUBBLE = Graph(2, [(0, 1), (0, 1)])
BANANA3 = Graph(2, [(0, 1), (0, 1), (0, 1)])
PATH3 = Graph(4, [(0, 1), (1, 2), (2, 3)])
K4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
TWO_BUBBLES = Graph(3, [(0, 1), (0, 1), (1, 2), (1, 2)])
TWO_TRIANGLES_SHARED = Graph(
    5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]
)
DISJOINT_TRIANGLES = Graph(
    6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
)
TADPOLE2 = Graph(1, [(0, 0), (0, 0)])
LOOP_PLUS_EDGE = Graph(2, [(0, 0), (0, 1)])

NAMED = [
    TRIANGLE,
    BUBBLE,
    BANANA3,
    PATH3,
    K4,
    TWO_BUBBLES,
    TWO_TRIANGLES_SHARED,
    DISJOINT_TRIANGLES,
    TADPOLE2,
    LOOP_PLUS_EDGE,
]


def _vertex_invariants(vcount, edges):
    deg = [0] * vcount
    loops = [0] * vcount
    for u, v in edges:
        if u == v:
            loops[u] += 1
            deg[u] += 2
        else:
            deg[u] += 1
            deg[v] += 1
    return [(deg[v], loops[v]) for v in range(vcount)]


def _canonical(vcount, edges) -> tuple:
    """Minimal edge tuple over invariant-preserving vertex relabelings."""
    inv = _vertex_invariants(vcount, edges)
    groups = {}
    for v, key in enumerate(inv):
        groups.setdefault(key, []).append(v)
    group_lists = [groups[key] for key in sorted(groups)]
    best = None
    slots = [v for grp in group_lists for v in grp]

    def assignments(idx, mapping):
        nonlocal best
        if idx == len(group_lists):
            mapped = tuple(
                sorted(
                    tuple(sorted((mapping[u], mapping[v]))) for u, v in edges
                )
            )
            if best is None or mapped < best:
                best = mapped
            return
        grp = group_lists[idx]
        base = sum(len(g) for g in group_lists[:idx])
        for perm in permutations(range(base, base + len(grp))):
            for v, target in zip(grp, perm):
                mapping[v] = target
            assignments(idx + 1, mapping)

    assignments(0, [0] * vcount)
    return best


@lru_cache(maxsize=1)
def all_connected_multigraphs_up_to_6_edges() -> tuple:
    """Connected multigraphs (self-loops and parallel edges allowed) with
    1..6 edges, one representative per isomorphism class."""
    seeds = {
        _canonical(1, ((0, 0),)): (1, ((0, 0),)),
        _canonical(2, ((0, 1),)): (2, ((0, 1),)),
    }
    levels = [seeds]
    for _ in range(5):
        nxt = {}
        for vcount, edges in levels[-1].values():
            pairs = [
                (u, v) for u in range(vcount) for v in range(u, vcount)
            ]
            pairs += [(u, vcount) for u in range(vcount)]
            for u, v in pairs:
                new_v = max(vcount, v + 1)
                new_edges = tuple(sorted(edges + ((u, v),)))
                key = _canonical(new_v, new_edges)
                if key not in nxt:
                    nxt[key] = (new_v, new_edges)
        levels.append(nxt)
    out = []
    for level in levels:
        for vcount, edges in sorted(level.values()):
            out.append(Graph(vcount, edges))
    return tuple(out)


@lru_cache(maxsize=4)
def random_connected_multigraphs(count: int = 200, max_edges: int = 10,
                                 seed: int = 20240) -> tuple:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        vcount = rng.randint(2, 7)
        edges = []
        for v in range(1, vcount):
            edges.append((rng.randint(0, v - 1), v))
        extra = rng.randint(0, max_edges - len(edges))
        for _ in range(extra):
            roll = rng.random()
            if roll < 0.1:
                u = rng.randint(0, vcount - 1)
                edges.append((u, u))
            else:
                u = rng.randint(0, vcount - 1)
                v = rng.randint(0, vcount - 1)
                edges.append((u, v))
        rng.shuffle(edges)
        out.append(Graph(vcount, edges))
    return tuple(out)


def wheels(lo: int = 3, hi: int = 6) -> tuple:
    return tuple(wheel(n) for n in range(lo, hi + 1))


def counting_corpus() -> tuple:
    """Graphs used for the point-count oracle equivalence: the named
    shapes plus every tenth random graph, restricted to <= 8 edges so a
    q=7 brute sweep stays cheap."""
    picks = [g for g in NAMED if g.edge_count <= 8]
    picks += [
        g
        for g in random_connected_multigraphs()[::10]
        if g.edge_count <= 8
    ]
    picks.append(wheel(3))
    picks.append(wheel(4))
    return tuple(picks)


EXAMPLE12 = example_graph_12()
