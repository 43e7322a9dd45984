"""Coordinate-subspace combinatorics of the graph hypersurface.

Everything here is phrased on subgraphs rather than on the linear spaces
they index: the dictionary sends an edge set G to the subspace where its
variables vanish, and REVERSES inclusions.  A smaller subgraph means a
bigger linear space, so the family's minimal linear spaces are the
inclusion-maximal proper subgraphs below.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    ENUMERATION_EDGE_LIMIT,
    Graph,
    Subgraph,
    bridgeless_subgraphs,
    contract,
    loop_rank,
)
from .kirchhoff import psi_spanning_trees
from .mpoly import MPoly


def lands_in_hypersurface(g: Graph, s: Subgraph) -> bool:
    """True iff the subspace of s's vanishing variables lies inside the
    hypersurface, which happens exactly when h1(s) > 0."""
    if s.edge_set == 0:
        raise ValueError("the empty subgraph indexes no subspace")
    return loop_rank(s) > 0


def lands_in_hypersurface_definitional(g: Graph, s: Subgraph) -> bool:
    """Definitional cross-check: every monomial meets s's variables."""
    psi = psi_spanning_trees(g)
    svars = set(s.edge_indices())
    for exps, _ in psi.sorted_terms():
        if not any(exps[v] for v in svars):
            return False
    return True


def restriction_identity_check(g: Graph, s: Subgraph) -> bool:
    """For a forest subgraph s, setting its variables to zero in psi(g)
    yields psi of the quotient g // s on the surviving edges."""
    if loop_rank(s) != 0:
        raise ValueError("restriction identity needs a forest subgraph")
    psi = psi_spanning_trees(g)
    restricted = psi
    for e in s.edge_indices():
        restricted = restricted.substitute(e, 0)
    restricted, kept = restricted.compact()
    quotient = psi_spanning_trees(contract(g, s))
    surviving = tuple(i for i in range(g.edge_count) if not s.edge_set >> i & 1)
    # the restriction may leave some surviving variables formally unused;
    # re-embed it into the quotient's variable space before comparing
    lift = {v: i for i, v in enumerate(surviving)}
    restricted_full = restricted.embed(len(surviving), [lift[v] for v in kept])
    return restricted_full == quotient


def initial_form_factorization(g: Graph, s: Subgraph):
    """Split the lowest-degree part of psi along s's variables.

    Returns (inner factor, quotient factor, verdict): the terms of psi of
    minimal total degree nu in s's variables, compared against
    psi(s) * psi(g // s); nu always equals h1(s).  Both factors are
    returned embedded in g's full variable space.
    """
    if loop_rank(s) <= 0:
        raise ValueError("initial form factorization needs h1(s) > 0")
    psi = psi_spanning_trees(g)
    n = g.edge_count
    svars = [i for i in range(n) if s.edge_set >> i & 1]
    degs = {}
    for exps, coef in psi.sorted_terms():
        d = sum(exps[v] for v in svars)
        degs.setdefault(d, []).append((exps, coef))
    nu = min(degs)
    if nu != loop_rank(s):
        raise AssertionError(
            f"minimal degree {nu} differs from h1(s) = {loop_rank(s)}"
        )
    initial = MPoly(n, {_pack(exps): c for exps, c in degs[nu]})

    inner = psi_subgraph_lifted(g, s)
    quotient = psi_quotient_lifted(g, s)
    return inner, quotient, initial == inner * quotient


def psi_subgraph_lifted(g: Graph, s: Subgraph) -> MPoly:
    """psi of the subgraph s on its own edges, embedded in g's variables."""
    sub_edges = s.edge_indices()
    sub = Graph(g.vertex_count, [g.edges[i] for i in sub_edges])
    psi = psi_spanning_trees(sub)
    return psi.embed(g.edge_count, sub_edges)


def psi_quotient_lifted(g: Graph, s: Subgraph) -> MPoly:
    """psi of g // s on the surviving edges, embedded in g's variables."""
    kept = [i for i in range(g.edge_count) if not s.edge_set >> i & 1]
    psi = psi_spanning_trees(contract(g, s))
    return psi.embed(g.edge_count, kept)


def _pack(exps) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e:
            key |= e << (8 * i)
    return key


@dataclass(frozen=True)
class MotivicFamily:
    """Subgraphs indexing the family generated by the maximal subspaces.

    Members are the subgraphs in which removing any edge drops h1, i.e.
    the bridgeless ones; they are exactly the unions of the circuits in
    ``maximal_cycles`` (whose subspaces are the maximal ones)."""

    graph: Graph
    members: tuple
    maximal_cycles: tuple


def motivic_family(g: Graph) -> MotivicFamily:
    if g.edge_count > ENUMERATION_EDGE_LIMIT:
        raise ValueError(
            f"motivic_family refuses graphs with more than "
            f"{ENUMERATION_EDGE_LIMIT} edges"
        )
    members = bridgeless_subgraphs(g)
    by_mask = {s.edge_set for s in members}
    minimal = [
        s
        for s in members
        if not any(
            other != s.edge_set and other & ~s.edge_set == 0
            for other in by_mask
        )
    ]
    return MotivicFamily(g, tuple(members), tuple(minimal))


def blowup_sequence(g: Graph) -> list:
    """Rounds of the subspace-lattice pass: round 1 holds the members whose
    subspaces are minimal (inclusion-maximal proper subgraphs), each later
    round the maximal members not yet emitted; the full graph is skipped
    since its subspace is empty."""
    fam = motivic_family(g)
    full = (1 << g.edge_count) - 1
    pool = {s.edge_set for s in fam.members if s.edge_set != full}
    if not pool and any(s.edge_set == full for s in fam.members):
        # degenerate case: the whole graph is the only member
        return [[Subgraph(g, full)]]
    rounds = []
    while pool:
        maximal = [
            m
            for m in pool
            if not any(other != m and m & ~other == 0 for other in pool)
        ]
        rounds.append([Subgraph(g, m) for m in sorted(maximal)])
        pool -= set(maximal)
    return rounds


def saturated_chains(g: Graph) -> list:
    """Maximal inclusion chains of proper members, with the full graph
    appended on top; returned smallest member first."""
    fam = motivic_family(g)
    full = (1 << g.edge_count) - 1
    proper = sorted(s.edge_set for s in fam.members if s.edge_set != full)
    if not proper:
        return [[Subgraph(g, full)]]
    proper_set = set(proper)
    minimal = [
        m
        for m in proper
        if not any(other != m and other & ~m == 0 for other in proper_set)
    ]
    chains = []

    def extend(chain, top):
        ups = [
            m
            for m in proper
            if m != top and top & ~m == 0
            and not any(
                mid != top and mid != m and top & ~mid == 0 and mid & ~m == 0
                for mid in proper_set
            )
        ]
        if not ups:
            chains.append(chain)
            return
        for m in ups:
            extend(chain + [m], m)

    for m in minimal:
        extend([m], m)
    return [
        [Subgraph(g, m) for m in chain] + [Subgraph(g, full)] for chain in chains
    ]
