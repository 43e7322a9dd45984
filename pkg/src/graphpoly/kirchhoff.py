"""The Kirchhoff graph polynomial by two independent routes, its
contraction/deletion recursion, and Dodgson minors of the diagonal normal
form.

Route one sums complementary monomials over maximal spanning forests; route
two takes the determinant of the weighted cycle-space Gram matrix.  They
agree exactly because any fundamental-cycle basis is unimodular.
"""

from __future__ import annotations

from .graphs import (
    Graph,
    Subgraph,
    contract,
    cycle_basis,
    delete,
    first_spanning_forest,
    is_spanning_forest,
    spanning_forests,
)
from .mpoly import MPoly, SymbolicMatrix, determinant


def psi_spanning_trees(g: Graph) -> MPoly:
    """Sum over maximal spanning forests T of the monomials prod_{e not in T} A_e.

    Self-loops never sit in a forest, so each self-loop variable divides
    every monomial: a one-vertex graph with n loops yields A1*...*An.
    """
    n = g.edge_count
    full = (1 << n) - 1
    terms = {}
    for t in spanning_forests(g):
        comp = full & ~t.edge_set
        key = 0
        for i in range(n):
            if comp >> i & 1:
                key |= 1 << (8 * i)
        terms[key] = 1
    return MPoly(n, terms)


def gram_matrix(g: Graph, tree: Subgraph) -> SymbolicMatrix:
    """Cycle-space Gram matrix sum_e A_e (e^v restricted to cycles)^2."""
    rows = cycle_basis(g, tree)
    h = len(rows)
    n = g.edge_count
    entries = []
    for j in range(h):
        line = []
        for k in range(h):
            coeffs = {}
            for e in range(n):
                c = rows[j][e] * rows[k][e]
                if c:
                    coeffs[1 << (8 * e)] = coeffs.get(1 << (8 * e), 0) + c
            line.append(MPoly(n, coeffs))
        entries.append(line)
    return SymbolicMatrix(entries, g.edge_count)


def psi_determinant(g: Graph) -> MPoly:
    """Kirchhoff polynomial as det of the weighted cycle Gram matrix."""
    tree = first_spanning_forest(g)
    return determinant(gram_matrix(g, tree))


def contraction_deletion(g: Graph, e: int):
    """(psi of g minus e, psi of g contract e), variables compacted.

    Both parts live on g's edges without e, in order.  For a self-loop the
    contraction part is 0 and psi(g) = A_e * psi(g minus e); for a bridge
    the deletion part is 0, because every maximal forest keeps every
    bridge, so no monomial of psi(g) carries A_e.
    """
    from .graphs import component_count

    if not 0 <= e < g.edge_count:
        raise IndexError(f"edge {e} out of range")
    s = g.subgraph([e])
    removed = delete(g, s)
    if component_count(removed) > component_count(g):
        deleted = MPoly.zero(g.edge_count - 1)
    else:
        deleted = psi_spanning_trees(removed)
    u, v = g.edges[e]
    if u == v:
        contracted = MPoly.zero(g.edge_count - 1)
    else:
        contracted = psi_spanning_trees(contract(g, s))
    return deleted, contracted


def kept_edge_positions(parent_edge_count: int, removed) -> tuple:
    """Old edge indices surviving a removal, in order (old index of new i)."""
    removed = set(removed)
    return tuple(i for i in range(parent_edge_count) if i not in removed)


def lift_minor_vars(p: MPoly, parent_edge_count: int, removed) -> MPoly:
    """Re-embed a compacted-variable polynomial into the parent edge space."""
    return p.embed(parent_edge_count, kept_edge_positions(parent_edge_count, removed))


class DodgsonContext:
    """Diagonal normal form of psi for a graph with a chosen spanning forest.

    Edges are reordered non-tree first; the h1 x h1 symmetric matrix has
    the first h1 variables on the diagonal only, and its determinant is
    psi of the graph in the reordered variables.
    """

    __slots__ = ("graph", "tree", "matrix", "order", "h1")

    def __init__(self, graph: Graph, tree: Subgraph, matrix: SymbolicMatrix, order):
        self.graph = graph
        self.tree = tree
        self.matrix = matrix
        self.order = tuple(order)  # new variable index -> original edge
        self.h1 = matrix.dim

    def psi(self) -> MPoly:
        return determinant(self.matrix)

    def minor(self, rows_removed, cols_removed) -> SymbolicMatrix:
        return self.matrix.submatrix(rows_removed, cols_removed)


def diagonal_normal_form(g: Graph, tree: Subgraph, validate: bool = True) -> DodgsonContext:
    """Build the normal form with non-tree variables isolated on the diagonal."""
    if not is_spanning_forest(g, tree):
        raise ValueError("tree argument is not a spanning forest")
    rows = cycle_basis(g, tree)
    h = len(rows)
    n = g.edge_count
    nontree = [i for i in range(n) if not tree.edge_set >> i & 1]
    tree_edges = [i for i in range(n) if tree.edge_set >> i & 1]
    order = nontree + tree_edges
    # columns permuted: new variable j reads original edge order[j]
    entries = []
    for j in range(h):
        line = []
        for k in range(h):
            coeffs = {}
            for newpos, e in enumerate(order):
                c = rows[j][e] * rows[k][e]
                if c:
                    key = 1 << (8 * newpos)
                    coeffs[key] = coeffs.get(key, 0) + c
            line.append(MPoly(n, coeffs))
        entries.append(line)
    m = SymbolicMatrix(entries, n)
    ctx = DodgsonContext(g, tree, m, order)
    if validate:
        _validate_normal_form(ctx)
    return ctx


def _validate_normal_form(ctx: DodgsonContext):
    m = ctx.matrix
    h = m.dim
    if not m.is_symmetric():
        raise AssertionError("normal form matrix is not symmetric")
    for j in range(h):
        for k in range(h):
            p = m.entries[j][k]
            for var in range(h):
                if p.degree_in(var) and j != k:
                    raise AssertionError(
                        "non-tree variable appears off the diagonal"
                    )
                if p.degree_in(var) and j == k and var != j:
                    raise AssertionError(
                        "non-tree variable on a foreign diagonal entry"
                    )


def reordered_psi(ctx: DodgsonContext) -> MPoly:
    """psi of the underlying graph expressed in the context's variables."""
    psi = psi_spanning_trees(ctx.graph)
    inverse = [0] * len(ctx.order)
    for newpos, e in enumerate(ctx.order):
        inverse[e] = newpos
    return psi.embed(ctx.graph.edge_count, inverse)


def dodgson(ctx: DodgsonContext, rows, cols) -> MPoly:
    """Minor determinant with the rows in ``rows`` and columns in ``cols``
    removed (0-based); remaining indices keep their natural order."""
    rows = tuple(sorted(set(rows)))
    cols = tuple(sorted(set(cols)))
    if len(rows) != len(cols):
        raise ValueError("row and column sets must have equal size")
    for i in rows + cols:
        if not 0 <= i < ctx.h1:
            raise IndexError(f"index {i} outside the matrix")
    return determinant(ctx.minor(rows, cols))


def dodgson_identity_holds(ctx: DodgsonContext, I, J, k: int, l: int):
    """Check the two-minor determinant identity at (I, J, k, l).

    Returns (holds, sign) where sign is +1 or -1 according to which of
    psi(I+k,J+l)*psi(I+l,J+k) = +/- [psi(I,J)^{kl} psi(I,J)_{kl}
    - psi(I,J)_k^l psi(I,J)_l^k] is realized; (False, 0) if neither.
    """
    I = tuple(sorted(set(I)))
    J = tuple(sorted(set(J)))
    if k == l:
        raise ValueError("k and l must differ")
    for x in (k, l):
        if x in I or x in J:
            raise ValueError("k and l must avoid I and J")
        if not 0 <= x < ctx.h1:
            raise IndexError(f"index {x} outside the matrix")
    base = dodgson(ctx, I, J)
    both = base.partial(k).partial(l)          # psi(I,J)^{kl}
    none = base.substitute(k, 0).substitute(l, 0)  # psi(I,J)_{kl}
    dk_sl = base.partial(l).substitute(k, 0)   # psi(I,J)_k^l
    dl_sk = base.partial(k).substitute(l, 0)   # psi(I,J)_l^k
    lhs = both * none - dk_sl * dl_sk
    rhs = dodgson(ctx, I + (k,), J + (l,)) * dodgson(ctx, I + (l,), J + (k,))
    if lhs == rhs:
        return True, 1
    if lhs == -rhs:
        return True, -1
    return False, 0


def expanded_graph_matrix(g: Graph, order=None) -> SymbolicMatrix:
    """Block matrix [[diag(A), inc^T], [-inc, 0]] over the edge variables,
    with one vertex row dropped per component so the incidence block has
    full rank.  Its determinant is psi of the graph up to sign, and every
    edge variable appears on the diagonal only, which is what makes the
    two-minor determinant identity available for arbitrary edge pairs.

    ``order`` optionally re-labels variables: order[newpos] = original edge.
    """
    n = g.edge_count
    if order is None:
        order = tuple(range(n))
    from .graphs import _DSU

    dsu = _DSU(range(g.vertex_count))
    for u, v in g.edges:
        dsu.union(u, v)
    dropped = set()
    seen_roots = set()
    for v in range(g.vertex_count):
        r = dsu.find(v)
        if r not in seen_roots:
            seen_roots.add(r)
            dropped.add(v)  # smallest vertex of each component
    kept_vertices = [v for v in range(g.vertex_count) if v not in dropped]
    vrow = {v: i for i, v in enumerate(kept_vertices)}
    dim = n + len(kept_vertices)
    zero = MPoly.zero(n)
    entries = [[zero for _ in range(dim)] for _ in range(dim)]
    for newpos, e in enumerate(order):
        entries[newpos][newpos] = MPoly.variable(newpos, n)
        u, v = g.edges[e]
        # boundary d(e) = tail - head on the kept vertex rows
        for vertex, sign in ((u, 1), (v, -1)):
            if vertex in vrow:
                r = n + vrow[vertex]
                inc = MPoly.constant(n, sign)
                entries[newpos][r] = entries[newpos][r] + inc
                entries[r][newpos] = entries[r][newpos] - inc
    return SymbolicMatrix(entries)


def expanded_dodgson(g: Graph, rows, cols, order=None) -> MPoly:
    """Minor determinant of the expanded graph matrix with the given edge
    rows and columns removed (variable positions when ``order`` is given)."""
    rows = tuple(sorted(set(rows)))
    cols = tuple(sorted(set(cols)))
    if len(rows) != len(cols):
        raise ValueError("row and column sets must have equal size")
    m = expanded_graph_matrix(g, order)
    return determinant(m.submatrix(rows, cols), method="bareiss")


def check_contraction_deletion(g: Graph, e: int) -> bool:
    """Verify psi(g) = A_e * psi(g minus e) + psi(g contract e) exactly."""
    psi = psi_spanning_trees(g)
    deleted, contracted = contraction_deletion(g, e)
    n = g.edge_count
    lifted_del = lift_minor_vars(deleted, n, [e])
    lifted_con = lift_minor_vars(contracted, n, [e])
    return psi == MPoly.variable(e, n) * lifted_del + lifted_con
