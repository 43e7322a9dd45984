"""Wheel graphs, their bordered-tridiagonal determinant form, and the
recurrence/discriminant identities that drive the wheel computations.

Variable layout for the wheel with n spokes: edge variables T are indexed
by edge position (spokes first, rim second); the change of variables maps
the corner matrix onto A_0..A_{n-1} (variables 0..n-1) and B_0..B_{n-1}
(variables n..2n-1), with A_i = -T_{(i+1 mod n)} on the spokes and B_i the
i-th diagonal sum.  The matrix in T-variables is the cycle Gram matrix and
is the ground truth the substitution is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph
from .kirchhoff import psi_spanning_trees
from .mpoly import MPoly, SymbolicMatrix, determinant


def wheel(n: int) -> Graph:
    """Hub vertex 0 joined to an n-cycle: spokes (0,i) then rim (i, i+1)."""
    if n < 3:
        raise ValueError("wheel needs at least 3 spokes")
    edges = [(0, i) for i in range(1, n + 1)]
    edges += [(i, i % n + 1) for i in range(1, n + 1)]
    return Graph(n + 1, edges)


def example_graph_12() -> Graph:
    """The 7-vertex, 12-edge, 6-loop example used by the elimination
    cascade's failure analysis (vertices relabeled to 0-based)."""
    pairs = [
        (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7),
        (7, 2), (7, 3), (6, 4), (5, 1), (5, 3), (4, 1),
    ]
    return Graph(7, [(u - 1, v - 1) for u, v in pairs])


@dataclass
class WheelContext:
    """Wheel graph with its two determinant presentations."""

    n: int
    graph: Graph
    matrix_T: SymbolicMatrix   # cycle Gram matrix in edge variables
    matrix_AB: SymbolicMatrix  # bordered tridiagonal in A, B variables
    psi_T: MPoly               # graph polynomial in edge variables
    psi_AB: MPoly              # det(matrix_AB)


def _t_matrix(n: int) -> SymbolicMatrix:
    nv = 2 * n
    zero = MPoly.zero(nv)

    def var(i):
        return MPoly.variable(i, nv)

    entries = [[zero for _ in range(n)] for _ in range(n)]
    for p in range(n):
        entries[p][p] = var(p) + var((p + 1) % n) + var(n + p)
        q = (p + 1) % n
        off = -var(q)
        entries[p][q] = entries[p][q] + off
        entries[q][p] = entries[q][p] + off
    return SymbolicMatrix(entries)


def _ab_matrix(n: int) -> SymbolicMatrix:
    nv = 2 * n
    zero = MPoly.zero(nv)

    def a(i):
        return MPoly.variable(i, nv)

    def b(i):
        return MPoly.variable(n + i, nv)

    entries = [[zero for _ in range(n)] for _ in range(n)]
    for p in range(n):
        entries[p][p] = b(p)
        q = (p + 1) % n
        entries[p][q] = entries[p][q] + a(p if q != 0 else n - 1)
        entries[q][p] = entries[q][p] + a(p if q != 0 else n - 1)
    return SymbolicMatrix(entries)


def ab_substitution(n: int, p: MPoly) -> MPoly:
    """Simultaneously replace A_i by -T_{(i+1 mod n)} and B_i by its
    diagonal sum of edge variables."""
    nv = 2 * n
    replacements = []
    for i in range(n):  # A_i lives at variable i
        replacements.append(-MPoly.variable((i + 1) % n, nv))
    for i in range(n):  # B_i lives at variable n+i
        replacements.append(
            MPoly.variable(i, nv)
            + MPoly.variable((i + 1) % n, nv)
            + MPoly.variable(n + i, nv)
        )
    return p.compose(replacements)


def wheel_context(n: int, validate: bool = True) -> WheelContext:
    """Build both matrices; checks the substitution maps one onto the
    other entrywise and that the T-determinant is the graph polynomial."""
    g = wheel(n)
    mt = _t_matrix(n)
    mab = _ab_matrix(n)
    psi_t = determinant(mt)
    psi_ab = determinant(mab)
    if validate:
        for p in range(n):
            for q in range(n):
                mapped = ab_substitution(n, mab.entries[p][q])
                if mapped != mt.entries[p][q]:
                    raise AssertionError(
                        f"substitution mismatch at entry ({p},{q})"
                    )
        if psi_t != psi_spanning_trees(g):
            raise AssertionError("T-matrix determinant is not the graph "
                                 "polynomial")
    return WheelContext(n=n, graph=g, matrix_T=mt, matrix_AB=mab,
                        psi_T=psi_t, psi_AB=psi_ab)


def wheel_Q(p: int, start: int, ctx: WheelContext) -> MPoly:
    """Tridiagonal minor Q_p(start) on B_start.. with couplings A_start..;
    Q_0 = 1 by the empty determinant convention."""
    n = ctx.n
    nv = 2 * n
    if p < 0 or start < 0 or (p > 0 and start + p - 1 >= n):
        raise IndexError(f"Q_{p}({start}) indices out of range for n={n}")
    if p == 0:
        return MPoly.one(nv)

    def a(i):
        return MPoly.variable(i, nv)

    def b(i):
        return MPoly.variable(n + i, nv)

    prev2 = MPoly.one(nv)          # Q_0
    prev1 = b(start)               # Q_1(start)
    for size in range(2, p + 1):
        cur = b(start + size - 1) * prev1 - a(start + size - 2) ** 2 * prev2
        prev2, prev1 = prev1, cur
    return prev1


def wheel_Q_determinant(p: int, start: int, ctx: WheelContext) -> MPoly:
    """Q_p(start) straight from the tridiagonal determinant (oracle)."""
    n = ctx.n
    nv = 2 * n
    if p == 0:
        return MPoly.one(nv)
    zero = MPoly.zero(nv)
    entries = [[zero for _ in range(p)] for _ in range(p)]
    for r in range(p):
        entries[r][r] = MPoly.variable(n + start + r, nv)
        if r + 1 < p:
            coupling = MPoly.variable(start + r, nv)
            entries[r][r + 1] = coupling
            entries[r + 1][r] = coupling
    return determinant(SymbolicMatrix(entries))


def wheel_K(ctx: WheelContext) -> MPoly:
    """Corner polynomial: the part of the determinant not hit by B_0."""
    n = ctx.n
    nv = 2 * n

    def a(i):
        return MPoly.variable(i, nv)

    corner = MPoly.one(nv)
    for i in range(n):
        corner = corner * a(i)
    sign = 1 if (n - 1) % 2 == 0 else -1
    return (
        -(a(0) ** 2) * wheel_Q(n - 2, 2, ctx)
        - a(n - 1) ** 2 * wheel_Q(n - 2, 1, ctx)
        + 2 * sign * corner
    )


def wheel_recurrence_check(n: int) -> bool:
    """Recurrence and decomposition identities for the wheel determinant:
    the tridiagonal recursion in both expansion directions, and
    psi = B_0 Q_{n-1}(1) + K_n with the explicit corner polynomial."""
    ctx = wheel_context(n, validate=False)
    nv = 2 * n

    def a(i):
        return MPoly.variable(i, nv)

    def b(i):
        return MPoly.variable(n + i, nv)

    for p in range(0, n):
        for start in range(0, n - p + 1):
            if p == 0 or start + p - 1 >= n:
                continue
            direct = wheel_Q_determinant(p, start, ctx)
            if direct != wheel_Q(p, start, ctx):
                return False
            if p >= 2:
                left = b(start) * wheel_Q(p - 1, start + 1, ctx) - a(
                    start
                ) ** 2 * wheel_Q(p - 2, start + 2, ctx)
                right = b(start + p - 1) * wheel_Q(p - 1, start, ctx) - a(
                    start + p - 2
                ) ** 2 * wheel_Q(p - 2, start, ctx)
                if direct != left or direct != right:
                    return False
    k = wheel_K(ctx)
    decomposition = b(0) * wheel_Q(n - 1, 1, ctx) + k
    return decomposition == ctx.psi_AB


def wheel_discriminant_check(n: int) -> bool:
    """Conic-fibration discriminant degenerates into a product:
    Q_{n-2}(2) Q_{n-2}(1) - (A_1...A_{n-2})^2 = Q_{n-3}(2) Q_{n-1}(1)."""
    ctx = wheel_context(n, validate=False)
    nv = 2 * n
    middle = MPoly.one(nv)
    for i in range(1, n - 1):
        middle = middle * MPoly.variable(i, nv)
    delta = wheel_Q(n - 2, 2, ctx) * wheel_Q(n - 2, 1, ctx) - middle * middle
    return delta == wheel_Q(n - 3, 2, ctx) * wheel_Q(n - 1, 1, ctx)
