"""Graph polynomial routes, contraction-deletion, Dodgson machinery."""

import random

import pytest

from corpus import (
    BANANA3,
    BUBBLE,
    DISJOINT_TRIANGLES,
    K4,
    TADPOLE2,
    TRIANGLE,
    TWO_TRIANGLES_SHARED,
    all_connected_multigraphs_up_to_6_edges,
    random_connected_multigraphs,
)
from graphpoly.graphs import Graph, first_spanning_forest, loop_rank, \
    spanning_forests
from graphpoly.kirchhoff import (
    check_contraction_deletion,
    contraction_deletion,
    dodgson,
    dodgson_identity_holds,
    expanded_dodgson,
    expanded_graph_matrix,
    diagonal_normal_form,
    psi_determinant,
    psi_spanning_trees,
    reordered_psi,
)
from graphpoly.mpoly import MPoly, SymbolicMatrix, determinant


def test_psi_examples():
    assert psi_spanning_trees(TRIANGLE).to_text() == "A1 + A2 + A3"
    assert psi_spanning_trees(BUBBLE).to_text() == "A1 + A2"
    assert psi_spanning_trees(TADPOLE2).to_text() == "A1*A2"
    k4 = psi_spanning_trees(K4)
    assert len(k4) == 16 and k4.total_degree() == 3


def test_psi_determinant_examples():
    assert psi_determinant(TRIANGLE).to_text() == "A1 + A2 + A3"
    assert psi_determinant(K4) == psi_spanning_trees(K4)
    two = psi_determinant(DISJOINT_TRIANGLES)
    a = psi_spanning_trees(TRIANGLE)
    lifted1 = a.embed(6, [0, 1, 2])
    lifted2 = a.embed(6, [3, 4, 5])
    assert two == lifted1 * lifted2


def test_route_equality_corpus_sample():
    for g in list(all_connected_multigraphs_up_to_6_edges())[::7]:
        assert psi_spanning_trees(g) == psi_determinant(g)


def test_route_equality_orientation_invariance():
    rng = random.Random(2)
    for g in random_connected_multigraphs()[:20]:
        flipped = Graph(
            g.vertex_count,
            [(v, u) if rng.random() < 0.5 else (u, v) for u, v in g.edges],
        )
        assert psi_spanning_trees(g) == psi_determinant(flipped)


def test_all_coefficients_are_one_and_multilinear():
    for g in random_connected_multigraphs()[:40]:
        psi = psi_spanning_trees(g)
        assert psi.is_multilinear()
        for _, c in psi.sorted_terms():
            assert c == 1


def test_vertex_join_product():
    psi = psi_spanning_trees(TWO_TRIANGLES_SHARED)
    tri = psi_spanning_trees(TRIANGLE)
    assert psi == tri.embed(6, [0, 1, 2]) * tri.embed(6, [3, 4, 5])


def test_contraction_deletion_examples():
    deleted, contracted = contraction_deletion(TRIANGLE, 0)
    assert deleted.constant_value() == 1
    assert contracted.to_text() == "A1 + A2"
    assert check_contraction_deletion(TRIANGLE, 0)
    for e in range(6):
        assert check_contraction_deletion(K4, e)
    # self-loop: contraction part is zero, psi factors
    loop_graph = Graph(2, [(0, 0), (0, 1), (0, 1)])
    deleted, contracted = contraction_deletion(loop_graph, 0)
    assert contracted.is_zero()
    assert check_contraction_deletion(loop_graph, 0)


def test_diagonal_normal_form_shapes():
    tree = first_spanning_forest(K4)
    ctx = diagonal_normal_form(K4, tree)
    assert ctx.h1 == 3
    assert ctx.matrix.is_symmetric()
    assert ctx.psi() == reordered_psi(ctx)
    # triangle: 1x1 matrix holding the whole polynomial
    t_ctx = diagonal_normal_form(TRIANGLE, TRIANGLE.subgraph([1, 2]))
    assert t_ctx.h1 == 1
    assert t_ctx.psi().to_text() == "A1 + A2 + A3"
    with pytest.raises(ValueError):
        diagonal_normal_form(K4, K4.subgraph([0]))


def test_normal_form_psi_matches_all_forests():
    for g in [K4, BANANA3]:
        for tree in spanning_forests(g):
            ctx = diagonal_normal_form(g, tree)
            assert ctx.psi() == reordered_psi(ctx)


def test_dodgson_conventions():
    ctx = diagonal_normal_form(K4, first_spanning_forest(K4))
    assert dodgson(ctx, (), ()) == ctx.psi()
    assert dodgson(ctx, range(3), range(3)).constant_value() == 1
    with pytest.raises(ValueError):
        dodgson(ctx, (0,), ())


def test_dodgson_generic_2x2():
    # generic symmetric 2x2: removing row 0 / col 1 leaves the coupling
    n = 3  # A1, A2 diagonal, b12 = A3
    a1, a2, b12 = (MPoly.variable(i, n) for i in range(3))
    m = SymbolicMatrix([[a1, b12], [b12, a2]])

    class Ctx:
        matrix = m
        h1 = 2

        def minor(self, rows, cols):
            return m.submatrix(rows, cols)

    ctx = Ctx()
    assert dodgson(ctx, (0,), (1,)) == b12
    holds, sign = dodgson_identity_holds(ctx, (), (), 0, 1)
    assert holds and sign == -1


def test_dodgson_identity_k4():
    ctx = diagonal_normal_form(K4, first_spanning_forest(K4))
    holds, _ = dodgson_identity_holds(ctx, (), (), 0, 1)
    assert holds
    holds, _ = dodgson_identity_holds(ctx, (2,), (2,), 0, 1)
    assert holds
    with pytest.raises(ValueError):
        dodgson_identity_holds(ctx, (0,), (0,), 0, 1)


def test_dodgson_identity_random_tuples():
    rng = random.Random(77)
    graphs = [g for g in random_connected_multigraphs() if loop_rank(g) >= 2]
    for _ in range(60):
        g = rng.choice(graphs)
        forests = spanning_forests(g)
        tree = forests[rng.randrange(len(forests))]
        ctx = diagonal_normal_form(g, tree)
        pool = list(range(ctx.h1))
        rng.shuffle(pool)
        k, l = pool[0], pool[1]
        size = rng.randint(0, len(pool) - 2)
        I = sorted(rng.sample(pool[2:], size))
        J = sorted(rng.sample(pool[2:], size))
        holds, sign = dodgson_identity_holds(ctx, I, J, k, l)
        assert holds and sign in (-1, 1)


def test_expanded_matrix_det_is_psi():
    for g in [TRIANGLE, K4, TADPOLE2, DISJOINT_TRIANGLES]:
        d = determinant(expanded_graph_matrix(g), method="bareiss")
        psi = psi_spanning_trees(g)
        assert d == psi or d == -psi


def test_expanded_dodgson_matches_normal_form():
    # single-index mixed minors agree with the compact form up to sign
    tree = first_spanning_forest(K4)
    ctx = diagonal_normal_form(K4, tree)
    order = ctx.order
    a = dodgson(ctx, (0,), (1,))
    b = expanded_dodgson(K4, (0,), (1,), order)
    assert a == b or a == -b
