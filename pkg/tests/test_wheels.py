"""Wheel constructions and the determinant identities."""

import pytest

from graphpoly.graphs import loop_rank, spanning_forests
from graphpoly.kirchhoff import psi_spanning_trees
from graphpoly.mpoly import MPoly
from graphpoly.wheels import (
    ab_substitution,
    example_graph_12,
    wheel,
    wheel_context,
    wheel_K,
    wheel_Q,
    wheel_Q_determinant,
    wheel_discriminant_check,
    wheel_recurrence_check,
)


def names(n):
    return [f"A{i}" for i in range(n)] + [f"B{i}" for i in range(n)]


def test_wheel_shapes():
    w3 = wheel(3)
    assert w3.vertex_count == 4 and w3.edge_count == 6
    assert loop_rank(w3) == 3
    assert len(spanning_forests(w3)) == 16
    # every pair of vertices adjacent: it is the complete graph on 4
    pairs = {tuple(sorted(e)) for e in w3.edges}
    assert len(pairs) == 6
    w4 = wheel(4)
    assert w4.edge_count == 8 and w4.vertex_count == 5 and loop_rank(w4) == 4
    with pytest.raises(ValueError):
        wheel(2)


def test_context_n3_determinant():
    ctx = wheel_context(3)
    text = ctx.psi_AB.to_text(names(3))
    assert text == "-A0^2*B2 + 2*A0*A1*A2 - A1^2*B0 - A2^2*B1 + B0*B1*B2"
    assert ctx.psi_T == psi_spanning_trees(ctx.graph)


def test_context_corner_term():
    ctx = wheel_context(5, validate=False)
    corner = ctx.psi_AB.coefficient([1] * 5 + [0] * 5)
    assert corner == 2 * (-1) ** (5 - 1)
    ctx6 = wheel_context(6, validate=False)
    corner6 = ctx6.psi_AB.coefficient([1] * 6 + [0] * 6)
    assert corner6 == 2 * (-1) ** (6 - 1)


def test_substitution_identity():
    for n in (3, 4, 5):
        ctx = wheel_context(n)  # validates entrywise + against psi
        assert ab_substitution(n, ctx.psi_AB) == ctx.psi_T


def test_wheel_q_values():
    ctx = wheel_context(3, validate=False)
    nm = names(3)
    assert wheel_Q(0, 1, ctx).constant_value() == 1
    assert wheel_Q(1, 1, ctx).to_text(nm) == "B1"
    assert wheel_Q(2, 1, ctx).to_text(nm) == "-A1^2 + B1*B2"
    assert wheel_Q(2, 1, ctx) == wheel_Q_determinant(2, 1, ctx)
    with pytest.raises(IndexError):
        wheel_Q(3, 1, ctx)


def test_wheel_k3():
    ctx = wheel_context(3, validate=False)
    nm = names(3)
    k3 = wheel_K(ctx)
    assert k3.to_text(nm) == "-A0^2*B2 + 2*A0*A1*A2 - A2^2*B1"
    b0 = MPoly.variable(3, 6)
    assert ctx.psi_AB - b0 * wheel_Q(2, 1, ctx) == k3


def test_recurrence_and_discriminant():
    for n in range(3, 7):
        assert wheel_recurrence_check(n)
        assert wheel_discriminant_check(n)


def test_example_graph_12():
    g = example_graph_12()
    assert g.edge_count == 12 and g.vertex_count == 7
    assert loop_rank(g) == 6
