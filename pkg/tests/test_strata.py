"""Coordinate-subspace combinatorics: membership, restriction, initial
forms, the union-of-circuits family, blow-up rounds and chains."""

import pytest

from corpus import (
    DISJOINT_TRIANGLES,
    K4,
    TRIANGLE,
    all_connected_multigraphs_up_to_6_edges,
    wheels,
)
from graphpoly.graphs import Graph, Subgraph, loop_rank, subgraphs_nonempty
from graphpoly.strata import (
    blowup_sequence,
    initial_form_factorization,
    lands_in_hypersurface,
    lands_in_hypersurface_definitional,
    motivic_family,
    restriction_identity_check,
    saturated_chains,
)


def test_lands_in_hypersurface_examples():
    tri = K4.subgraph([0, 1, 3])
    assert lands_in_hypersurface(K4, tri)
    path = K4.subgraph([0, 5])
    assert not lands_in_hypersurface(K4, path)
    loop = Graph(2, [(0, 0), (0, 1)])
    assert lands_in_hypersurface(loop, loop.subgraph([0]))
    with pytest.raises(ValueError):
        lands_in_hypersurface(K4, Subgraph(K4, 0))


def test_lands_agrees_with_definition():
    for g in list(all_connected_multigraphs_up_to_6_edges())[::11]:
        for s in subgraphs_nonempty(g):
            assert lands_in_hypersurface(g, s) == \
                lands_in_hypersurface_definitional(g, s)


def test_restriction_identity_examples():
    assert restriction_identity_check(K4, K4.subgraph([0]))
    # spanning tree: quotient is a tadpole bouquet
    assert restriction_identity_check(K4, K4.subgraph([0, 1, 2]))
    assert restriction_identity_check(TRIANGLE, TRIANGLE.subgraph([0]))
    with pytest.raises(ValueError):
        restriction_identity_check(K4, K4.subgraph([0, 1, 3]))


def test_initial_form_examples():
    tri = K4.subgraph([0, 1, 3])
    inner, quot, ok = initial_form_factorization(K4, tri)
    assert ok
    assert inner.to_text() == "A1 + A2 + A4"
    assert quot.to_text() == "A3*A5 + A3*A6 + A5*A6"
    four_cycle = K4.subgraph([1, 2, 3, 4])
    assert loop_rank(K4.subgraph([1, 2, 3, 4])) == 1
    _, _, ok = initial_form_factorization(K4, four_cycle)
    assert ok
    inner, quot, ok = initial_form_factorization(K4, K4.full_subgraph())
    assert ok and quot.constant_value() == 1
    with pytest.raises(ValueError):
        initial_form_factorization(K4, K4.subgraph([0]))


def test_motivic_family_k4():
    fam = motivic_family(K4)
    assert len(fam.members) == 14
    sizes = {}
    for m in fam.members:
        sizes[m.edge_count] = sizes.get(m.edge_count, 0) + 1
    assert sizes == {3: 4, 4: 3, 5: 6, 6: 1}
    assert len(fam.maximal_cycles) == 7
    member_masks = {m.edge_set for m in fam.members}
    assert {c.edge_set for c in fam.maximal_cycles} <= member_masks


def test_motivic_family_characterization_exhaustive():
    # members are exactly the subgraphs whose rank drops on every removal
    for g in [K4, TRIANGLE, DISJOINT_TRIANGLES] + list(wheels(3, 4)):
        expected = set()
        for s in subgraphs_nonempty(g):
            h = loop_rank(s)
            if h == 0:
                continue
            drops = all(
                loop_rank(Subgraph(g, s.edge_set & ~(1 << e))) < h
                for e in s.edge_indices()
            )
            if drops:
                expected.add(s.edge_set)
        fam = motivic_family(g)
        assert {m.edge_set for m in fam.members} == expected


def test_motivic_family_union_structure():
    for g in [K4] + list(wheels(3, 4)):
        fam = motivic_family(g)
        cycles = [c.edge_set for c in fam.maximal_cycles]
        for m in fam.members:
            inside = [c for c in cycles if c & ~m.edge_set == 0]
            acc = 0
            for c in inside:
                acc |= c
            assert acc == m.edge_set


def test_motivic_family_trivial_cases():
    assert len(motivic_family(TRIANGLE).members) == 1
    fam = motivic_family(DISJOINT_TRIANGLES)
    assert len(fam.members) == 3  # each triangle and their union


def test_blowup_rounds_k4():
    rounds = blowup_sequence(K4)
    assert [sorted(s.edge_count for s in r) for r in rounds] == [
        [5] * 6,
        [3, 3, 3, 3, 4, 4, 4],
    ]
    emitted = [s.edge_set for r in rounds for s in r]
    assert len(emitted) == len(set(emitted)) == 13
    for r in rounds:
        for a in r:
            for b in r:
                if a.edge_set != b.edge_set:
                    assert a.edge_set & ~b.edge_set != 0


def test_blowup_rounds_triangle_and_ws4():
    assert [[s.edge_count for s in r] for r in blowup_sequence(TRIANGLE)] == [[3]]
    w4 = wheels(4, 4)[0]
    rounds = blowup_sequence(w4)
    fam = motivic_family(w4)
    emitted = [s.edge_set for r in rounds for s in r]
    full = (1 << w4.edge_count) - 1
    assert sorted(emitted) == sorted(
        m.edge_set for m in fam.members if m.edge_set != full
    )


def test_saturated_chains_k4():
    chains = saturated_chains(K4)
    assert chains
    for chain in chains:
        assert chain[-1].edge_set == K4.full_subgraph().edge_set
        hs = [loop_rank(s) for s in chain]
        assert hs == list(range(1, loop_rank(K4) + 1))
        assert len(chain) - 1 == loop_rank(K4) - 1


def test_saturated_chains_triangle():
    chains = saturated_chains(TRIANGLE)
    assert len(chains) == 1
    assert [loop_rank(s) for s in chains[0]] == [1]


def test_saturated_chain_law_corpus():
    # the chain law holds when the whole graph drops rank on every edge
    # removal (bridgeless); a bridge would be a non-convergent subgraph
    # certificate, so this covers every primitive divergent graph
    for g in list(all_connected_multigraphs_up_to_6_edges())[::37]:
        h = loop_rank(g)
        if h == 0:
            continue
        fam = motivic_family(g)
        full = (1 << g.edge_count) - 1
        if all(m.edge_set != full for m in fam.members):
            continue
        for chain in saturated_chains(g):
            assert [loop_rank(s) for s in chain] == list(range(1, h + 1))


def test_restriction_and_initial_form_corpus():
    for g in list(all_connected_multigraphs_up_to_6_edges())[::23]:
        for s in subgraphs_nonempty(g):
            if loop_rank(s) == 0:
                assert restriction_identity_check(g, s)
            else:
                _, _, ok = initial_form_factorization(g, s)
                assert ok
