"""Configuration polynomials, duality and the functional equation."""

import random
from fractions import Fraction

import pytest

from corpus import K4, TRIANGLE
from graphpoly.configs import (
    Configuration,
    configuration_polynomial,
    dual_configuration,
    functional_equation_check,
    monomial_reversal,
    pluecker_coefficient_check,
    _rank,
)
from graphpoly.graphs import cycle_basis, first_spanning_forest
from graphpoly.kirchhoff import psi_spanning_trees
from graphpoly.mpoly import MPoly


def random_configuration(rng, E, d):
    while True:
        rows = [
            [Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(E)]
            for _ in range(d)
        ]
        try:
            return Configuration(E, rows)
        except ValueError:
            continue


def test_single_edge():
    c = Configuration(1, [[1]])
    assert configuration_polynomial(c).to_text() == "A1"


def test_triangle_cycle_space():
    c = Configuration(3, [[1, 1, 1]])
    assert configuration_polynomial(c).to_text() == "A1 + A2 + A3"
    d = dual_configuration(c)
    assert d.dim == 2
    assert configuration_polynomial(d).to_text() == "A1*A2 + A1*A3 + A2*A3"


def test_graph_configuration_matches_psi():
    for g in (TRIANGLE, K4):
        rows = cycle_basis(g, first_spanning_forest(g))
        cfg = Configuration(g.edge_count, rows)
        assert configuration_polynomial(cfg) == psi_spanning_trees(g)
        assert pluecker_coefficient_check(cfg)


def test_rank_rejection():
    with pytest.raises(ValueError):
        Configuration(3, [[1, 1, 1], [2, 2, 2]])


def test_full_space_and_identity():
    c = Configuration(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert configuration_polynomial(c).to_text() == "A1*A2*A3"
    d = dual_configuration(c)
    assert d.dim == 0
    assert configuration_polynomial(d).constant_value() == 1


def test_pluecker_with_scaled_column():
    base = [[1, 1, 0, 1], [0, 1, 1, 1]]
    scaled = [[2, 1, 0, 1], [0, 1, 1, 1]]  # column 0 doubled
    c1 = Configuration(4, base)
    c2 = Configuration(4, scaled)
    assert pluecker_coefficient_check(c1)
    assert pluecker_coefficient_check(c2)
    p1 = configuration_polynomial(c1)
    p2 = configuration_polynomial(c2)
    # monomials using edge 0 pick up the squared scale
    assert p2.coefficient([1, 1, 0, 0]) == 4 * p1.coefficient([1, 1, 0, 0])


def test_basis_change_scales_by_square():
    rng = random.Random(31)
    cfg = random_configuration(rng, 5, 2)
    # integral unimodular-ish change of basis with determinant 3
    rows = cfg.basis
    mixed = [
        [3 * a + b for a, b in zip(rows[0], rows[1])],
        list(rows[1]),
    ]
    changed = Configuration(5, mixed)
    p = configuration_polynomial(cfg)
    q = configuration_polynomial(changed)
    from graphpoly.configs import proportional

    lam = proportional(p, q)
    assert lam is not None and lam > 0
    # a change of basis scales the polynomial by a rational square
    assert Fraction(lam).numerator * Fraction(lam).denominator > 0
    num, den = lam.numerator, lam.denominator
    import math

    assert math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den


def test_dual_involution():
    rng = random.Random(13)
    for _ in range(10):
        E = rng.randint(3, 7)
        d = rng.randint(1, E - 1)
        cfg = random_configuration(rng, E, d)
        dd = dual_configuration(dual_configuration(cfg))
        assert dd.dim == cfg.dim
        stacked = list(cfg.basis) + list(dd.basis)
        assert _rank(stacked) == cfg.dim


def test_functional_equation_examples():
    tri = Configuration(3, [[1, 1, 1]])
    holds, lam = functional_equation_check(tri)
    assert holds and lam == 1
    banana = dual_configuration(tri)
    holds, _ = functional_equation_check(banana)
    assert holds
    with pytest.raises(ValueError):
        functional_equation_check(
            Configuration(2, [[1, 0], [0, 1]])
        )


def test_functional_equation_random():
    rng = random.Random(21)
    for _ in range(40):
        E = rng.randint(3, 8)
        d = rng.randint(2, E - 1)
        cfg = random_configuration(rng, E, d)
        holds, lam = functional_equation_check(cfg)
        assert holds and lam != 0


def test_monomial_reversal():
    n = 3
    p = MPoly.variable(0, n) * MPoly.variable(1, n) + MPoly.variable(2, n)
    r = monomial_reversal(p)
    assert r == MPoly.variable(2, n) + MPoly.variable(0, n) * MPoly.variable(1, n)


def test_degree_and_homogeneity():
    rng = random.Random(41)
    for _ in range(10):
        E = rng.randint(2, 7)
        d = rng.randint(1, E)
        cfg = random_configuration(rng, E, d)
        p = configuration_polynomial(cfg)
        assert p.is_homogeneous()
        assert p.total_degree() == d
        assert p.is_multilinear()


def test_config_json_roundtrip():
    cfg = Configuration(3, [[Fraction(1, 2), 1, 0]])
    again = Configuration.from_json(
        __import__("json").dumps(cfg.to_json_dict())
    )
    assert again.basis == cfg.basis
