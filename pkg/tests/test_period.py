"""Convergence gate, zeta, integrand values and Monte-Carlo estimates."""

import pytest

from corpus import BUBBLE, K4, TRIANGLE, TWO_BUBBLES, wheels
from graphpoly.period import (
    convergence_check,
    estimate_period,
    flattened_coordinates,
    integrand_value,
    zeta,
)


def test_convergence_gate():
    flag, witness = convergence_check(K4)
    assert flag and witness is None
    flag, witness = convergence_check(TWO_BUBBLES)
    assert not flag and witness.defect >= 0
    with pytest.raises(ValueError):
        convergence_check(TRIANGLE)  # 3 edges, 1 loop: not logarithmic
    flag, _ = convergence_check(wheels(4, 4)[0])
    assert flag


def test_zeta_values():
    assert abs(zeta(2) - 1.6449340668482264) < 1e-14
    assert abs(zeta(3) - 1.2020569031595942) < 1e-14
    assert abs(zeta(5) - 1.0369277551433699) < 1e-14
    assert zeta(1000) == 1.0
    with pytest.raises(ValueError):
        zeta(1)


def test_integrand_values():
    assert integrand_value(BUBBLE, [0.5]) == pytest.approx(1.0)
    assert integrand_value(K4, [0.5] * 5) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        integrand_value(K4, [0.5] * 4)
    with pytest.raises(ValueError):
        integrand_value(K4, [1.5] + [0.5] * 4)


def test_flatten_maps_are_consistent():
    import numpy as np

    u = np.linspace(0.05, 0.95, 19).reshape(-1, 1)
    for mode in ("none", "quadratic", "cubic"):
        ratios, weights = flattened_coordinates(u, mode)
        assert np.all(ratios >= 0) and np.all(weights > 0)
    with pytest.raises(ValueError):
        flattened_coordinates(u, "quartic")


def test_bubble_calibration_small():
    est = estimate_period(BUBBLE, 10**4, seed=1, check_convergence=False)
    assert abs(est.estimate - 1.0) < 0.01
    assert est.ratio_to_zeta is None


def test_estimate_rejects_divergent_and_small():
    with pytest.raises(ValueError):
        estimate_period(TWO_BUBBLES, 10**4, seed=0)
    with pytest.raises(ValueError):
        estimate_period(K4, 100, seed=0)


def test_k4_estimate_quick():
    est = estimate_period(K4, 10**5, seed=5)
    assert est.zeta_order == 3
    assert abs(est.ratio_to_zeta - 6.0) < 0.2
    assert est.standard_error > 0


def test_determinism_and_threads():
    a = estimate_period(K4, 10**4, seed=9)
    b = estimate_period(K4, 10**4, seed=9)
    c = estimate_period(K4, 10**4, seed=9, threads=3)
    assert a.estimate == b.estimate == c.estimate
    d = estimate_period(K4, 10**4, seed=10)
    assert d.estimate != a.estimate


def test_relabel_and_seed_invariance():
    import random as pyrandom

    from graphpoly.graphs import Graph

    rng = pyrandom.Random(6)
    edges = list(K4.edges)
    rng.shuffle(edges)
    other = Graph(4, edges)
    a = estimate_period(K4, 10**5, seed=21)
    b = estimate_period(other, 10**5, seed=21)
    c = estimate_period(K4, 10**5, seed=22)
    for alt in (b, c):
        spread = (a.standard_error**2 + alt.standard_error**2) ** 0.5
        assert abs(a.estimate - alt.estimate) <= 3 * spread


def test_sampler_and_chart_options():
    prng = estimate_period(K4, 10**4, seed=3, sampler="prng")
    assert abs(prng.ratio_to_zeta - 6.0) < 0.5
    chart0 = estimate_period(K4, 10**4, seed=3, chart=0)
    assert abs(chart0.ratio_to_zeta - 6.0) < 0.5
    with pytest.raises(IndexError):
        estimate_period(K4, 10**4, seed=3, chart=17)
    with pytest.raises(ValueError):
        estimate_period(K4, 10**4, seed=3, sampler="dartboard")


def test_json_shape():
    est = estimate_period(K4, 10**4, seed=2)
    d = est.to_json_dict()
    assert d["seed"] == 2 and d["sampler"] == "net"
    assert isinstance(d["estimate"], str)
