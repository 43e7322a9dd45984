"""Polynomial arithmetic, determinants, evaluation, square roots."""

import random

import pytest

from graphpoly.mpoly import MPoly, SymbolicMatrix, det_bareiss, det_expansion, \
    determinant, is_prime


def v(i, n):
    return MPoly.variable(i, n)


def random_multilinear(rng, nvars, nterms, coef_range=5):
    terms = {}
    for _ in range(nterms):
        exps = tuple(rng.randint(0, 1) for _ in range(nvars))
        key = 0
        for i, e in enumerate(exps):
            key |= e << (8 * i)
        terms[key] = rng.randint(-coef_range, coef_range)
    return MPoly(nvars, terms)


def test_add_mul_neg_basics():
    a, b = v(0, 2), v(1, 2)
    assert (a + b).to_text() == "A1 + A2"
    assert ((a + b) * (a - b)).to_text() == "A1^2 - A2^2"
    p = a * b + 3
    assert (p + (-p)).is_zero()
    with pytest.raises(ValueError):
        a + v(0, 3)


def test_ring_axioms_random():
    rng = random.Random(11)
    for _ in range(60):
        p = random_multilinear(rng, 4, 3)
        q = random_multilinear(rng, 4, 3)
        r = random_multilinear(rng, 4, 3)
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p * q == q * p


def test_substitute_and_partial():
    n = 3
    p = v(0, n) * v(1, n) + v(2, n)
    assert p.substitute(0, 0) == v(2, n)
    assert p.partial(0) == v(1, n)
    assert v(1, n).partial(0).is_zero()
    assert p.substitute(0, v(0, n)) == p
    with pytest.raises(IndexError):
        p.substitute(5, 0)


def test_coefficient_extraction():
    n = 3
    p = v(0, n) * v(1, n) - 2 * v(2, n)
    assert p.coefficient_of_squarefree_monomial([0, 1]) == 1
    assert p.coefficient_of_squarefree_monomial([2]) == -2
    assert p.coefficient_of_squarefree_monomial([0, 2]) == 0


def test_eval_mod_p():
    n = 2
    p = v(0, n) + v(1, n)
    assert p.eval_mod_p([1, 1], 2) == 0
    assert MPoly.zero(3).eval_mod_p([1, 2, 3], 5) == 0
    q = v(0, n) * v(1, n) + 7
    rng = random.Random(3)
    for prime in (2, 3, 5, 13):
        for _ in range(10):
            x = [rng.randrange(prime) for _ in range(n)]
            direct = (x[0] * x[1] + 7) % prime
            assert q.eval_mod_p(x, prime) == direct
    with pytest.raises(ValueError):
        p.eval_mod_p([0, 0], 6)


def test_eval_mod_p_multiplicative():
    rng = random.Random(5)
    for _ in range(20):
        p = random_multilinear(rng, 3, 4)
        r = random_multilinear(rng, 3, 4)
        x = [rng.randrange(7) for _ in range(3)]
        lhs = (p * r).eval_mod_p(x, 7)
        rhs = p.eval_mod_p(x, 7) * r.eval_mod_p(x, 7) % 7
        assert lhs == rhs


def test_perfect_square_roundtrip():
    rng = random.Random(17)
    found = 0
    while found < 200:
        p = random_multilinear(rng, 4, rng.randint(1, 5))
        if p.is_zero():
            continue
        root = (p * p).perfect_square_root()
        assert root is not None
        assert root == p or root == -p
        found += 1


def test_perfect_square_rejects():
    n = 2
    assert (v(0, n) * v(1, n)).perfect_square_root() is None
    assert (v(0, n) + v(1, n)).perfect_square_root() is None
    assert (-(v(0, n) ** 2)).perfect_square_root() is None
    assert MPoly.zero(2).perfect_square_root() == MPoly.zero(2)


def test_exact_divide():
    n = 3
    a = v(0, n) + v(1, n)
    b = v(1, n) + v(2, n)
    prod = a * b
    assert prod.exact_divide(a) == b
    with pytest.raises(ArithmeticError):
        (prod + 1).exact_divide(a)


def test_determinant_small():
    n = 1
    m = SymbolicMatrix([[v(0, 1)]])
    assert determinant(m) == v(0, 1)
    zero_row = SymbolicMatrix(
        [[MPoly.zero(1), MPoly.zero(1)], [v(0, 1), v(0, 1)]]
    )
    assert determinant(zero_row).is_zero()
    empty = SymbolicMatrix([])
    assert determinant(empty).constant_value() == 1


def test_determinant_methods_agree():
    rng = random.Random(23)
    for dim in (2, 3, 4):
        for _ in range(10):
            entries = [
                [random_multilinear(rng, 3, 2, 3) for _ in range(dim)]
                for _ in range(dim)
            ]
            m = SymbolicMatrix(entries)
            assert det_bareiss(m) == det_expansion(m)


def test_text_and_json_forms():
    n = 4
    p = v(0, n) * v(1, n) + v(0, n) * v(2, n) + v(1, n) * v(2, n) - 2 * v(3, n)
    assert p.to_text() == "A1*A2 + A1*A3 + A2*A3 - 2*A4"
    restored = MPoly.from_json_dict(p.to_json_dict())
    assert restored == p


def test_variable_count_cap():
    with pytest.raises(ValueError):
        MPoly.zero(33)


def test_is_prime():
    assert [is_prime(k) for k in (2, 3, 5, 2147483647)] == [True] * 4
    assert [is_prime(k) for k in (0, 1, 4, 9, 561, 2147483649)] == [False] * 6
