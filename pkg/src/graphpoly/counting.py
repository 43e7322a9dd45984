"""Finite-field point counts of graph hypersurfaces and their rank strata.

Two counting routes: a brute-force kernel sweep of the grid, and an
elimination recursion on generating sets that splits one generator
linearly in a chosen variable, reduces the rest by resultants, and
memoizes canonicalized states.  Square factors are recognized mod q so
Dodgson-style products collapse back to multilinear generators.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from . import kernels
from .graphs import Graph, first_spanning_forest, loop_rank
from .kirchhoff import diagonal_normal_form
from .mpoly import MPoly, is_prime

DEFAULT_BUDGET = 10**9
LEAF_GRID = 1 << 18      # split recursion hands grids this small to the kernel
CHUNK_GRID = 1 << 22     # largest grid a single kernel call may allocate


class BudgetError(Exception):
    """Raised when a brute-force enumeration would exceed its point budget."""


def _poly_arrays(p: MPoly):
    terms = p.sorted_terms()
    coeffs = np.array([c for _, c in terms], dtype=np.int64)
    if terms:
        exps = np.array([e for e, _ in terms], dtype=np.uint8)
    else:
        exps = np.zeros((0, p.nvars), dtype=np.uint8)
    return coeffs, exps.reshape(len(terms), p.nvars)


def _check_prime(q: int):
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")


# -- brute force ---------------------------------------------------------------


def count_affine_brute(p: MPoly, q: int, budget: int = DEFAULT_BUDGET,
                       threads: int = 1) -> int:
    """Exact #{x in F_q^N : p(x) = 0} by kernel grid sweep."""
    _check_prime(q)
    if q**p.nvars > budget:
        raise BudgetError(
            f"{q}^{p.nvars} points exceed the budget of {budget}"
        )
    compacted, used = p.compact()
    multiplier = q ** (p.nvars - len(used))
    return multiplier * _brute_compact(compacted, q, threads)


def _brute_compact(p: MPoly, q: int, threads: int = 1) -> int:
    """Count zeros of a polynomial with no unused variables."""
    m = p.nvars
    if m == 0:
        cv = p.constant_value()
        return 1 if cv % q == 0 else 0
    # peel leading variables until the kernel grid fits in memory
    if q**m > CHUNK_GRID:
        jobs = [p.substitute(0, a) for a in range(q)]
        parts = []

        def run(sub):
            dropped = _drop_var(_reduce_mod(sub, q), 0)
            return _brute_compact(dropped, q)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(run, jobs))
        else:
            parts = [run(sub) for sub in jobs]
        return sum(parts)
    last = m - 1
    if p.degree_in(last) <= 1:
        f = p.partial(last)
        g = p.substitute(last, 0)
        fc, fe = _poly_arrays(_drop_var(f, last))
        gc, ge = _poly_arrays(_drop_var(g, last))
        return kernels.count_zeros_single_linear(fc, fe, gc, ge, q, last)
    coeffs, exps = _poly_arrays(p)
    return kernels.count_zeros_set([(coeffs, exps)], q, m)


# -- modular polynomial helpers ------------------------------------------------


def _reduce_mod(p: MPoly, q: int) -> MPoly:
    return MPoly(p.nvars, {k: c % q for k, c in p.terms.items()})


def _monic_mod(p: MPoly, q: int) -> MPoly:
    lead = p.leading_term()
    if lead is None:
        return p
    inv = pow(lead[1] % q, q - 2, q)
    if inv == 1:
        return p
    return MPoly(p.nvars, {k: c * inv % q for k, c in p.terms.items()})


def _drop_var(p: MPoly, var: int) -> MPoly:
    """Remove an unused variable position from the exponent packing."""
    if p.degree_in(var) != 0:
        raise ValueError("variable still in use")
    lo_mask = (1 << (8 * var)) - 1
    out = {}
    for k, c in p.terms.items():
        out[(k & lo_mask) | ((k >> 8) & ~lo_mask)] = c
    return MPoly(p.nvars - 1, out)


def _sqrt_mod(p: MPoly, q: int):
    """Square root of p in F_q[vars] under graded-lex, or None.

    In characteristic 2 a polynomial with all-ones style coefficients is a
    square exactly when every exponent is even (Frobenius); in odd
    characteristic the leading-term descent of the integer version works
    with field divisions.
    """
    if p.is_zero():
        return p
    n = p.nvars
    if q == 2:
        out = {}
        for exps, c in p.sorted_terms():
            if any(e % 2 for e in exps):
                return None
            out[_pack(tuple(e // 2 for e in exps))] = c % q
        return MPoly(n, out)
    lead, c = p.leading_term()
    if any(e % 2 for e in lead):
        return None
    s = _mod_sqrt_int(c % q, q)
    if s is None:
        return None
    half_lead = tuple(e // 2 for e in lead)
    root = MPoly.monomial(n, half_lead, s)
    inv2s = pow(2 * s % q, q - 2, q)
    residual = _reduce_mod(p - root * root, q)
    max_steps = 8 * len(p.terms) + 64
    while residual.terms:
        lr, cr = residual.leading_term()
        exps = tuple(a - b for a, b in zip(lr, half_lead))
        if any(e < 0 for e in exps):
            return None
        t = MPoly.monomial(n, exps, cr * inv2s % q)
        residual = _reduce_mod(residual - t * (root + root + t), q)
        root = _reduce_mod(root + t, q)
        max_steps -= 1
        if max_steps <= 0:
            return None
    return root


def _mod_sqrt_int(a: int, q: int):
    """Square root of a residue mod an odd prime (Tonelli-Shanks)."""
    a %= q
    if a == 0:
        return 0
    if pow(a, (q - 1) // 2, q) != 1:
        return None
    if q % 4 == 3:
        return pow(a, (q + 1) // 4, q)
    # Tonelli-Shanks
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    n = 2
    while pow(n, (q - 1) // 2, q) != q - 1:
        n += 1
    x = pow(a, (s + 1) // 2, q)
    b = pow(a, s, q)
    g = pow(n, s, q)
    r = e
    while True:
        t = b
        m = 0
        while t != 1:
            t = t * t % q
            m += 1
        if m == 0:
            return x
        gs = pow(g, 1 << (r - m - 1), q)
        g = gs * gs % q
        x = x * gs % q
        b = b * g % q
        r = m


def _pack(exps) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e:
            key |= e << (8 * i)
    return key


# -- the split recursion --------------------------------------------------------


class _SplitCounter:
    """Memoized common-zero counter for sets of polynomials over F_q."""

    def __init__(self, q: int, leaf_grid: int = LEAF_GRID,
                 brute_budget: int = DEFAULT_BUDGET):
        _check_prime(q)
        self.q = q
        self.leaf_grid = leaf_grid
        self.brute_budget = brute_budget
        self.memo = {}

    # canonical state: tuple of monic mod-q polynomials over compacted vars
    def _canon(self, polys, m: int):
        """Returns (impossible, q_power, m', tuple of polys)."""
        q = self.q
        seen = {}
        for p in polys:
            p = _reduce_mod(p, q)
            if p.is_zero():
                continue
            if p.constant_value() is not None:
                return True, 0, 0, ()
            while True:
                root = _sqrt_mod(p, q)
                if root is None or root == p or root.constant_value() is not None:
                    break
                p = root
            p = _monic_mod(p, q)
            seen[p] = True
        if not seen:
            return False, m, 0, ()
        used = set()
        for p in seen:
            used.update(p.variables_used())
        used = sorted(used)
        pos = {v: i for i, v in enumerate(used)}
        out = []
        for p in seen:
            src = p
            remap = {}
            for k, c in src.terms.items():
                exps = _unpack_local(k, src.nvars)
                newe = [0] * len(used)
                for v, e in enumerate(exps):
                    if e:
                        newe[pos[v]] = e
                remap[_pack(newe)] = c
            out.append(MPoly(len(used), remap))
        out.sort(key=lambda p: (len(p.terms), sorted(p.terms.items())))
        return False, m - len(used), len(used), tuple(out)

    def count(self, polys, m: int) -> int:
        impossible, dropped, m2, state = self._canon(polys, m)
        if impossible:
            return 0
        return self.q**dropped * self._count_state(state, m2)

    def _count_state(self, state, m: int) -> int:
        q = self.q
        if not state:
            return q**m
        key = (m, state)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        result = self._evaluate(state, m)
        self.memo[key] = result
        return result

    def _evaluate(self, state, m: int) -> int:
        q = self.q
        if q**m <= self.leaf_grid:
            return self._leaf(state, m)
        pivot = self._pick_pivot(state)
        if pivot is None:
            if q**m <= self.brute_budget:
                return self._leaf(state, m)
            return self._value_split(state, m)
        idx, var = pivot
        p = state[idx]
        others = [s for i, s in enumerate(state) if i != idx]
        f = p.partial(var)
        g = p.substitute(var, 0)
        # branch A: f != 0 forces the pivot variable; others reduce by
        # substituting x = -g/f and clearing f powers (or directly when
        # they miss the variable)
        reduced = []
        for s in others:
            d = s.degree_in(var)
            if d == 0:
                reduced.append(s)
            elif d == 1 and g.is_zero():
                reduced.append(s.substitute(var, 0))
            else:
                reduced.append(_clear_substitute(s, var, f, g, q))
        reduced = [_drop_var(_reduce_mod(r, q), var) for r in reduced]
        f_dropped = _drop_var(_reduce_mod(f, q), var)
        count_a = self.count(reduced, m - 1) - self.count(
            reduced + [f_dropped], m - 1
        )
        # branch B: f = 0, so also g = 0; the pivot generator splits
        count_b = self.count([f, g] + others, m)
        return count_a + count_b

    def _pick_pivot(self, state):
        """Generator and variable with the sparsest linear coefficient,
        among variables the generator is exactly linear in."""
        best = None
        for idx, p in enumerate(state):
            occupancy = {}
            quadratic = set()
            for k in p.terms:
                kk = k
                v = 0
                while kk:
                    e = kk & 0xFF
                    if e == 1:
                        occupancy[v] = occupancy.get(v, 0) + 1
                    elif e > 1:
                        quadratic.add(v)
                    kk >>= 8
                    v += 1
            for v, cnt in occupancy.items():
                if v in quadratic:
                    continue
                cand = (cnt, v, idx)
                if best is None or cand < best:
                    best = cand
        if best is None:
            return None
        return best[2], best[1]

    def _leaf(self, state, m: int) -> int:
        q = self.q
        if q**m > CHUNK_GRID:
            # substitute the first variable and recurse per value
            total = 0
            for a in range(q):
                subbed = [
                    _drop_var(_reduce_mod(p.substitute(0, a), q), 0)
                    for p in state
                ]
                total += self.count(subbed, m - 1)
            return total
        arrays = [_poly_arrays(p) for p in state]
        return kernels.count_zeros_set(arrays, q, m)

    def _value_split(self, state, m: int) -> int:
        # no generator is linear in any variable: enumerate one variable
        counts = {}
        for p in state:
            for v in p.variables_used():
                counts[v] = counts.get(v, 0) + 1
        var = max(counts, key=lambda v: (counts[v], -v))
        total = 0
        for a in range(self.q):
            subbed = [p.substitute(var, a) for p in state]
            dropped = [_drop_var(_reduce_mod(p, self.q), var) for p in subbed]
            total += self.count(dropped, m - 1)
        return total


def _unpack_local(key: int, nvars: int) -> tuple:
    return tuple((key >> (8 * i)) & 0xFF for i in range(nvars))


def _clear_substitute(s: MPoly, var: int, f: MPoly, g: MPoly, q: int) -> MPoly:
    """f^d * s with x_var = -g/f substituted, d the degree of s in var.

    Vanishes exactly where s does on the locus f != 0."""
    d = s.degree_in(var)
    shift = 8 * var
    parts = {}
    for k, c in s.terms.items():
        e = (k >> shift) & 0xFF
        rest = k & ~(0xFF << shift)
        bucket = parts.setdefault(e, {})
        bucket[rest] = bucket.get(rest, 0) + c
    acc = MPoly.zero(s.nvars)
    neg_g = _reduce_mod(-g, q)
    pow_g = {0: MPoly.one(s.nvars)}
    pow_f = {0: MPoly.one(s.nvars)}
    for e in range(1, d + 1):
        pow_g[e] = _reduce_mod(pow_g[e - 1] * neg_g, q)
        pow_f[e] = _reduce_mod(pow_f[e - 1] * f, q)
    for e, bucket in parts.items():
        piece = MPoly(s.nvars, bucket) * pow_g[e] * pow_f[d - e]
        acc = acc + piece
    return _reduce_mod(acc, q)


def count_affine_split(p: MPoly, q: int, order=None,
                       budget: int = DEFAULT_BUDGET,
                       counter: "_SplitCounter | None" = None) -> int:
    """Exact zero count by the memoized elimination recursion.

    ``order`` optionally lists variables by elimination priority; the
    greedy sparsest-coefficient rule still decides, with its index
    tie-break following the requested priority.  Counts are permutation
    invariant, so any order gives the same value.
    """
    if order is not None:
        order = tuple(order)
        if sorted(order) != list(range(p.nvars)):
            raise ValueError("order must be a permutation of the variables")
        positions = [0] * p.nvars
        for priority, var in enumerate(order):
            positions[var] = priority
        p = p.embed(p.nvars, positions)
    if counter is None:
        counter = _SplitCounter(q, brute_budget=budget)
    return counter.count([p], p.nvars)


# -- projective counts and closed forms -----------------------------------------


def projective_from_affine(p: MPoly, affine: int, q: int) -> int:
    """(affine - 1)/(q - 1), with the empty locus of a nonzero constant
    (a rankless tree polynomial) counted as 0."""
    if p.constant_value() is not None:
        return 0 if p.constant_value() % q else (q**p.nvars - 1) // (q - 1)
    num = affine - 1
    if num % (q - 1):
        raise AssertionError(
            f"affine count {affine} not 1 mod {q - 1}: homogeneity bug"
        )
    return num // (q - 1)


def count_projective(p: MPoly, q: int, method: str = "split",
                     budget: int = DEFAULT_BUDGET) -> int:
    """(affine - 1)/(q - 1) for a homogeneous polynomial, exactly."""
    if not p.is_homogeneous() or p.is_zero():
        raise ValueError("projective count needs a nonzero homogeneous input")
    if method == "split":
        affine = count_affine_split(p, q, budget=budget)
    elif method == "brute":
        affine = count_affine_brute(p, q, budget=budget)
    else:
        raise ValueError(f"unknown method {method!r}")
    return projective_from_affine(p, affine, q)


def sym2_p2_count(q: int) -> int:
    """Points of the symmetric square of the projective plane over F_q,
    by the orbit count ((#P2(q))^2 + #P2(q^2)) / 2."""
    p2 = q * q + q + 1
    p2_sq = q**4 + q**2 + 1
    total = p2 * p2 + p2_sq
    assert total % 2 == 0
    return total // 2


# -- rank strata -----------------------------------------------------------------


def coefficient_matrices(g: Graph):
    """Integer symmetric matrices N_e with sum_e A_e N_e the normal form
    of the fixed first spanning forest (variables in reordered positions)."""
    ctx = diagonal_normal_form(g, first_spanning_forest(g), validate=False)
    h = ctx.h1
    E = g.edge_count
    mats = np.zeros((E, h, h), dtype=np.int64)
    for j in range(h):
        for k in range(h):
            p = ctx.matrix.entries[j][k]
            for exps, c in p.sorted_terms():
                for v, e in enumerate(exps):
                    if e == 1:
                        mats[v, j, k] += c
    return mats, ctx


def rank_stratum_count(g: Graph, i: int, q: int,
                       budget: int = DEFAULT_BUDGET) -> int:
    """Projective points where the edge-weighted symmetric form drops rank
    below h1 - i."""
    _check_prime(q)
    if i < 0:
        raise ValueError("stratum index must be >= 0")
    E = g.edge_count
    reps = (q**E - 1) // (q - 1)
    if reps > budget:
        raise BudgetError(f"{reps} projective points exceed budget {budget}")
    mats, ctx = coefficient_matrices(g)
    bound = ctx.h1 - i
    if bound <= 0:
        return 0
    return kernels.count_rank_lt(mats, q, bound)


# -- Kontsevich polynomiality fit -------------------------------------------------


@dataclass
class CountReport:
    """Point counts at primes plus the interpolated counting polynomial."""

    graph_id: str
    fit_primes: list
    affine_counts: list
    projective_counts: list
    validation_primes: list
    validation_counts: list
    fitted: list | None   # coefficients, constant term first
    verdict: str          # polynomial | mismatch | undetermined
    failure: str = ""

    def to_json_dict(self) -> dict:
        return {
            "graph": self.graph_id,
            "fit_primes": list(self.fit_primes),
            "affine_counts": [str(c) for c in self.affine_counts],
            "projective_counts": [str(c) for c in self.projective_counts],
            "validation_primes": list(self.validation_primes),
            "validation_counts": [str(c) for c in self.validation_counts],
            "fitted": None
            if self.fitted is None
            else [str(c) for c in self.fitted],
            "verdict": self.verdict,
            "failure": self.failure,
        }


def lagrange_interpolate(points) -> list:
    """Exact interpolation; returns Fraction coefficients, constant first."""
    # incremental Newton form converted to monomial coefficients
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    n = len(points)
    divided = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - level])
    coeffs = [Fraction(0)] * n
    # build sum_k divided[k] * prod_{j<k} (x - xs[j])
    basis = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(n):
        for j, b in enumerate(basis):
            coeffs[j] += divided[k] * b
        if k + 1 < n:
            new_basis = [Fraction(0)] * n
            for j in range(k + 1):
                if basis[j]:
                    new_basis[j + 1] += basis[j]
                    new_basis[j] -= xs[k] * basis[j]
            basis = new_basis
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def fit_point_count_polynomial(g: Graph, fit_primes, validation_primes,
                               method: str = "split",
                               budget: int = DEFAULT_BUDGET,
                               graph_id: str = "graph") -> CountReport:
    """Interpolate projective counts over the fit primes and validate.

    Verdict is "polynomial" only when the interpolant has integer
    coefficients, degree at most dim X = E - 2, and reproduces every
    validation prime exactly.
    """
    from .kirchhoff import psi_spanning_trees

    fit_primes = sorted(set(int(q) for q in fit_primes))
    validation_primes = sorted(set(int(q) for q in validation_primes))
    for q in fit_primes + validation_primes:
        _check_prime(q)
    psi = psi_spanning_trees(g)
    E = g.edge_count
    needed = E - 1  # dim X + 1 interpolation points
    if len(fit_primes) < needed:
        raise ValueError(
            f"need at least {needed} fit primes for {E} edges, got "
            f"{len(fit_primes)}"
        )
    affine, projective = [], []
    for q in fit_primes:
        a = (
            count_affine_split(psi, q, budget=budget)
            if method == "split"
            else count_affine_brute(psi, q, budget=budget)
        )
        affine.append(a)
        projective.append(projective_from_affine(psi, a, q))
    coeffs = lagrange_interpolate(list(zip(fit_primes, projective)))
    report = CountReport(
        graph_id=graph_id,
        fit_primes=fit_primes,
        affine_counts=affine,
        projective_counts=projective,
        validation_primes=validation_primes,
        validation_counts=[],
        fitted=None,
        verdict="undetermined",
    )
    if any(c.denominator != 1 for c in coeffs):
        report.verdict = "mismatch"
        report.failure = "non-integer interpolation coefficients"
        return report
    if len(coeffs) - 1 > E - 2:
        report.verdict = "mismatch"
        report.failure = f"degree {len(coeffs) - 1} exceeds dim X = {E - 2}"
        return report
    report.fitted = [int(c) for c in coeffs]
    for q in validation_primes:
        a = (
            count_affine_split(psi, q, budget=budget)
            if method == "split"
            else count_affine_brute(psi, q, budget=budget)
        )
        report.validation_counts.append(projective_from_affine(psi, a, q))
    if not validation_primes:
        return report
    for q, observed in zip(validation_primes, report.validation_counts):
        predicted = sum(c * q**k for k, c in enumerate(report.fitted))
        if predicted != observed:
            report.verdict = "mismatch"
            report.failure = f"validation failed at q={q}"
            return report
    report.verdict = "polynomial"
    return report


# -- the seven-step stratification trace -------------------------------------------


@dataclass
class StratificationTrace:
    """Symbolic record of the projection cascade on the normal form."""

    square_identity_holds: bool          # first-pair product is a square
    square_root_matches_minor: bool
    product_identity_holds: bool         # second-pair product of minors
    product_identity_sign: int
    eliminant_degree: int                # degree in the step-7 probe variable
    discriminant_is_square: bool
    splits: bool

    def to_json_dict(self) -> dict:
        return {
            "square_identity": self.square_identity_holds,
            "square_root_matches_minor": self.square_root_matches_minor,
            "product_identity": self.product_identity_holds,
            "product_identity_sign": self.product_identity_sign,
            "eliminant_degree": self.eliminant_degree,
            "discriminant_is_square": self.discriminant_is_square,
            "splits": self.splits,
        }


def _square_up_to_rational(p: MPoly) -> bool:
    """Is p a square in Q[vars]?  The content must be a square rational and
    the primitive part a square polynomial."""
    if p.is_zero():
        return True
    lead = p.leading_term()
    if lead[1] < 0:
        return False
    c = p.content()
    pp = p.exact_divide(MPoly.constant(p.nvars, c))
    if isqrt(c) ** 2 != c:
        return False
    return pp.perfect_square_root() is not None


def stratification_trace(g: Graph) -> StratificationTrace:
    """Run the elimination cascade against the expanded graph matrix.

    Requires 2n edges and n loops.  Edges are reordered so that the
    complement of the first spanning forest takes the leading variable
    positions (the leading n-fold monomial then has coefficient 1).  Stage
    one checks that eliminating the first two variables produces a perfect
    square, the mixed minor squared; stage two checks that the next
    elimination factors into the two doubly-mixed minors; stage three
    eliminates one more variable from that pair and asks whether the
    result splits into factors of degree <= 1 in the following variable,
    decided by a square-discriminant test on the quadratic.
    """
    from .kirchhoff import expanded_dodgson, psi_spanning_trees

    n2 = g.edge_count
    h = loop_rank(g)
    if n2 != 2 * h:
        raise ValueError("trace needs a graph with twice as many edges as loops")
    if h < 3:
        raise ValueError("trace needs at least 3 loops")
    tree = first_spanning_forest(g)
    nontree = [i for i in range(n2) if not tree.edge_set >> i & 1]
    tree_edges = [i for i in range(n2) if tree.edge_set >> i & 1]
    order = tuple(nontree + tree_edges)
    inverse = [0] * n2
    for newpos, e in enumerate(order):
        inverse[e] = newpos
    psi = psi_spanning_trees(g).embed(n2, inverse)

    def d(p, v):
        return p.partial(v)

    def z(p, v):
        return p.substitute(v, 0)

    # stage one: eliminate variables 0,1
    lhs1 = d(psi, 0).substitute(1, 0) * d(psi, 1).substitute(0, 0) - d(
        d(psi, 0), 1
    ) * z(z(psi, 0), 1)
    root = lhs1.perfect_square_root()
    square_ok = root is not None
    minor01 = expanded_dodgson(g, (0,), (1,), order)
    root_matches = square_ok and (root == minor01 or root == -minor01)

    # stage two: eliminate variables 2,3 from the mixed minor
    m = minor01
    lhs2 = d(d(m, 2), 3) * z(z(m, 2), 3) - d(m, 2).substitute(3, 0) * d(
        m, 3
    ).substitute(2, 0)
    f13 = expanded_dodgson(g, (0, 2), (1, 3), order)
    f14 = expanded_dodgson(g, (0, 3), (1, 2), order)
    prod = f13 * f14
    if lhs2 == prod:
        product_ok, product_sign = True, 1
    elif lhs2 == -prod:
        product_ok, product_sign = True, -1
    else:
        product_ok, product_sign = False, 0

    # stage three: eliminate variable 4 from the pair, probe variable 5
    elim = d(f13, 4) * z(f14, 4) - z(f13, 4) * d(f14, 4)
    deg = elim.degree_in(5)
    if deg <= 1:
        disc_square = True
    else:
        a = d(d(elim, 5), 5).exact_divide(MPoly.constant(elim.nvars, 2))
        b = d(elim, 5).substitute(5, 0)
        c = z(elim, 5)
        disc = b * b - 4 * a * c
        disc_square = _square_up_to_rational(disc)
    return StratificationTrace(
        square_identity_holds=square_ok,
        square_root_matches_minor=root_matches,
        product_identity_holds=product_ok,
        product_identity_sign=product_sign,
        eliminant_degree=deg,
        discriminant_is_square=disc_square,
        splits=disc_square,
    )
