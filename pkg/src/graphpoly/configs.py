"""Configuration polynomials for linear subspaces of the edge space.

A configuration is a subspace of Q[E] given by a basis matrix; its
polynomial is the determinant of the weighted sum of rank-1 Gram forms,
one per edge.  Coefficients are squared minors of the basis matrix, the
dual configuration is the orthogonal complement, and the two polynomials
satisfy a monomial-reversal functional equation up to a nonzero constant.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from .mpoly import MPoly, SymbolicMatrix, determinant


class Configuration:
    """Subspace of Q[E] spanned by the rows of an exact rational matrix."""

    __slots__ = ("edge_count", "dim", "basis")

    def __init__(self, edge_count: int, basis_rows):
        rows = [tuple(Fraction(x) for x in row) for row in basis_rows]
        for row in rows:
            if len(row) != edge_count:
                raise ValueError("basis row length must equal edge count")
        self.edge_count = edge_count
        self.dim = len(rows)
        self.basis = tuple(rows)
        if self.dim and _rank(rows) != self.dim:
            raise ValueError("basis matrix is rank deficient")

    def integer_rows(self):
        """Rows scaled to integers; scaling multiplies the polynomial by a
        rational square, which every comparison here tolerates."""
        out = []
        for row in self.basis:
            m = lcm(*(f.denominator for f in row)) if row else 1
            ints = [int(f * m) for f in row]
            g = 0
            for x in ints:
                g = gcd(g, x)
            if g > 1:
                ints = [x // g for x in ints]
            out.append(tuple(ints))
        return out

    def to_json_dict(self) -> dict:
        return {
            "edges": self.edge_count,
            "basis": [[str(f) for f in row] for row in self.basis],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Configuration":
        return cls(int(data["edges"]), [[Fraction(x) for x in row] for row in data["basis"]])

    @classmethod
    def from_json(cls, text: str) -> "Configuration":
        return cls.from_json_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"Configuration(edges={self.edge_count}, dim={self.dim})"


def _rank(rows) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    col = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(m)):
            if m[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def configuration_polynomial(c: Configuration) -> MPoly:
    """det(sum_e A_e M_e) with M_e the rank-1 form of the e-th coordinate.

    Computed from the denominator-cleared basis, so the result has integer
    coefficients and equals the exact polynomial of the caller's basis
    times a fixed positive rational square.
    """
    rows = c.integer_rows()
    d = c.dim
    E = c.edge_count
    entries = []
    for i in range(d):
        line = []
        for j in range(d):
            coeffs = {}
            for e in range(E):
                v = rows[i][e] * rows[j][e]
                if v:
                    coeffs[1 << (8 * e)] = v
            line.append(MPoly(E, coeffs))
        entries.append(line)
    return determinant(SymbolicMatrix(entries)) if d else MPoly.one(E)


def pluecker_coefficient_check(c: Configuration) -> bool:
    """Every coefficient of the polynomial is the squared maximal minor of
    the basis matrix on the matching column set."""
    rows = c.integer_rows()
    psi = configuration_polynomial(c)
    d, E = c.dim, c.edge_count
    for cols in combinations(range(E), d):
        minor = _int_det([[rows[i][e] for e in cols] for i in range(d)])
        exps = [0] * E
        for e in cols:
            exps[e] = 1
        if psi.coefficient(exps) != minor * minor:
            return False
    return True


def _int_det(m) -> int:
    n = len(m)
    if n == 0:
        return 1
    m = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for k in range(n):
        pivot = None
        for i in range(k, n):
            if m[i][k] != 0:
                pivot = i
                break
        if pivot is None:
            return 0
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    assert det.denominator == 1
    return int(det)


def dual_configuration(c: Configuration) -> Configuration:
    """Orthogonal complement of the row space under the coordinate pairing.

    The complement of a full space is the empty configuration, whose
    polynomial is 1 by the 0x0 determinant convention.
    """
    d, E = c.dim, c.edge_count
    if d == E:
        return Configuration(E, [])
    # reduced row echelon form, then the standard nullspace basis
    m = [list(row) for row in c.basis]
    pivots = []
    r = 0
    for col in range(E):
        pivot = None
        for i in range(r, d):
            if m[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][col]
        m[r] = [x / pv for x in m[r]]
        for i in range(d):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [col for col in range(E) if col not in pivots]
    rows = []
    for fc in free:
        vec = [Fraction(0)] * E
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        rows.append(vec)
    return Configuration(E, rows)


def monomial_reversal(p: MPoly) -> MPoly:
    """(prod_e A_e) * p(1/A) for a multilinear p: complement each support."""
    if not p.is_multilinear():
        raise ValueError("monomial reversal needs a multilinear polynomial")
    full = [1] * p.nvars
    out = {}
    for exps, coef in p.sorted_terms():
        comp = tuple(f - e for f, e in zip(full, exps))
        out[_pack_exps(comp)] = coef
    return MPoly(p.nvars, out)


def _pack_exps(exps) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e:
            key |= e << (8 * i)
    return key


def proportional(p: MPoly, r: MPoly):
    """Nonzero rational lam with lam * p == r, or None."""
    if p.is_zero() or r.is_zero():
        return Fraction(1) if p.is_zero() and r.is_zero() else None
    anchor = next(iter(p.terms))
    if anchor not in r.terms:
        return None
    lam = Fraction(r.terms[anchor], p.terms[anchor])
    num, den = lam.numerator, lam.denominator
    if p * num == r * den:
        return lam
    return None


def functional_equation_check(c: Configuration):
    """Existence of a nonzero constant lam with
    lam * Psi_V(A) = (prod A_e) * Psi_dual(1/A); returns (holds, lam)."""
    if c.dim >= c.edge_count:
        raise ValueError("functional equation needs dim < edge count")
    p = configuration_polynomial(c)
    q = configuration_polynomial(dual_configuration(c))
    rhs = monomial_reversal(q)
    lam = proportional(p, rhs)
    return (lam is not None), lam
