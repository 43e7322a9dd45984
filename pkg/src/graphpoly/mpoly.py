"""Sparse multivariate polynomials over arbitrary-precision integers.

Exponent vectors are packed little-endian into a single int (one byte per
variable), so monomial products are plain integer additions.  Canonical
ordering everywhere is graded lexicographic with variable 0 largest.
All values are immutable after construction and safe to share.
"""

from __future__ import annotations

import heapq
import json
from math import gcd, isqrt

MAX_VARS = 32
MAX_EXP = 100  # per-variable cap; keeps byte packing carry-free


def _pack(exps) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e:
            key |= e << (8 * i)
    return key


def _unpack(key: int, nvars: int) -> tuple:
    return tuple((key >> (8 * i)) & 0xFF for i in range(nvars))


def _grlex(exps: tuple) -> tuple:
    return (sum(exps), exps)


def _default_names(nvars: int) -> list:
    return [f"A{i + 1}" for i in range(nvars)]


class MPoly:
    """Sparse polynomial in ``nvars`` variables with integer coefficients."""

    __slots__ = ("nvars", "terms", "_maxexp", "_hash", "_horner", "_modcache")

    def __init__(self, nvars: int, terms: dict):
        if nvars < 0 or nvars > MAX_VARS:
            raise ValueError(f"variable count {nvars} outside [0, {MAX_VARS}]")
        self.nvars = nvars
        self.terms = {k: c for k, c in terms.items() if c != 0}
        maxexp = 0
        for k in self.terms:
            while k:
                b = k & 0xFF
                if b > maxexp:
                    maxexp = b
                k >>= 8
        if maxexp > MAX_EXP:
            raise ValueError(f"exponent {maxexp} exceeds cap {MAX_EXP}")
        self._maxexp = maxexp
        self._hash = None
        self._horner = None
        self._modcache = {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "MPoly":
        return cls(nvars, {0: 1})

    @classmethod
    def constant(cls, nvars: int, c: int) -> "MPoly":
        return cls(nvars, {0: int(c)})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "MPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable {index} out of range for {nvars} variables")
        return cls(nvars, {1 << (8 * index): 1})

    @classmethod
    def monomial(cls, nvars: int, exps, coef: int = 1) -> "MPoly":
        exps = tuple(exps)
        if len(exps) != nvars:
            raise ValueError("exponent vector length mismatch")
        return cls(nvars, {_pack(exps): int(coef)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def constant_value(self):
        """The integer value if this polynomial is constant, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and 0 in self.terms:
            return self.terms[0]
        return None

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(_unpack(k, self.nvars)) for k in self.terms)

    def degree_in(self, var: int) -> int:
        shift = 8 * var
        d = 0
        for k in self.terms:
            e = (k >> shift) & 0xFF
            if e > d:
                d = e
        return d

    def is_multilinear(self) -> bool:
        return self._maxexp <= 1

    def is_homogeneous(self) -> bool:
        degs = {sum(_unpack(k, self.nvars)) for k in self.terms}
        return len(degs) <= 1

    def variables_used(self) -> tuple:
        used = [False] * self.nvars
        for k in self.terms:
            i = 0
            while k:
                if k & 0xFF:
                    used[i] = True
                k >>= 8
                i += 1
        return tuple(i for i, u in enumerate(used) if u)

    def sorted_terms(self) -> list:
        """Terms as (exponent tuple, coefficient), descending graded-lex."""
        items = [(_unpack(k, self.nvars), c) for k, c in self.terms.items()]
        items.sort(key=lambda t: _grlex(t[0]), reverse=True)
        return items

    def leading_term(self):
        """(exponent tuple, coefficient) of the graded-lex leading term."""
        if not self.terms:
            return None
        best = max((_unpack(k, self.nvars) for k in self.terms), key=_grlex)
        return best, self.terms[_pack(best)]

    def coefficient(self, exps) -> int:
        return self.terms.get(_pack(exps), 0)

    def coefficient_of_squarefree_monomial(self, variables) -> int:
        """Coefficient of the product of the given distinct variables."""
        exps = [0] * self.nvars
        for v in variables:
            if not 0 <= v < self.nvars:
                raise IndexError(f"variable {v} out of range")
            if exps[v]:
                raise ValueError("variables must be distinct")
            exps[v] = 1
        return self.terms.get(_pack(exps), 0)

    def content(self) -> int:
        """GCD of all coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
            if g == 1:
                return 1
        return g

    # -- ring operations ---------------------------------------------------

    def _check_compatible(self, other: "MPoly"):
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other) -> "MPoly":
        if isinstance(other, int):
            other = MPoly.constant(self.nvars, other)
        self._check_compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MPoly(self.nvars, out)

    def __radd__(self, other) -> "MPoly":
        return self.__add__(other)

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        if isinstance(other, int):
            other = MPoly.constant(self.nvars, other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other) -> "MPoly":
        return self.__neg__().__add__(other)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, int):
            if other == 0:
                return MPoly.zero(self.nvars)
            return MPoly(self.nvars, {k: c * other for k, c in self.terms.items()})
        self._check_compatible(other)
        if self._maxexp + other._maxexp > 0xFF:
            return self._mul_careful(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb  # carry-free by the exponent cap
                s = out.get(k, 0) + ca * cb
                if s:
                    out[k] = s
                else:
                    del out[k]
        return MPoly(self.nvars, out)

    def _mul_careful(self, other: "MPoly") -> "MPoly":
        out = {}
        n = self.nvars
        for ka, ca in self.terms.items():
            ea = _unpack(ka, n)
            for kb, cb in other.terms.items():
                eb = _unpack(kb, n)
                k = _pack(tuple(x + y for x, y in zip(ea, eb)))
                s = out.get(k, 0) + ca * cb
                if s:
                    out[k] = s
                else:
                    del out[k]
        return MPoly(n, out)

    def __rmul__(self, other) -> "MPoly":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- substitution and calculus -----------------------------------------

    def substitute(self, var: int, value) -> "MPoly":
        """Exact substitution of ``value`` (MPoly or int) for one variable."""
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable {var} out of range")
        if isinstance(value, int):
            value = MPoly.constant(self.nvars, value)
        self._check_compatible(value)
        shift = 8 * var
        by_exp = {}
        for k, c in self.terms.items():
            e = (k >> shift) & 0xFF
            rest = k & ~(0xFF << shift)
            bucket = by_exp.setdefault(e, {})
            bucket[rest] = bucket.get(rest, 0) + c
        out = MPoly.zero(self.nvars)
        powers = {0: MPoly.one(self.nvars)}
        maxe = max(by_exp) if by_exp else 0
        for e in range(1, maxe + 1):
            powers[e] = powers[e - 1] * value
        for e, bucket in by_exp.items():
            out = out + MPoly(self.nvars, bucket) * powers[e]
        return out

    def compose(self, replacements) -> "MPoly":
        """Simultaneous substitution of every variable by a polynomial."""
        replacements = list(replacements)
        if len(replacements) != self.nvars:
            raise ValueError("need one replacement per variable")
        target = replacements[0].nvars if replacements else 0
        for r in replacements:
            if r.nvars != target:
                raise ValueError("replacements disagree on variable count")
        out = MPoly.zero(target)
        for k, c in self.terms.items():
            exps = _unpack(k, self.nvars)
            piece = MPoly.constant(target, c)
            for i, e in enumerate(exps):
                for _ in range(e):
                    piece = piece * replacements[i]
            out = out + piece
        return out

    def partial(self, var: int) -> "MPoly":
        """Formal partial derivative."""
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable {var} out of range")
        shift = 8 * var
        out = {}
        for k, c in self.terms.items():
            e = (k >> shift) & 0xFF
            if e:
                out[k - (1 << shift)] = c * e
        return MPoly(self.nvars, out)

    def embed(self, nvars: int, positions) -> "MPoly":
        """Re-index into a larger variable space; positions[i] = new index."""
        positions = tuple(positions)
        if len(positions) != self.nvars:
            raise ValueError("positions length mismatch")
        out = {}
        for k, c in self.terms.items():
            src = _unpack(k, self.nvars)
            exps = [0] * nvars
            for i, e in enumerate(src):
                if e:
                    exps[positions[i]] = e
            out[_pack(exps)] = c
        return MPoly(nvars, out)

    def compact(self):
        """Drop unused variables; returns (poly, kept variable indices)."""
        used = self.variables_used()
        pos = {v: i for i, v in enumerate(used)}
        out = {}
        for k, c in self.terms.items():
            src = _unpack(k, self.nvars)
            exps = [0] * len(used)
            for v, e in enumerate(src):
                if e:
                    exps[pos[v]] = e
            out[_pack(exps)] = c
        return MPoly(len(used), out), used

    # -- evaluation over prime fields ---------------------------------------

    def _horner_tree(self):
        """Nested (var, {exp: subtree}) factorization, built once per poly."""
        if self._horner is None:
            n = self.nvars
            items = [(_unpack(k, n), c) for k, c in self.terms.items()]

            def build(entries, var):
                if not entries:
                    return 0
                if var == n:
                    total = sum(c for _, c in entries)
                    return ("c", total)
                branches = {}
                for exps, c in entries:
                    branches.setdefault(exps[var], []).append((exps, c))
                if len(branches) == 1 and 0 in branches:
                    return build(branches[0], var + 1)
                sub = {e: build(v, var + 1) for e, v in branches.items()}
                return ("v", var, sorted(sub.items()))

            self._horner = build(items, 0)
        return self._horner

    def eval_mod_p(self, point, q: int) -> int:
        """Value at ``point`` over F_q (q prime), Horner-style per variable."""
        if len(point) != self.nvars:
            raise ValueError("point length mismatch")
        tree = self._modcache.get(q)
        if tree is None:
            if not is_prime(q):
                raise ValueError(f"{q} is not prime")
            if q >= 1 << 31:
                raise ValueError("prime too large")

            def reduce_tree(node):
                if node == 0:
                    return 0
                if node[0] == "c":
                    return ("c", node[1] % q)
                _, var, branches = node
                return ("v", var, [(e, reduce_tree(s)) for e, s in branches])

            tree = reduce_tree(self._horner_tree())
            self._modcache[q] = tree

        def ev(node):
            if node == 0:
                return 0
            if node[0] == "c":
                return node[1]
            _, var, branches = node
            x = point[var] % q
            acc = 0
            for e, sub in branches:
                acc = (acc + pow(x, e, q) * ev(sub)) % q
            return acc

        return ev(tree)

    # -- exact division and square roots -------------------------------------

    def exact_divide(self, divisor: "MPoly") -> "MPoly":
        """Exact polynomial quotient; raises ArithmeticError on failure."""
        self._check_compatible(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        dc = divisor.constant_value()
        if dc is not None:
            out = {}
            for k, c in self.terms.items():
                qt, r = divmod(c, dc)
                if r:
                    raise ArithmeticError("inexact constant division")
                out[k] = qt
            return MPoly(self.nvars, out)
        n = self.nvars
        lead_d, cd = divisor.leading_term()
        rem = dict(self.terms)
        quot = {}

        # max-heap on graded-lex order with lazy deletion
        def heap_entry(key):
            exps = _unpack(key, n)
            return (-sum(exps), tuple(-e for e in exps), key)

        heap = [heap_entry(k) for k in rem]
        heapq.heapify(heap)
        while rem:
            while heap:
                _, _, kr = heap[0]
                if kr in rem:
                    break
                heapq.heappop(heap)
            lead_r = _unpack(kr, n)
            cr = rem[kr]
            exps = tuple(a - b for a, b in zip(lead_r, lead_d))
            if any(e < 0 for e in exps):
                raise ArithmeticError("inexact polynomial division")
            qc, r = divmod(cr, cd)
            if r:
                raise ArithmeticError("inexact polynomial division")
            kq = _pack(exps)
            quot[kq] = qc
            for kd, cdd in divisor.terms.items():
                k = kq + kd
                old = rem.get(k, 0)
                s = old - qc * cdd
                if s:
                    if old == 0:
                        heapq.heappush(heap, heap_entry(k))
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return MPoly(n, quot)

    def perfect_square_root(self):
        """Square root r with r*r == self, or None.

        Leading-term square root followed by descending-term correction;
        fails fast on a non-square leading monomial or inexact division.
        """
        if not self.terms:
            return MPoly.zero(self.nvars)
        n = self.nvars
        lead, c = self.leading_term()
        if c <= 0:
            return None
        s = isqrt(c)
        if s * s != c:
            return None
        if any(e % 2 for e in lead):
            return None
        half_lead = tuple(e // 2 for e in lead)
        root = MPoly.monomial(n, half_lead, s)
        residual = self - root * root
        twice_lead = 2 * s
        max_steps = 8 * len(self.terms) + 64
        while residual.terms:
            lr, cr = residual.leading_term()
            exps = tuple(a - b for a, b in zip(lr, half_lead))
            if any(e < 0 for e in exps):
                return None
            qc, r = divmod(cr, twice_lead)
            if r:
                return None
            t = MPoly.monomial(n, exps, qc)
            # residual -= t*(2*root + t)
            residual = residual - t * (root + root + t)
            root = root + t
            max_steps -= 1
            if max_steps <= 0:
                return None  # diverging; not a square at plausible size
        return root

    # -- text and JSON forms --------------------------------------------------

    def to_text(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or _default_names(self.nvars)
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json_dict(self, names=None) -> dict:
        names = names or _default_names(self.nvars)
        return {
            "vars": list(names),
            "terms": [
                {"exp": list(exps), "coef": str(c)}
                for exps, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MPoly":
        nvars = len(data["vars"])
        terms = {}
        for t in data["terms"]:
            terms[_pack(tuple(t["exp"]))] = int(t["coef"])
        return cls(nvars, terms)

    def to_json(self, names=None) -> str:
        return json.dumps(self.to_json_dict(names))

    def __repr__(self) -> str:
        return f"MPoly({self.nvars}, {self.to_text()!r})"


# -- primality (Miller-Rabin, deterministic below 3.3e24) ---------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- symbolic matrices and determinants ---------------------------------------


class SymbolicMatrix:
    """Square matrix of MPoly entries sharing one variable space."""

    __slots__ = ("dim", "nvars", "entries")

    def __init__(self, entries, nvars: int | None = None):
        self.dim = len(entries)
        for row in entries:
            if len(row) != self.dim:
                raise ValueError("matrix must be square")
        nv = nvars
        for row in entries:
            for p in row:
                if nv is None:
                    nv = p.nvars
                elif p.nvars != nv:
                    raise ValueError("entries disagree on variable count")
        self.nvars = nv if nv is not None else 0
        self.entries = [list(row) for row in entries]

    def submatrix(self, drop_rows, drop_cols) -> "SymbolicMatrix":
        dr, dc = set(drop_rows), set(drop_cols)
        rows = [i for i in range(self.dim) if i not in dr]
        cols = [j for j in range(self.dim) if j not in dc]
        if len(rows) != len(cols):
            raise ValueError("submatrix must stay square")
        return SymbolicMatrix(
            [[self.entries[i][j] for j in cols] for i in rows], self.nvars
        )

    def is_symmetric(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.dim)
            for j in range(i)
        )

    def __repr__(self) -> str:
        return f"SymbolicMatrix(dim={self.dim}, nvars={self.nvars})"


def det_expansion(m: SymbolicMatrix) -> MPoly:
    """Determinant by minor expansion with memoization on column subsets."""
    n = m.dim
    if n == 0:
        return MPoly.one(m.nvars)
    cache = {}

    def minor(row: int, colmask: int) -> MPoly:
        if row == n:
            return MPoly.one(m.nvars)
        got = cache.get(colmask)
        if got is not None:
            return got
        acc = MPoly.zero(m.nvars)
        sign = 1
        for j in range(n):
            bit = 1 << j
            if not colmask & bit:
                continue
            entry = m.entries[row][j]
            if entry.terms:
                acc = acc + sign * (entry * minor(row + 1, colmask & ~bit))
            sign = -sign
        cache[colmask] = acc
        return acc

    return minor(0, (1 << n) - 1)


def det_bareiss(m: SymbolicMatrix) -> MPoly:
    """Fraction-free Bareiss elimination over the polynomial ring."""
    n = m.dim
    if n == 0:
        return MPoly.one(m.nvars)
    a = [list(row) for row in m.entries]
    sign = 1
    prev = MPoly.one(m.nvars)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return MPoly.zero(m.nvars)
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.exact_divide(prev)
            a[i][k] = MPoly.zero(m.nvars)
        prev = pivot
    result = a[n - 1][n - 1]
    return result if sign > 0 else -result


def determinant(m: SymbolicMatrix, method: str = "auto") -> MPoly:
    """Exact determinant; Bareiss for dim >= 5, minor expansion below."""
    if method == "auto":
        method = "bareiss" if m.dim >= 5 else "expansion"
    if method == "bareiss":
        return det_bareiss(m)
    if method == "expansion":
        return det_expansion(m)
    raise ValueError(f"unknown determinant method {method!r}")
