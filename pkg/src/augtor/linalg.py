"""Exact linear algebra over Z, Q and Z[t, 1/t].

Covers companion matrices, the block matrix obtained by substituting a
companion matrix into a presentation matrix, Smith normal form over Z,
determinants and characteristic polynomials, and invariant factors of a
polynomial matrix over Q[t].
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import DegenerateInputError, PreconditionError, ResourceLimitError
from .poly import ONE, ZERO, LaurentPoly, RatPoly, div_exact, divides
from .resultants import t_power_minus_one

DEFAULT_MAX_SNF_DIM = 10000


def max_snf_dim() -> int:
    raw = os.environ.get("AUGTOR_MAX_SNF_DIM")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_MAX_SNF_DIM


# --------------------------------------------------------------------------
# matrix containers


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        if not rows or not rows[0]:
            raise DegenerateInputError("an integer matrix needs at least one entry")
        if any(len(row) != len(rows[0]) for row in rows):
            raise PreconditionError("ragged integer matrix")
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    def tolist(self) -> list:
        return [list(row) for row in self.rows]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows))


@dataclass(frozen=True)
class PresentationMatrix:
    """N x M matrix over Z[t, 1/t]; columns are relations (M >= N after loading)."""

    entries: tuple

    def __post_init__(self):
        rows = [tuple(LaurentPoly.coerce(x) for x in row) for row in self.entries]
        if not rows or not rows[0]:
            raise DegenerateInputError("a presentation matrix needs at least one entry")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise PreconditionError("ragged presentation matrix")
        if width < len(rows):
            rows = [row + (ZERO,) * (len(rows) - width) for row in rows]
        object.__setattr__(self, "entries", tuple(rows))

    @classmethod
    def cyclic(cls, delta: LaurentPoly) -> "PresentationMatrix":
        return cls(((delta,),))

    @classmethod
    def diagonal(cls, polys: Sequence[LaurentPoly]) -> "PresentationMatrix":
        n = len(polys)
        return cls(tuple(tuple(polys[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    @property
    def n_rows(self) -> int:
        return len(self.entries)

    @property
    def n_cols(self) -> int:
        return len(self.entries[0])

    def is_cyclic(self) -> bool:
        return self.n_rows == 1 and sum(1 for x in self.entries[0] if x) <= 1

    def column_shifted(self) -> "PresentationMatrix":
        """Multiply each column holding negative powers by the unit t^k that clears them."""
        cols = list(zip(*self.entries))
        shifted = []
        for col in cols:
            nonzero = [p.min_exp for p in col if p]
            k = max(0, -min(nonzero)) if nonzero else 0
            shifted.append(tuple(p.shift(k) if p else p for p in col))
        return PresentationMatrix(tuple(zip(*shifted)))


@dataclass(frozen=True)
class SnfResult:
    diagonal: tuple
    free_rank: int
    torsion_order: int

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def elementary_divisors(self) -> tuple:
        return tuple(d for d in self.diagonal if d)


# --------------------------------------------------------------------------
# companion matrices and block substitution


def companion_of(h: LaurentPoly) -> IntMatrix:
    """Companion matrix of a monic h: ones on the superdiagonal, -h_i in the last row."""
    h = h.representative()
    n = h.degree
    if n < 1 or h.leading != 1:
        raise PreconditionError("companion matrix needs a monic polynomial of degree >= 1")
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = 1
    for j in range(n):
        rows[n - 1][j] = -h.coeffs[j]
    return IntMatrix(tuple(map(tuple, rows)))


def companion(r: int) -> IntMatrix:
    """C_r, the companion matrix of t^r - 1."""
    if r < 1:
        raise PreconditionError("r must be positive")
    return companion_of(t_power_minus_one(r))


def _mulmod_t(vec: list, h: Sequence[int]) -> list:
    # vec holds coefficients of a polynomial of degree < n; multiply by t mod monic h
    n = len(vec)
    top = vec[-1]
    out = [0] + vec[:-1]
    if top:
        for j in range(n):
            out[j] -= top * h[j]
    return out


def _reduce_mod(p: LaurentPoly, h: Sequence[int]) -> list:
    n = len(h) - 1
    rem = [0] * max(n, p.max_exp + 1)
    for i, c in enumerate(p.coeffs):
        rem[p.min_exp + i] += c
    for i in range(len(rem) - 1, n - 1, -1):
        c = rem[i]
        if c:
            for j in range(n + 1):
                rem[i - n + j] -= c * h[j]
    return rem[:n]


def poly_block(q: LaurentPoly, h: LaurentPoly) -> list:
    """q(C) for C = companion_of(h): row i holds the coefficients of t^i * q mod h."""
    hc = h.representative().coeffs
    n = len(hc) - 1
    if q.min_exp < 0:
        raise PreconditionError("shift columns before substituting blocks")
    row = _reduce_mod(q, hc) if q else [0] * n
    rows = [row]
    for _ in range(n - 1):
        row = _mulmod_t(row, hc)
        rows.append(row)
    return rows


def check_size(r: int, a: PresentationMatrix) -> None:
    limit = max_snf_dim()
    size = r * max(a.n_rows, a.n_cols)
    if size > limit:
        raise ResourceLimitError(
            f"block matrix dimension {size} exceeds the limit {limit} (set AUGTOR_MAX_SNF_DIM to override)"
        )


def substitute_blocks(a: PresentationMatrix, r: int, modulus: LaurentPoly | None = None) -> IntMatrix:
    """Replace each entry q(t) of ``a`` by the block q(C), C the companion of ``modulus``.

    ``modulus`` defaults to t^r - 1, giving the rN x rM matrix presenting
    M / (t^r - 1) M.  Negative exponents are removed column by column
    (a unit change that does not alter the cokernel).
    """
    if r < 1:
        raise PreconditionError("r must be positive")
    check_size(r, a)
    h = t_power_minus_one(r) if modulus is None else modulus
    n = h.degree
    shifted = a.column_shifted()
    out = [[0] * (n * a.n_cols) for _ in range(n * a.n_rows)]
    for i, row in enumerate(shifted.entries):
        for j, q in enumerate(row):
            if not q:
                continue
            block = poly_block(q, h)
            for bi in range(n):
                dst = out[i * n + bi]
                src = block[bi]
                for bj in range(n):
                    dst[j * n + bj] = src[bj]
    return IntMatrix(tuple(map(tuple, out)))


# --------------------------------------------------------------------------
# Smith normal form over Z


def _smith_diagonal(m: list, n_rows: int, n_cols: int) -> list:
    diag = []
    t = 0
    while t < n_rows and t < n_cols:
        best = None
        for i in range(t, n_rows):
            row = m[i]
            for j in range(t, n_cols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        m[t], m[pi] = m[pi], m[t]
        if pj != t:
            for row in m:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = m[t][t]
            prow = m[t]
            clean = True
            for i in range(t + 1, n_rows):
                v = m[i][t]
                if v:
                    q = _round_div(v, p)
                    row = m[i]
                    for j in range(t, n_cols):
                        if prow[j]:
                            row[j] -= q * prow[j]
                    if row[t]:
                        clean = False
            for j in range(t + 1, n_cols):
                v = prow[j]
                if v:
                    q = _round_div(v, p)
                    for i in range(t, n_rows):
                        c = m[i][t]
                        if c:
                            m[i][j] -= q * c
                    if prow[j]:
                        clean = False
            if not clean:
                # move the smallest leftover in the pivot row/column into the pivot
                best = (abs(p), t, t)
                for i in range(t + 1, n_rows):
                    v = m[i][t]
                    if v and abs(v) < best[0]:
                        best = (abs(v), i, t)
                for j in range(t + 1, n_cols):
                    v = prow[j]
                    if v and abs(v) < best[0]:
                        best = (abs(v), t, j)
                _, bi, bj = best
                if bi != t:
                    m[t], m[bi] = m[bi], m[t]
                if bj != t:
                    for row in m:
                        row[t], row[bj] = row[bj], row[t]
                continue
            bad = None
            for i in range(t + 1, n_rows):
                row = m[i]
                for j in range(t + 1, n_cols):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row = m[bad]
            for j in range(t, n_cols):
                prow[j] += row[j]
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def _round_div(v: int, p: int) -> int:
    q, r = divmod(v, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def smith_normal_form(a) -> SnfResult:
    """Diagonal of the Smith normal form of an integer matrix.

    Pivot on the smallest nonzero absolute value, reduce its row and column
    by rounded division, and fold in any row that breaks divisibility.
    """
    mat = a if isinstance(a, IntMatrix) else IntMatrix(tuple(map(tuple, a)))
    n_rows, n_cols = mat.shape
    diag = _smith_diagonal(mat.tolist(), n_rows, n_cols)
    for i in range(1, len(diag)):
        # belt and braces: enforce the divisibility chain
        for j in range(i, 0, -1):
            x, y = diag[j - 1], diag[j]
            if x == 0 or (y and y % x == 0):
                break
            g = gcd(x, y)
            diag[j - 1], diag[j] = g, x * y // g
    rank = len(diag)
    diagonal = tuple(diag) + (0,) * (min(n_rows, n_cols) - rank)
    return SnfResult(diagonal=diagonal, free_rank=n_rows - rank, torsion_order=prod(diag) if diag else 1)


# --------------------------------------------------------------------------
# determinants and characteristic polynomials


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pk - m[i][k] * m[k][j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


def det_laurent(rows: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Bareiss determinant over the domain Z[t, 1/t]."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = div_exact(m[i][j] * pk - m[i][k] * m[k][j], prev)
        prev = pk
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def charpoly(rows: Sequence[Sequence]) -> list:
    """Characteristic polynomial det(xI - A) over Q, ascending coefficients.

    Hessenberg reduction followed by the standard recurrence; O(n^3).
    """
    n = len(rows)
    h = [[Fraction(x) for x in row] for row in rows]
    for m in range(1, n - 1):
        piv = None
        for i in range(m, n):
            if h[i][m - 1] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        pv = h[m][m - 1]
        for i in range(m + 1, n):
            u = h[i][m - 1] / pv
            if u:
                for j in range(n):
                    h[i][j] -= u * h[m][j]
                for row in h:
                    row[m] += u * row[i]
    # p[k] = charpoly of the leading k x k block (ascending lists)
    polys = [[Fraction(1)]]
    for k in range(1, n + 1):
        cur = [Fraction(0)] + polys[k - 1]  # x * p_{k-1}
        a = h[k - 1][k - 1]
        for i, c in enumerate(polys[k - 1]):
            cur[i] -= a * c
        t = Fraction(1)
        for i in range(1, k):
            t *= h[k - i][k - i - 1]
            coef = t * h[k - i - 1][k - 1]
            if coef:
                for j, c in enumerate(polys[k - i - 1]):
                    cur[j] -= coef * c
        polys.append(cur)
    return polys[n]


def compound_matrix(rows: Sequence[Sequence], k: int) -> list:
    """k-th compound (exterior power): all k x k minors in lexicographic order."""
    n = len(rows)
    subsets = list(combinations(range(n), k))
    out = []
    for rs in subsets:
        out.append([_det_frac([[rows[i][j] for j in cs] for i in rs]) for cs in subsets])
    return out


def _det_frac(rows) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            u = m[i][k] / m[k][k]
            if u:
                for j in range(k, n):
                    m[i][j] -= u * m[k][j]
    return det


# --------------------------------------------------------------------------
# the annihilator construction behind the extended Fox formula


def annihilator_identity_check(phi: LaurentPoly, r: int):
    """Return (det(R R^T), product of the nonzero eigenvalues of phi(C_r)).

    R has rows psi, t psi, ..., t^(s-1) psi with psi = (t^r - 1) / phi and
    s = deg phi.  The two numbers agree up to sign.  The eigenvalue product
    is read off the characteristic polynomial of phi(C_r), independently of
    any resultant.
    """
    if r < 1:
        raise PreconditionError("r must be positive")
    phi = phi.normalized()
    full = t_power_minus_one(r)
    if not phi or not divides(phi, full):
        raise PreconditionError(f"{phi} does not divide t^{r}-1")
    psi = div_exact(full, phi)
    s = phi.degree
    psi_c = list(psi.coeffs)
    R = [[0] * i + psi_c + [0] * (r - len(psi_c) - i) for i in range(s)]
    rrt = [[sum(x * y for x, y in zip(ri, rj)) for rj in R] for ri in R]
    det_rrt = det_int(rrt)
    a = poly_block(phi, full)
    cp = charpoly(a)
    # cp = x^s * prod (x - lambda) over the nonzero eigenvalues
    coef = cp[s]
    eig_prod = coef * (-1) ** (r - s)
    if eig_prod.denominator != 1:
        raise PreconditionError("non-integral eigenvalue product")
    return det_rrt, int(eig_prod)


# --------------------------------------------------------------------------
# invariant factors over Q[t]


def _rat_snf_diagonal(m: list) -> list:
    n_rows, n_cols = len(m), len(m[0])
    diag = []
    t = 0
    while t < n_rows and t < n_cols:
        best = None
        for i in range(t, n_rows):
            for j in range(t, n_cols):
                p = m[i][j]
                if p and (best is None or p.degree < best[0]):
                    best = (p.degree, i, j)
        if best is None:
            break
        _, pi, pj = best
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = m[t][t]
            clean = True
            for i in range(t + 1, n_rows):
                if m[i][t]:
                    q = m[i][t] // p
                    for j in range(t, n_cols):
                        if m[t][j]:
                            m[i][j] = m[i][j] - q * m[t][j]
                    if m[i][t]:
                        clean = False
            for j in range(t + 1, n_cols):
                if m[t][j]:
                    q = m[t][j] // p
                    for i in range(t, n_rows):
                        if m[i][t]:
                            m[i][j] = m[i][j] - q * m[i][t]
                    if m[t][j]:
                        clean = False
            if not clean:
                best = (p.degree, t, t)
                for i in range(t + 1, n_rows):
                    if m[i][t] and m[i][t].degree < best[0]:
                        best = (m[i][t].degree, i, t)
                for j in range(t + 1, n_cols):
                    if m[t][j] and m[t][j].degree < best[0]:
                        best = (m[t][j].degree, t, j)
                _, bi, bj = best
                if bi != t:
                    m[t], m[bi] = m[bi], m[t]
                if bj != t:
                    for row in m:
                        row[t], row[bj] = row[bj], row[t]
                continue
            bad = None
            for i in range(t + 1, n_rows):
                for j in range(t + 1, n_cols):
                    if m[i][j] and (m[i][j] % p):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            for j in range(t, n_cols):
                m[t][j] = m[t][j] + m[bad][j]
        diag.append(m[t][t].monic())
        t += 1
    return diag


def rational_invariant_factors(a: PresentationMatrix) -> list:
    """Invariant factors pi_1 | pi_2 | ... of M tensor Q over Q[t, 1/t].

    Each factor is returned as a primitive integer polynomial with min_exp 0
    and positive leading coefficient.  Units are dropped; free summands show
    up as trailing zero polynomials.
    """
    shifted = a.column_shifted()
    m = [[RatPoly.from_laurent(p) for p in row] for row in shifted.entries]
    diag = _rat_snf_diagonal(m)
    out = []
    for d in diag:
        pi = d.to_int_primitive().representative().normalized()
        if pi.degree >= 1:
            out.append(pi)
    out.extend([ZERO] * (a.n_rows - len(diag)))
    return out


def minors(a: PresentationMatrix, k: int) -> Iterable[LaurentPoly]:
    rows = a.entries
    for rs in combinations(range(a.n_rows), k):
        for cs in combinations(range(a.n_cols), k):
            yield det_laurent([[rows[i][j] for j in cs] for i in rs])
