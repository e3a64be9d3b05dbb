"""Exact resultants of integer polynomials.

``resultant`` runs the subresultant remainder sequence over Z.  The two
families used throughout are Res(f, t^r - 1) and Res(f, nu_r) with
nu_r = 1 + t + ... + t^(r-1).  Laurent inputs are shifted to min_exp 0
before anything else; the signed value refers to that representative.
"""

from __future__ import annotations

from .cyclotomic import cyclotomic_poly, divisors
from .errors import DegenerateInputError, DomainError
from .poly import LaurentPoly, content, pseudo_remainder


def _res_lists(a: list, b: list) -> int:
    # Cohen, "A Course in Computational Algebraic Number Theory", Alg. 3.3.7
    da, db = len(a) - 1, len(b) - 1
    sign = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            sign = -1
    if db == 0:
        return sign * b[0] ** da
    ca = content(LaurentPoly(tuple(a)))
    cb = content(LaurentPoly(tuple(b)))
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    scale = ca ** db * cb ** da
    g = h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = pseudo_remainder(a, b)
        a = b
        if not r:
            return 0
        div = g * h ** delta
        b = [x // div for x in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)
        if len(b) - 1 <= 0:
            break
    da = len(a) - 1
    if da == 0:
        h = 1
    elif da == 1:
        h = b[0]
    else:
        h = b[0] ** da // h ** (da - 1)
    return sign * scale * h


def resultant(f: LaurentPoly, g: LaurentPoly) -> int:
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f."""
    if not f.coeffs or not g.coeffs:
        raise DegenerateInputError("resultant with the zero polynomial")
    return _res_lists(list(f.coeffs), list(g.coeffs))


def t_power_minus_one(r: int) -> LaurentPoly:
    if r < 1:
        raise DomainError("r must be positive")
    return LaurentPoly((-1,) + (0,) * (r - 1) + (1,))


def nu(r: int) -> LaurentPoly:
    """nu_r = t^(r-1) + ... + t + 1."""
    if r < 1:
        raise DomainError("r must be positive")
    return LaurentPoly((1,) * r)


def res_cyclic(f: LaurentPoly, r: int) -> int:
    """Signed Res(f, t^r - 1)."""
    return resultant(f, t_power_minus_one(r))


def res_nu(f: LaurentPoly, r: int) -> int:
    """Signed Res(f, nu_r)."""
    return resultant(f, nu(r))


def res_cyclic_by_factors(f: LaurentPoly, r: int, *, skip=()) -> int:
    """prod of Res(f, Phi_d) over d | r, d not in ``skip``.

    With an empty ``skip`` this equals Res(f, t^r - 1); skipping d drops
    Phi_d from t^r - 1 before taking the resultant.
    """
    out = 1
    for d in divisors(r):
        if d in skip:
            continue
        out *= resultant(f, cyclotomic_poly(d))
        if out == 0:
            return 0
    return out


def sylvester_matrix(f: LaurentPoly, g: LaurentPoly) -> list:
    """Sylvester matrix of the representatives (descending coefficient rows)."""
    a = list(reversed(f.coeffs))
    b = list(reversed(g.coeffs))
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (size - n - 1 - i))
    return rows
