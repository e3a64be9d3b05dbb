"""Cyclotomic polynomials, totient/Möbius functions and cyclotomic divisors."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm

from .errors import DegenerateInputError, DivisibilityError, DomainError
from .poly import ONE, LaurentPoly, _divmod_int_lists

_lock = threading.Lock()
_cyclo_cache: dict = {}


def factorize_int(n: int) -> dict:
    """Trial-division factorization; n is always small here."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def euler_phi(d: int) -> int:
    if d < 1:
        raise DomainError("euler_phi needs a positive integer")
    result = d
    for p in factorize_int(d):
        result -= result // p
    return result


def mobius(d: int) -> int:
    if d < 1:
        raise DomainError("mobius needs a positive integer")
    f = factorize_int(d)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def cyclotomic_poly(d: int) -> LaurentPoly:
    """Phi_d, via t^d - 1 divided by the lower cyclotomics (memoized)."""
    if d < 1:
        raise DomainError("cyclotomic index must be positive")
    with _lock:
        cached = _cyclo_cache.get(d)
    if cached is not None:
        return cached
    num = [-1] + [0] * (d - 1) + [1]
    for e in divisors(d)[:-1]:
        num, rem = _divmod_int_lists(num, cyclotomic_poly(e).coeffs, exact=True)
        if any(rem):
            raise DivisibilityError(f"internal: Phi_{e} does not divide t^{d}-1")
    phi = LaurentPoly(tuple(num))
    with _lock:
        _cyclo_cache[d] = phi
    return phi


def cyclotomic_value_at_one(d: int) -> int:
    if d < 1:
        raise DomainError("cyclotomic index must be positive")
    if d == 1:
        return 0
    f = factorize_int(d)
    if len(f) == 1:
        return next(iter(f))
    return 1


def max_cyclotomic_index(degree: int) -> int:
    """Every d with phi(d) <= degree satisfies d <= this bound (phi(d) >= sqrt(d/2))."""
    return max(2, 2 * degree * degree)


@dataclass(frozen=True)
class CycloFactorization:
    factors: tuple  # ((d, e_d), ...) sorted by d
    gamma: int
    non_cyclotomic_part: LaurentPoly
    q: int
    d_set: frozenset = field(default=frozenset())

    @property
    def g(self) -> LaurentPoly:
        return self.non_cyclotomic_part

    def multiplicity(self, d: int) -> int:
        return dict(self.factors).get(d, 0)

    def reassemble(self) -> LaurentPoly:
        out = self.non_cyclotomic_part
        for d, e in self.factors:
            out = out * cyclotomic_poly(d) ** e
        return out


@lru_cache(maxsize=4096)
def cyclo_factorize(delta: LaurentPoly) -> CycloFactorization:
    """Split off every cyclotomic divisor of delta with its exact multiplicity.

    The cofactor keeps delta's sign, content and position (min_exp), so that
    ``reassemble()`` reproduces delta exactly.
    """
    if not delta.coeffs:
        raise DegenerateInputError("cannot factor the zero polynomial")
    g = delta.representative()
    factors = []
    bound = max_cyclotomic_index(g.degree)
    for d in range(1, bound + 1):
        if euler_phi(d) > g.degree:
            continue
        phi = cyclotomic_poly(d)
        e = 0
        while g.degree >= phi.degree:
            q, rem = _divmod_int_lists(list(g.coeffs), phi.coeffs, exact=False)
            if any(rem):
                break
            g = LaurentPoly(tuple(q))
            e += 1
        if e:
            factors.append((d, e))
    gamma = lcm(*(d for d, _ in factors)) if factors else 1
    q = dict(factors).get(1, 0)
    return CycloFactorization(
        factors=tuple(factors),
        gamma=gamma,
        non_cyclotomic_part=g.shift(delta.min_exp),
        q=q,
        d_set=frozenset(d for d, _ in factors),
    )


def cyclotomic_order(delta: LaurentPoly) -> int:
    return cyclo_factorize(delta).gamma


def cyclotomic_divisors_of(delta: LaurentPoly, r: int, *, exclude_one: bool = False) -> list:
    """The d | r such that Phi_d divides delta."""
    fac = cyclo_factorize(delta)
    return [d for d, _ in fac.factors if r % d == 0 and not (exclude_one and d == 1)]


def product_of_cyclotomics(ds) -> LaurentPoly:
    out = ONE
    for d in ds:
        out = out * cyclotomic_poly(d)
    return out
