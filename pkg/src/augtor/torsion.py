"""Betti and torsion numbers of M_r = M / (t^r - 1) M and its reduced variant.

Two independent routes are available for every cyclic module: closed
formulas built from resultants, and the Smith normal form of the block
matrix.  The SNF route is treated as authoritative; ``torsion`` cross-checks
the two whenever the block matrix is small.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import (
    cyclo_factorize,
    cyclotomic_poly,
    divisors,
    euler_phi,
    mobius,
    product_of_cyclotomics,
)
from .errors import (
    ConsistencyError,
    DegenerateInputError,
    DomainError,
    HypothesisError,
    PreconditionError,
    ResourceLimitError,
)
from .linalg import (
    PresentationMatrix,
    check_size,
    minors,
    rational_invariant_factors,
    smith_normal_form,
    substitute_blocks,
)
from .poly import ONE, LaurentPoly, content, div_exact, evaluate_int, gcd_full
from .resultants import nu, res_cyclic, resultant

log = logging.getLogger(__name__)

METHODS = ("snf", "fox", "extended", "direct_sum", "recurrence")

# block matrices up to this dimension are cheap enough to cross-check by SNF
CROSSCHECK_DIM = 48


@dataclass(frozen=True)
class TorsionProfile:
    r: int
    betti: int
    torsion: int
    method: str
    pure: bool = field(init=False)

    def __post_init__(self):
        if self.torsion < 1:
            raise ConsistencyError(f"torsion number must be positive, got {self.torsion}")
        object.__setattr__(self, "pure", self.betti == 0)


@dataclass(frozen=True)
class ReducedTorsionProfile:
    r: int
    betti_reduced: int
    torsion_reduced: int
    torsion: int
    delta: int | None = None
    delta_prime: int | None = None


def _as_matrix(a) -> PresentationMatrix:
    if isinstance(a, PresentationMatrix):
        return a
    if isinstance(a, LaurentPoly):
        return PresentationMatrix.cyclic(a)
    return PresentationMatrix(a)


# --------------------------------------------------------------------------
# Betti numbers


def betti(pis: Sequence[LaurentPoly], r: int, reduced: bool = False) -> int:
    """Count the distinct roots of each pi_i that are r-th roots of unity.

    Computed as the sum of phi(d) over d | r with Phi_d | pi_i; the reduced
    count leaves out the root 1.
    """
    if r < 1:
        raise DomainError("r must be positive")
    total = 0
    for pi in pis:
        if not pi:
            raise DegenerateInputError("a zero invariant factor has infinite Betti contribution")
        fac = cyclo_factorize(pi)
        for d, _ in fac.factors:
            if r % d == 0 and not (reduced and d == 1):
                total += euler_phi(d)
    return total


# --------------------------------------------------------------------------
# torsion numbers


def torsion_snf(a, r: int, reduced: bool = False) -> TorsionProfile:
    """Oracle: torsion and free rank read off the SNF of the block matrix.

    With ``reduced`` the blocks use the companion matrix of nu_r (size r - 1).
    """
    a = _as_matrix(a)
    if r < 1:
        raise DomainError("r must be positive")
    if reduced:
        if r == 1:
            return TorsionProfile(1, 0, 1, "snf")
        block = substitute_blocks(a, r - 1, modulus=nu(r))
    else:
        block = substitute_blocks(a, r)
    snf = smith_normal_form(block)
    return TorsionProfile(r, snf.free_rank, snf.torsion_order, "snf")


def _extended(delta: LaurentPoly, r: int, modulus_divisors: Iterable[int]) -> int:
    """|Res(delta / Phi, h / Phi)| where h = prod of Phi_d over ``modulus_divisors``.

    Phi is the product of the distinct Phi_d (d in the list) dividing delta.
    """
    if not delta:
        raise DegenerateInputError("torsion formula needs a nonzero polynomial")
    fac = cyclo_factorize(delta)
    hits = [d for d in modulus_divisors if d in fac.d_set]
    quotient = div_exact(delta, product_of_cyclotomics(hits)) if hits else delta
    out = 1
    for d in modulus_divisors:
        if d in hits:
            continue
        out *= resultant(quotient, cyclotomic_poly(d))
    if out == 0:
        raise ConsistencyError("vanishing resultant after removing cyclotomic factors")
    return abs(out)


def torsion_formula(delta: LaurentPoly, r: int) -> int:
    """b_r of the cyclic module Z[t,1/t]/(delta) via the extended Fox formula."""
    if r < 1:
        raise DomainError("r must be positive")
    return _extended(delta, r, divisors(r))


def reduced_torsion_formula(delta: LaurentPoly, r: int) -> int:
    """Reduced analogue: nu_r in place of t^r - 1 (d = 1 never divides nu_r)."""
    if r < 1:
        raise DomainError("r must be positive")
    return _extended(delta, r, divisors(r)[1:])


def fox_formula(delta: LaurentPoly, r: int) -> int:
    """|Res(delta, t^r - 1)|; only meaningful for pure torsion numbers."""
    value = res_cyclic(delta, r)
    if value == 0:
        raise HypothesisError(f"b_{r} is not pure; the Fox formula does not apply")
    return abs(value)


def torsion_direct_sum(pis: Sequence[LaurentPoly], r: int) -> int:
    out = 1
    for pi in pis:
        out *= torsion_formula(pi, r)
    return out


def characteristic_poly(a, i: int = 0) -> LaurentPoly:
    """Delta_i: gcd of the (N - i) x (N - i) minors, content included, normalized."""
    a = _as_matrix(a)
    if i < 0 or i >= a.n_rows:
        raise DomainError(f"characteristic polynomial index must lie in [0, {a.n_rows})")
    return gcd_full(minors(a, a.n_rows - i)).representative()


def alexander_polynomial(a) -> LaurentPoly:
    return characteristic_poly(a, 0)


def _snf_feasible(a: PresentationMatrix, r: int, limit: int | None = None) -> bool:
    size = r * max(a.n_rows, a.n_cols)
    if limit is not None and size > limit:
        return False
    try:
        check_size(r, a)
    except ResourceLimitError:
        return False
    return True


def torsion(a, r: int, method: str = "auto", *, pis: Sequence[LaurentPoly] | None = None,
            crosscheck: bool = True) -> TorsionProfile:
    """Top-level b_r / beta_r computation with method dispatch.

    ``auto`` uses the extended formula for cyclic input, the direct-sum
    formula when invariant factors are supplied, and SNF otherwise; formula
    results are checked against SNF whenever the block matrix is small.
    """
    a = _as_matrix(a)
    if method == "auto":
        if pis is not None:
            method = "direct_sum"
        elif a.is_cyclic():
            method = "extended"
        else:
            method = "snf"
    if method == "snf":
        return torsion_snf(a, r)
    if method == "recurrence":
        from .recurrence import torsion_by_recurrence

        if not a.is_cyclic():
            raise PreconditionError("method 'recurrence' needs a cyclic (1 x 1) presentation")
        profile = torsion_by_recurrence(alexander_polynomial(a), [r])[0]
    elif method == "direct_sum":
        factors = list(pis) if pis is not None else rational_invariant_factors(a)
        profile = TorsionProfile(r, betti(factors, r), torsion_direct_sum(factors, r), "direct_sum")
    elif method in ("extended", "fox"):
        if not a.is_cyclic():
            raise PreconditionError(f"method {method!r} needs a cyclic (1 x 1) presentation")
        delta = alexander_polynomial(a)
        b = betti([delta], r)
        if method == "fox":
            value = fox_formula(delta, r)
        else:
            value = torsion_formula(delta, r)
        profile = TorsionProfile(r, b, value, method)
    else:
        raise DomainError(f"unknown method {method!r}; choose from auto, {', '.join(METHODS)}")
    if crosscheck and _snf_feasible(a, r, CROSSCHECK_DIM):
        oracle = torsion_snf(a, r)
        if (oracle.torsion, oracle.betti) != (profile.torsion, profile.betti):
            raise ConsistencyError(
                f"r={r}: {profile.method} gives (b, beta) = ({profile.torsion}, {profile.betti}) "
                f"but SNF gives ({oracle.torsion}, {oracle.betti})"
            )
    return profile


# --------------------------------------------------------------------------
# torsion-free modules: the kappa correction


@dataclass(frozen=True)
class KappaReport:
    values: tuple  # ((r, kappa(r)), ...)
    gamma: int
    periodic: bool
    mismatches: tuple  # ((r, r + gamma), ...) with kappa(r) != kappa(r + gamma)


def kappa_sequence(a, r_max: int) -> KappaReport:
    """kappa(r) = b'_r / b_r, with b'_r from the rational invariant factors.

    Raises HypothesisError when the ratio is not a positive integer, which
    signals that the module is not torsion-free as an abelian group.
    """
    a = _as_matrix(a)
    pis = rational_invariant_factors(a)
    if any(not p for p in pis):
        raise HypothesisError("module has a free summand over Q[t, 1/t]; kappa is undefined")
    values = []
    for r in range(1, r_max + 1):
        b_prime = torsion_direct_sum(pis, r)
        b = torsion_snf(a, r).torsion
        if b_prime % b:
            raise HypothesisError(
                f"b'_{r} / b_{r} = {Fraction(b_prime, b)} is not an integer; the module is not torsion-free"
            )
        values.append((r, b_prime // b))
    delta = ONE
    for p in pis:
        delta = delta * p
    gamma = cyclo_factorize(delta).gamma
    lookup = dict(values)
    mismatches = tuple((r, r + gamma) for r in lookup if r + gamma in lookup and lookup[r] != lookup[r + gamma])
    return KappaReport(tuple(values), gamma, not mismatches, mismatches)


# --------------------------------------------------------------------------
# reduced torsion numbers


def _split_t_minus_one(delta: LaurentPoly):
    q = 0
    g = delta.representative()
    t1 = cyclotomic_poly(1)
    while g.degree >= 1 and evaluate_int(g, 1) == 0:
        g = div_exact(g, t1)
        q += 1
    return q, g


def integer_root(n: int, k: int) -> int | None:
    """Exact k-th root of a nonnegative integer, or None."""
    if k == 1:
        return n
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == n else None


def reduced_analysis(delta: LaurentPoly, r: int) -> ReducedTorsionProfile:
    """Reduced torsion number and its delta_r / delta'_r decompositions."""
    if not delta:
        raise DegenerateInputError("reduced analysis needs a nonzero polynomial")
    b_red = reduced_torsion_formula(delta, r)
    beta_red = betti([delta], r, reduced=True)
    b = torsion_formula(delta, r)
    delta_r = None
    value_at_one = evaluate_int(delta, 1)
    if value_at_one != 0:
        if b % b_red:
            raise ConsistencyError(f"b_{r} = {b} is not divisible by the reduced torsion {b_red}")
        delta_r = b // b_red
        if abs(value_at_one) % delta_r:
            raise ConsistencyError(f"delta_{r} = {delta_r} does not divide |Delta(1)| = {abs(value_at_one)}")
    delta_prime = None
    q, g = _split_t_minus_one(delta)
    if q >= 1:
        t_g = reduced_torsion_formula(g, r)
        if b_red % t_g:
            raise ConsistencyError(f"|T(R/(g, nu_{r}))| = {t_g} does not divide {b_red}")
        delta_prime = integer_root(b_red // t_g, q)
        if delta_prime is None:
            raise ConsistencyError(f"{b_red // t_g} is not a perfect {q}-th power")
    return ReducedTorsionProfile(r, beta_red, b_red, b, delta_r, delta_prime)


def prime_power_reduced_check(delta: LaurentPoly, p: int, k: int):
    """(reduced Betti, p-component of the reduced torsion) at r = p^k.

    Returns (0, p^(q k)) where delta = (t - 1)^q g, after checking both
    numbers against ``reduced_analysis``.
    """
    from .growth import is_probable_prime, p_component

    if k < 1:
        raise DomainError("k must be positive")
    if not is_probable_prime(p):
        raise DomainError(f"{p} is not prime")
    q, g = _split_t_minus_one(delta)
    g1 = evaluate_int(g, 1)
    if g1 % p == 0:
        raise HypothesisError(f"p = {p} divides g(1) = {g1}")
    expected = (0, p ** (q * k))
    prof = reduced_analysis(delta, p ** k)
    observed = (prof.betti_reduced, p_component(prof.torsion_reduced, p))
    if observed != expected:
        raise ConsistencyError(f"r = {p}^{k}: expected {expected}, computed {observed}")
    return expected


# --------------------------------------------------------------------------
# sequence-level checks


def mobius_invert_betti(beta_seq: Sequence[int]):
    """phi_hat(r) = sum over d | r of mu(d) * beta_(r/d); beta_seq[i] is beta_(i+1).

    Returns the phi_hat list (same indexing) and the set of r with
    phi_hat(r) > 0, i.e. the d such that Phi_d divides Delta.
    """
    n = len(beta_seq)
    phi_hat = []
    for r in range(1, n + 1):
        phi_hat.append(sum(mobius(d) * beta_seq[r // d - 1] for d in divisors(r)))
    return phi_hat, {r for r, v in enumerate(phi_hat, start=1) if v > 0}


def division_check(profiles: Sequence[TorsionProfile]) -> list:
    """Pairs (r, s) with r | s whose torsion numbers fail b_r | b_s."""
    bettis = {p.betti for p in profiles}
    if len(bettis) > 1:
        raise PreconditionError(f"profiles mix Betti numbers {sorted(bettis)}")
    by_r = {p.r: p.torsion for p in profiles}
    violations = []
    for r in sorted(by_r):
        for s in sorted(by_r):
            if s > r and s % r == 0 and by_r[s] % by_r[r]:
                violations.append((r, s))
    return violations


def content_of_delta(a) -> int:
    return content(alexander_polynomial(_as_matrix(a)))
