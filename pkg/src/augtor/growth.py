"""Root isolation, Mahler measure and growth rates of torsion sequences."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

import mpmath

from .cyclotomic import cyclo_factorize
from .errors import DomainError, ResourceLimitError
from .poly import LaurentPoly, RatPoly, content, squarefree_decomposition


@dataclass(frozen=True)
class Estimate:
    """A real number known to lie in [value - error, value + error]."""

    value: mpmath.mpf
    error: mpmath.mpf

    def __float__(self):
        return float(self.value)

    def contains(self, x: float) -> bool:
        return abs(x - self.value) <= self.error


@dataclass(frozen=True)
class PGrowth:
    p: int
    samples: tuple  # ((r, (b_r^(p))^(1/r)), ...)
    target: int  # (content Delta)^(p)
    deviation: float  # last sample minus target


@dataclass(frozen=True)
class GrowthReport:
    mahler: Estimate
    samples: tuple
    p: int | None = None
    p_samples: tuple | None = None
    content_p: int | None = None

    def __post_init__(self):
        if not self.samples:
            raise DomainError("a growth report needs at least one sample")
        if any(v < 1 for _, v in self.samples):
            raise DomainError("growth samples must be >= 1")


# --------------------------------------------------------------------------
# roots


def _aberth(coeffs: list, dps: int, eps):
    """Aberth-Ehrlich iteration on a squarefree integer polynomial (ascending).

    Returns (roots, radii) where the disks |z - roots[i]| <= radii[i] are
    pairwise disjoint and each holds exactly one root, or None if the
    iteration has not separated the roots at this precision.
    """
    n = len(coeffs) - 1
    with mpmath.workdps(dps):
        desc = [mpmath.mpf(c) for c in reversed(coeffs)]
        deriv = [c * (n - i) for i, c in enumerate(desc[:-1])]
        # start on a circle bounded by the Cauchy radius, with an irrational twist
        radius = 1 + max(abs(c) for c in desc[1:]) / abs(desc[0])
        z = [radius / 2 * mpmath.expj(2 * mpmath.pi * k / n + 0.4) for k in range(n)]
        tol = mpmath.mpf(10) ** (-dps + 5)
        for _ in range(50 * dps + 100):
            worst = 0
            for i in range(n):
                pz = mpmath.polyval(desc, z[i])
                dz = mpmath.polyval(deriv, z[i])
                if pz == 0:
                    continue
                ratio = pz / dz if dz != 0 else mpmath.mpf(1)
                s = mpmath.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i)
                step = ratio / (1 - ratio * s)
                z[i] -= step
                worst = max(worst, abs(step) / max(1, abs(z[i])))
            if worst < tol:
                break
        radii = []
        for i in range(n):
            prod = abs(desc[0])
            for j in range(n):
                if j != i:
                    prod *= abs(z[i] - z[j])
            if prod == 0:
                return None
            # inclusion radius plus a margin for the rounding of the evaluation
            slack = mpmath.mpf(2) ** (-mpmath.mp.prec + 8) * (1 + abs(z[i])) * 4 * n
            radii.append(n * abs(mpmath.polyval(desc, z[i])) / prod + slack)
        for i in range(n):
            for j in range(i + 1, n):
                if abs(z[i] - z[j]) <= radii[i] + radii[j]:
                    return None
        if eps is not None and max(radii) > eps:
            return None
        return z, radii


def _isolate(coeffs: list, eps) -> list:
    if len(coeffs) == 2:
        with mpmath.workdps(max(30, int(-mpmath.log10(eps)) + 10)):
            z = mpmath.mpf(-coeffs[0]) / coeffs[1]
            return [(mpmath.mpc(z), abs(z) * mpmath.mpf(2) ** (1 - mpmath.mp.prec))]
    dps = 30
    while dps <= 4000:
        got = _aberth(coeffs, dps, eps)
        if got is not None:
            z, radii = got
            return list(zip(z, radii))
        dps *= 2
    raise ResourceLimitError("root isolation did not converge")


def complex_roots(f: LaurentPoly, eps: float = 1e-12) -> list:
    """All roots of f (with multiplicity) as (approximation, certified radius).

    Cyclotomic roots are computed directly (their radius only covers
    rounding); the rest come from Aberth iteration on the squarefree parts,
    with precision raised until every inclusion disk is isolated and no
    wider than eps.
    """
    if not eps > 0:
        raise DomainError("eps must be positive")
    f = f.representative()
    if not f or f.degree < 1:
        raise DomainError("complex_roots needs a polynomial of degree >= 1")
    fac = cyclo_factorize(f)
    out = []
    dps = max(20, int(-math.log10(eps)) + 10)
    with mpmath.workdps(dps):
        exact_rad = mpmath.mpf(10) ** (2 - dps)
        for d, e in fac.factors:
            for k in range(1, d + 1):
                if math.gcd(k, d) == 1:
                    if d <= 2:
                        out.extend([(mpmath.mpc(1 if d == 1 else -1), mpmath.mpf(0))] * e)
                    else:
                        out.extend([(mpmath.expj(2 * mpmath.pi * k / d), exact_rad)] * e)
    g = fac.g.representative()
    if g.degree >= 1:
        eps_mp = mpmath.mpf(eps)
        for part, mult in squarefree_decomposition(RatPoly.from_laurent(g)):
            if part.degree < 1:
                continue
            ints = list(part.to_int_primitive().coeffs)
            for z, rad in _isolate(ints, eps_mp):
                out.extend([(z, rad)] * mult)
    out.sort(key=lambda zr: (float(mpmath.im(zr[0])), float(mpmath.re(zr[0]))))
    out.sort(key=lambda zr: float(abs(zr[0])), reverse=True)
    return out


def mahler_measure(f: LaurentPoly, eps: float = 1e-12) -> Estimate:
    """|c0| * prod max(1, |alpha|), as an interval of half-width <= eps."""
    if not eps > 0:
        raise DomainError("eps must be positive")
    if not f:
        return Estimate(mpmath.mpf(0), mpmath.mpf(0))
    f = f.representative()
    lead = abs(f.leading)
    if f.degree < 1:
        return Estimate(mpmath.mpf(lead), mpmath.mpf(0))
    landau = math.sqrt(sum(c * c for c in f.coeffs))
    root_eps = eps / (4 * f.degree * landau)
    while True:
        roots = complex_roots(f, root_eps)
        dps = max(30, int(-math.log10(eps)) + 20)
        with mpmath.workdps(dps):
            lo = hi = mpmath.mpf(lead)
            for z, rad in roots:
                mod = abs(z)
                lo *= max(1, mod - rad)
                hi *= max(1, mod + rad)
            half = (hi - lo) / 2
            if half <= mpmath.mpf(eps) / 2:
                # rounding of the interval products at this precision
                slack = hi * mpmath.mpf(2) ** (8 - mpmath.mp.prec) * (len(roots) + 1)
                return Estimate((hi + lo) / 2, half + slack)
        root_eps /= 16


# --------------------------------------------------------------------------
# sequences


def _root_r(n: int, r: int) -> float:
    if n < 1:
        raise DomainError("growth samples need positive terms")
    return math.exp(math.log(n) / r)


def growth_samples(seq: Sequence) -> list:
    """[(r, b_r^(1/r))] for a sequence of (r, b_r) pairs."""
    return [(r, _root_r(b, r)) for r, b in seq]


def is_probable_prime(n: int, rounds: int = 64, seed: int = 0) -> bool:
    """Miller-Rabin with ``rounds`` random bases from a seeded generator."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(seed)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def p_component(n: int, p: int) -> int:
    """Largest power of the prime p dividing n."""
    if not is_probable_prime(p):
        raise DomainError(f"{p} is not prime")
    if n < 1:
        raise DomainError("p_component needs a positive integer")
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def p_growth(seq: Sequence, p: int, delta: LaurentPoly) -> PGrowth:
    """(b_r^(p))^(1/r) samples against the target (content Delta)^(p)."""
    seq = list(seq)
    if not seq:
        raise DomainError("p_growth needs a nonempty sequence")
    samples = tuple((r, _root_r(p_component(b, p), r)) for r, b in seq)
    c = content(delta)
    target = p_component(c, p) if c else 0
    return PGrowth(p, samples, target, samples[-1][1] - target)


def growth_report(delta: LaurentPoly, seq: Sequence, p: int | None = None, eps: float = 1e-9) -> GrowthReport:
    mahler = mahler_measure(delta, eps)
    samples = tuple(growth_samples(seq))
    if p is None:
        return GrowthReport(mahler, samples)
    pg = p_growth(seq, p, delta)
    return GrowthReport(mahler, samples, p, pg.samples, pg.target)


def square_prime_probe(n: int, rounds: int = 64):
    """(is_square, digits of the root, root is a probable prime) or (False, None, None)."""
    if n < 1:
        raise DomainError("square_prime_probe needs a positive integer")
    root = math.isqrt(n)
    if root * root != n:
        return False, None, None
    return True, len(str(root)), is_probable_prime(root, rounds)
