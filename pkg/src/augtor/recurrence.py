"""Linear recurrences for R(f, r) = Res(f, t^r - 1) and for torsion sequences.

Lehmer's construction: the roots of R's characteristic polynomial are
c0 * (product of a subset of the roots of f), so the k-th factor comes from
the k-th compound of the companion matrix of f / c0.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .cyclotomic import cyclo_factorize, euler_phi
from .errors import DegenerateInputError, DomainError, ConsistencyError, SpecInconsistencyError
from .linalg import PresentationMatrix, charpoly, compound_matrix, max_snf_dim
from .poly import LaurentPoly, RatPoly, div_exact, evaluate_int, rat_gcd, rat_lcm
from .resultants import res_cyclic

# seeds up to this index come from the SNF oracle; beyond it, from the formula
SEED_SNF_LIMIT = 80


@dataclass(frozen=True)
class RecurrenceSpec:
    """sum_k coefficients[k] * x_(n + m - k) = 0 for every n >= start."""

    order: int
    coefficients: tuple  # m + 1 integers, leading term first
    sign_mode: str  # "constant" or "alternating"
    seed: tuple  # x_start, ..., x_(start + m - 1)
    start: int
    absolute: bool = False

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1 or not self.coefficients[0]:
            raise SpecInconsistencyError("malformed characteristic polynomial")
        if len(self.seed) != self.order:
            raise SpecInconsistencyError(f"need {self.order} seed terms, got {len(self.seed)}")

    @property
    def characteristic(self) -> LaurentPoly:
        return LaurentPoly.from_descending(self.coefficients)

    def absolute_variant(self, seed: Sequence[int] | None = None) -> "RecurrenceSpec":
        """Spec for |x_r|: alternate coefficient signs when the signs alternate."""
        if self.absolute:
            return self
        coeffs = self.coefficients
        if self.sign_mode == "alternating":
            coeffs = tuple(c * (-1) ** k for k, c in enumerate(coeffs))
        new_seed = tuple(abs(x) for x in self.seed) if seed is None else tuple(seed)
        return replace(self, coefficients=coeffs, seed=new_seed, absolute=True)

    def annihilates(self, terms: Sequence[int]) -> bool:
        """True when the consecutive sequence ``terms`` satisfies the recurrence."""
        m = self.order
        for n in range(len(terms) - m):
            if sum(c * terms[n + m - k] for k, c in enumerate(self.coefficients)):
                return False
        return True


def _primitive_descending(coeffs: Sequence[Fraction]) -> tuple:
    den = lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _monic_companion(f) -> list:
    a = f.representative().coeffs if isinstance(f, LaurentPoly) else f.coeffs
    d = len(a) - 1
    lead = Fraction(a[-1])
    rows = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d - 1):
        rows[i][i + 1] = Fraction(1)
    for j in range(d):
        rows[d - 1][j] = -Fraction(a[j]) / lead
    return rows


def lehmer_factors(f: LaurentPoly) -> list:
    """[f_0, ..., f_d]: f_k has as roots the products of k distinct roots of f."""
    f = f.representative()
    if not f or f.degree < 1:
        raise DomainError("Lehmer factors need a polynomial of degree >= 1")
    comp = _monic_companion(f)
    out = [LaurentPoly((-1, 1))]
    for k in range(1, f.degree + 1):
        cp = RatPoly(charpoly(compound_matrix(comp, k)))
        out.append(cp.to_int_primitive())
    return out


def sign_mode_of(f: LaurentPoly) -> str:
    """Constant or alternating sign of Res(f, t^r - 1) as r varies.

    The ratio of signs between r + 1 and r is sign(c0) * (-1)^(number of
    real roots below -1), i.e. sign(g(-1)) * (-1)^deg g after removing
    factors t + 1 from f.
    """
    g = f.representative()
    plus_one = LaurentPoly((1, 1))
    while g.degree >= 1 and evaluate_int(g, -1) == 0:
        g = div_exact(g, plus_one)
    sigma = (1 if evaluate_int(g, -1) > 0 else -1) * (-1) ** g.degree
    return "constant" if sigma > 0 else "alternating"


def _lcm_of_factors(factors) -> RatPoly:
    """Squarefree lcm: R(f, r) is a sum of pure exponentials, one per distinct root."""
    out = RatPoly([1])
    for fk in factors:
        out = rat_lcm(out, RatPoly.from_laurent(fk).monic())
    return _radical(out)


def recurrence_spec(f: LaurentPoly, absolute: bool = False) -> RecurrenceSpec:
    """Recurrence for R(f, r), or for |R(f, r)| when ``absolute``.

    With q(t) = t^m + A_1 t^(m-1) + ... + A_m the (squarefree) lcm of the Lehmer factors,
    the characteristic polynomial is t^m + c0 A_1 t^(m-1) + ... + c0^m A_m,
    whose roots c0 * alpha_S are the bases of the exponentials in R(f, r).
    """
    f = f.representative()
    if not f or f.degree < 1:
        raise DomainError("recurrence_spec needs a polynomial of degree >= 1")
    c0 = f.leading
    q = _lcm_of_factors(lehmer_factors(f))
    m = q.degree
    desc = list(reversed(q.coeffs))  # 1, A_1, ..., A_m
    coeffs = _primitive_descending([c * c0 ** k for k, c in enumerate(desc)])
    start = 0 if abs(c0) == 1 else 1
    seed = tuple(0 if r == 0 else res_cyclic(f, r) for r in range(start, start + m))
    spec = RecurrenceSpec(m, coeffs, sign_mode_of(f), seed, start)
    return spec.absolute_variant() if absolute else spec


def iterate(spec: RecurrenceSpec, r_end: int) -> list:
    """Terms x_start, ..., x_r_end by forward iteration with exact division."""
    terms = list(spec.seed)
    m = spec.order
    lead = spec.coefficients[0]
    rest = spec.coefficients[1:]
    while spec.start + len(terms) - 1 < r_end:
        acc = 0
        for k, c in enumerate(rest, start=1):
            acc -= c * terms[-k]
        nxt, rem = divmod(acc, lead)
        if rem:
            r = spec.start + len(terms)
            raise SpecInconsistencyError(f"forward step at r={r} is not integral ({acc}/{lead})")
        terms.append(nxt)
    return terms[: r_end - spec.start + 1] if m else [0] * (r_end - spec.start + 1)


def eval_recurrence(spec: RecurrenceSpec, r: int) -> int:
    if r < spec.start:
        raise DomainError(f"r={r} precedes the seed start {spec.start}")
    return iterate(spec, r)[r - spec.start]


# --------------------------------------------------------------------------
# the recurrence for every torsion number


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _mat_pow(a, e):
    n = len(a)
    out = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    while e:
        if e & 1:
            out = _mat_mul(out, a)
        a = _mat_mul(a, a)
        e >>= 1
    return out


def _radical(p: RatPoly) -> RatPoly:
    return (p // rat_gcd(p, p.derivative())).monic()


def _base_polynomial(g: LaurentPoly) -> RatPoly:
    """Monic characteristic polynomial of |Res(g, t^r - 1)| (g free of cyclotomic factors)."""
    if g.degree < 1:
        return RatPoly([-abs(g.leading), 1])
    spec = recurrence_spec(g, absolute=True)
    return RatPoly.from_descending(spec.coefficients).monic()


def extra_multiplicity(delta: LaurentPoly) -> int:
    """M = sum over cyclotomic divisors Phi_d of phi(d) (e_d - 1)."""
    return sum(euler_phi(d) * (e - 1) for d, e in cyclo_factorize(delta).factors)


def theorem39_polynomial(delta: LaurentPoly) -> tuple:
    """Integer P(t) (leading first) with P annihilating b_r for all r >= 1.

    Roots lambda_j of the base polynomial of g become the roots of
    t^gamma - lambda_j^gamma, each with multiplicity raised by M.
    """
    if not delta:
        raise DegenerateInputError("theorem39_spec needs a nonzero polynomial")
    fac = cyclo_factorize(delta)
    base = _base_polynomial(fac.g.representative())
    big_m = extra_multiplicity(delta)
    p_hat = base * _radical(base) ** big_m
    gamma = fac.gamma
    if gamma == 1:
        q = p_hat
    else:
        comp = _monic_companion(p_hat)
        q = RatPoly(charpoly(_mat_pow(comp, gamma)))
    expanded = [Fraction(0)] * (gamma * q.degree + 1)
    for i, c in enumerate(q.coeffs):
        expanded[gamma * i] = c
    return _primitive_descending(list(reversed(expanded)))


def theorem39_spec(delta: LaurentPoly) -> RecurrenceSpec:
    """Recurrence satisfied by the whole torsion sequence b_1, b_2, ... of R/(delta)."""
    from .torsion import torsion, torsion_formula

    coeffs = theorem39_polynomial(delta)
    m = len(coeffs) - 1
    matrix = PresentationMatrix.cyclic(delta)
    limit = min(SEED_SNF_LIMIT, max_snf_dim())
    seed = []
    for r in range(1, m + 1):
        if r <= limit:
            seed.append(torsion(matrix, r, "snf").torsion)
        else:
            seed.append(torsion_formula(delta, r))
    return RecurrenceSpec(m, coeffs, "constant", tuple(seed), 1, absolute=True)


def torsion_by_recurrence(delta: LaurentPoly, rs: Sequence[int]) -> list:
    from .torsion import TorsionProfile, betti

    rs = list(rs)
    if not rs:
        return []
    if min(rs) < 1:
        raise DomainError("r must be positive")
    spec = theorem39_spec(delta)
    terms = iterate(spec, max(rs))
    return [TorsionProfile(r, betti([delta], r), terms[r - 1], "recurrence") for r in rs]


def structure_constants(delta: LaurentPoly, R: int, r_probe: Sequence[int]):
    """(C_R, M_R) with b_r = C_R r^(M_R) |Res(g, t^r - 1)| for r = R mod gamma."""
    from .torsion import torsion

    fac = cyclo_factorize(delta)
    gamma = fac.gamma
    R %= gamma
    m_r = sum(euler_phi(d) * (e - 1) for d, e in fac.factors if R % d == 0)
    probes = list(r_probe)
    if not probes:
        raise DomainError("structure_constants needs at least one probe value")
    bad = [r for r in probes if r < 1 or r % gamma != R]
    if bad:
        raise DomainError(f"probe values {bad} are not positive and congruent to {R} mod {gamma}")
    g = fac.g
    matrix = PresentationMatrix.cyclic(delta)
    constants = set()
    for r in probes:
        b = torsion(matrix, r).torsion
        constants.add(Fraction(b, r ** m_r * abs(res_cyclic(g, r))))
    if len(constants) != 1:
        raise ConsistencyError(f"C_R is not constant over the probes: {sorted(constants)}")
    return constants.pop(), m_r
