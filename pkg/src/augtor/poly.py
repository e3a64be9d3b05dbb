"""Integer Laurent polynomials and rational polynomials.

Both types are dense, immutable and store coefficients in ascending order.
A ``LaurentPoly`` is ``sum(coeffs[i] * t**(min_exp + i))``; the stored
sequence always starts and ends at a nonzero coefficient, so the tuple
doubles as the ordinary-polynomial representative used by resultants,
gcds and root finding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import DegenerateInputError, DivisibilityError, DomainError

Rational = Union[int, Fraction]


def _trim(coeffs: Sequence) -> tuple:
    lo, hi = 0, len(coeffs)
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    while hi > lo and coeffs[hi - 1] == 0:
        hi -= 1
    return lo, tuple(coeffs[lo:hi])


@dataclass(frozen=True)
class LaurentPoly:
    coeffs: tuple = ()
    min_exp: int = 0

    def __post_init__(self):
        lo, body = _trim([int(c) for c in self.coeffs])
        object.__setattr__(self, "coeffs", body)
        object.__setattr__(self, "min_exp", self.min_exp + lo if body else 0)

    # construction -------------------------------------------------------

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, c: int = 1, k: int = 1) -> "LaurentPoly":
        return cls((c,), k)

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> "LaurentPoly":
        """Build from ``c0*t^d + ... + cd`` given as ``[c0, ..., cd]``."""
        return cls(tuple(reversed(list(coeffs))))

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.constant(x)
        raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")

    # basic properties ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        """Width of the exponent span; the degree of the polynomial representative."""
        if not self.coeffs:
            return -1
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def trailing(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1 and self.min_exp == 0

    def coefficient(self, k: int) -> int:
        i = k - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.coeffs, self.min_exp + k)

    def representative(self) -> "LaurentPoly":
        """The unit multiple t^k * self with min_exp == 0."""
        return LaurentPoly(self.coeffs, 0)

    def normalized(self) -> "LaurentPoly":
        """Canonical unit multiple: min_exp 0 and positive leading coefficient."""
        if not self.coeffs:
            return self
        sign = -1 if self.coeffs[-1] < 0 else 1
        return LaurentPoly(tuple(sign * c for c in self.coeffs), 0)

    # ring operations ----------------------------------------------------

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.min_exp - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.min_exp - lo + i] += c
        return LaurentPoly(tuple(out), lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(tuple(-c for c in self.coeffs), self.min_exp)

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(tuple(out), self.min_exp + other.min_exp)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.coeffs) == 1 and abs(self.coeffs[0]) == 1:
                return LaurentPoly((self.coeffs[0] ** n,), self.min_exp * n)
            raise DomainError("only units may be raised to negative powers")
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly(tuple(c * x for x in self.coeffs), self.min_exp)

    # evaluation ---------------------------------------------------------

    def __call__(self, x):
        return evaluate_int(self, x) if isinstance(x, int) else _horner(self, x)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"


T = LaurentPoly((1,), 1)
ONE = LaurentPoly((1,))
ZERO = LaurentPoly()


def _horner(f: LaurentPoly, x):
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * x + c
    if f.min_exp:
        acc = acc * x ** f.min_exp
    return acc


def format_poly(f: LaurentPoly, var: str = "t") -> str:
    if not f.coeffs:
        return "0"
    parts = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        k = f.min_exp + i
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


# --------------------------------------------------------------------------
# scalar-valued helpers


def content(f: LaurentPoly) -> int:
    return reduce(gcd, f.coeffs, 0)


def primitive_part(f: LaurentPoly) -> LaurentPoly:
    c = content(f)
    if c == 0:
        return f
    return LaurentPoly(tuple(x // c for x in f.coeffs), f.min_exp)


def evaluate_int(f: LaurentPoly, x: int) -> Rational:
    if x == 0:
        if f.min_exp < 0:
            raise DomainError("cannot evaluate a negative power of t at 0")
        return f.coefficient(0)
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * x + c
    if f.min_exp >= 0:
        return acc * x ** f.min_exp
    value = Fraction(acc, x ** (-f.min_exp))
    return int(value) if value.denominator == 1 else value


def is_reciprocal(f: LaurentPoly) -> bool:
    if not f.coeffs:
        raise DegenerateInputError("reciprocity of the zero polynomial is undefined")
    return f.coeffs == f.coeffs[::-1]


# --------------------------------------------------------------------------
# division and gcd over Z


def _divmod_int_lists(num: list, den: Sequence[int], exact: bool):
    """Long division of ascending integer lists; raises if a step is not integral."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dn:
        return [], num
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        qc, rem = divmod(c, lead)
        if rem:
            if exact:
                raise DivisibilityError("division is not exact over the integers")
            break
        q[i - dn] = qc
        for j, d in enumerate(den):
            num[i - dn + j] -= qc * d
    return q, num


def div_exact(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact quotient f / g in Z[t, 1/t]."""
    if not g.coeffs:
        raise DivisibilityError("division by the zero polynomial")
    if not f.coeffs:
        return ZERO
    q, rem = _divmod_int_lists(list(f.coeffs), g.coeffs, exact=True)
    if any(rem):
        raise DivisibilityError(f"{g} does not divide {f}")
    return LaurentPoly(tuple(q), f.min_exp - g.min_exp)


def divides(g: LaurentPoly, f: LaurentPoly) -> bool:
    try:
        div_exact(f, g)
    except DivisibilityError:
        return False
    return True


def pseudo_remainder(a: Sequence[int], b: Sequence[int]) -> list:
    """prem(a, b) on ascending integer lists: lc(b)^(da-db+1) * a mod b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        return a
    for _ in range(len(a) - 1 - db + 1):
        a = [lb * x for x in a]
    while len(a) - 1 >= db and a:
        c = a[-1]
        if c:
            qc = c // lb
            shift = len(a) - 1 - db
            for j, d in enumerate(b):
                a[shift + j] -= qc * d
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def gcd_primitive(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Primitive gcd in Z[t, 1/t], normalized to min_exp 0 and positive lead."""
    if not f.coeffs and not g.coeffs:
        raise DegenerateInputError("gcd of two zero polynomials")
    if not g.coeffs:
        return primitive_part(f).normalized()
    if not f.coeffs:
        return primitive_part(g).normalized()
    a = list(primitive_part(f).coeffs)
    b = list(primitive_part(g).coeffs)
    if len(a) < len(b):
        a, b = b, a
    while b and len(b) > 1:
        r = pseudo_remainder(a, b)
        a = b
        if not r:
            b = []
            break
        rp = primitive_part(LaurentPoly(tuple(r)))
        b = list(rp.coeffs)
    if b:
        # nonzero constant remainder: the polynomials are coprime
        return ONE
    return primitive_part(LaurentPoly(tuple(a))).normalized()


def gcd_full(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    """gcd in the UFD Z[t, 1/t] (content included), normalized; zero if all zero."""
    polys = [p for p in polys if p.coeffs]
    if not polys:
        return ZERO
    c = reduce(gcd, (content(p) for p in polys), 0)
    prim = reduce(gcd_primitive, polys[1:], primitive_part(polys[0]).normalized())
    return prim.scale(c)


# --------------------------------------------------------------------------
# rational polynomials


class RatPoly:
    """Dense polynomial over Q, ascending coefficients stored as Fractions."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_laurent(cls, f: LaurentPoly) -> "RatPoly":
        if f.min_exp < 0:
            raise DomainError("negative exponents have no image in Q[t]")
        return cls([0] * f.min_exp + list(f.coeffs))

    @classmethod
    def from_descending(cls, coeffs: Sequence) -> "RatPoly":
        return cls(reversed(list(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other: "RatPoly") -> "RatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly(x + y for x, y in zip(a, b))

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            return RatPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        result = RatPoly([1])
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other: "RatPoly"):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return RatPoly(), self
        q = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        dn = len(other.coeffs) - 1
        for i in range(len(rem) - 1, dn - 1, -1):
            c = rem[i]
            if c:
                qc = c / lead
                q[i - dn] = qc
                for j, d in enumerate(other.coeffs):
                    rem[i - dn + j] -= qc * d
        return RatPoly(q), RatPoly(rem[:dn])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "RatPoly":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return RatPoly(c / lead for c in self.coeffs)

    def derivative(self) -> "RatPoly":
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_int_primitive(self) -> LaurentPoly:
        """Clear denominators, drop content, make the leading coefficient positive."""
        if not self.coeffs:
            return ZERO
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        return primitive_part(LaurentPoly(tuple(ints))).normalized()


def rat_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd over Q (zero only if both inputs are zero)."""
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def rat_lcm(a: RatPoly, b: RatPoly) -> RatPoly:
    if not a.coeffs or not b.coeffs:
        return RatPoly()
    return (a * b // rat_gcd(a, b)).monic()


def squarefree_decomposition(f: RatPoly) -> list:
    """Yun's algorithm: list of (s_i, i) with f = lc * prod s_i^i, s_i monic squarefree."""
    out = []
    if f.degree < 1:
        return out
    df = f.derivative()
    a = rat_gcd(f, df)
    b = f // a
    c = df // a
    i = 1
    while b.degree >= 1:
        d = c - b.derivative()
        y = rat_gcd(b, d)
        if y.degree >= 1:
            out.append((y, i))
        b = b // y
        c = d // y
        i += 1
    return out
