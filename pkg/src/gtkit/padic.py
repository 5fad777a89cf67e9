"""Fixed-precision p-adic arithmetic, quadratic extensions Q_p(sqrt(mu)), p-adic probability.

Numbers are stored as valuation + digit window (least significant first) at a
relative precision of N digits, Hensel-code style.  Absolute precision is
valuation + N; sums propagate the min of the operands' absolute precisions and
products the min of their relative precisions, so precision never silently
degrades along a computation chain.

Zero is a distinguished value (valuation +inf, empty digit window); a sum
whose digits cancel completely collapses to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import errors

DEFAULT_PRECISION = 32


def is_prime(p):
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _check_prime(p):
    if not is_prime(p):
        raise errors.InvalidPrime(f"{p} is not prime")


def _int_valuation(n, p):
    if n == 0:
        return math.inf
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_valuation(q, p):
    """nu_p of an exact rational; +inf for zero."""
    _check_prime(p)
    q = Fraction(q)
    if q == 0:
        return math.inf
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


def rational_norm(q, p):
    """|q|_p as an exact Fraction: p**(-nu_p(q)), 0 for q = 0."""
    v = rational_valuation(q, p)
    if v is math.inf:
        return Fraction(0)
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


class PAdicNumber:
    """Element of Q_p known to relative precision N.

    Nonzero values carry a unit digit window (digits[0] != 0); the canonical
    zero has valuation +inf and no digits.
    """

    __slots__ = ("p", "valuation", "digits")

    def __init__(self, p, valuation, digits):
        _check_prime(p)
        digits = tuple(int(d) for d in digits)
        if digits:
            if any(not (0 <= d < p) for d in digits):
                raise errors.InvalidArgument(f"digits out of range for p={p}: {digits}")
            if digits[0] == 0:
                raise errors.InvalidArgument("unit part must not start with digit 0")
            valuation = int(valuation)
        else:
            valuation = math.inf
        self.p = p
        self.valuation = valuation
        self.digits = digits

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls, p):
        return cls(p, math.inf, ())

    @classmethod
    def _from_unit(cls, p, valuation, unit, n):
        unit %= p**n
        digits = []
        r = unit
        for _ in range(n):
            r, d = divmod(r, p)
            digits.append(d)
        return cls(p, valuation, digits)

    @property
    def precision(self):
        """Relative precision: number of known digits."""
        return len(self.digits)

    @property
    def absolute_precision(self):
        """Exponent of the O(p^k) error window; +inf for the canonical zero."""
        if self.is_zero:
            return math.inf
        return self.valuation + len(self.digits)

    @property
    def is_zero(self):
        return not self.digits

    @property
    def unit(self):
        """The digit window as an integer (unit part mod p**N)."""
        total = 0
        for d in reversed(self.digits):
            total = total * self.p + d
        return total

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PAdicNumber):
            return NotImplemented
        if self.p != other.p:
            return False
        return self.valuation == other.valuation and self.digits == other.digits

    def __hash__(self):
        return hash((self.p, self.valuation, self.digits))

    def __repr__(self):
        return f"PAdicNumber({format_padic(self)!r})"

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __truediv__(self, other):
        return div(self, other)

    def __neg__(self):
        return neg(self)

    def to_rational(self):
        """Best small rational representative of the digit window.

        Balanced (Wang) reconstruction: returns a/b with |a|, |b| bounded by
        sqrt(p^N / 2) when such a representative exists, else the canonical
        integer representative of the window.  Desk-scale values embedded via
        padic_from_rational round-trip exactly.
        """
        if self.is_zero:
            return Fraction(0)
        m = self.p ** len(self.digits)
        rec = _rational_reconstruct(self.unit, m)
        if rec is None:
            rec = Fraction(self.unit)
        scale = Fraction(self.p) ** self.valuation
        return rec * scale


def _rational_reconstruct(u, m):
    bound = math.isqrt(m // 2)
    r0, r1 = m, u % m
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or math.gcd(abs(t1), m) != 1:
        return None
    return Fraction(r1, t1)


def padic_from_rational(a, b, p, n=DEFAULT_PRECISION):
    """Canonical expansion of a/b in Q_p to relative precision n digits."""
    _check_prime(p)
    if n < 1:
        raise errors.InvalidArgument("precision must be >= 1")
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        raise errors.DivisionByZero("denominator is zero")
    q = a / b
    if q == 0:
        return PAdicNumber.zero(p)
    num, den = q.numerator, q.denominator
    v = _int_valuation(num, p) - _int_valuation(den, p)
    num //= p ** max(0, _int_valuation(num, p))
    den //= p ** max(0, _int_valuation(den, p))
    unit = num * pow(den, -1, p**n) % p**n
    return PAdicNumber._from_unit(p, v, unit, n)


def valuation(x):
    """p-adic valuation nu_p(x); +inf for zero."""
    return x.valuation


def norm(x):
    """|x|_p = p**(-valuation), exact Fraction; 0 for zero."""
    if x.is_zero:
        return Fraction(0)
    v = x.valuation
    return Fraction(1, x.p**v) if v >= 0 else Fraction(x.p ** (-v))


def distance(x, y):
    """Ultrametric distance d_p(x, y) = |x - y|_p."""
    return norm(sub(x, y))


def _check_same_prime(x, y):
    if x.p != y.p:
        raise errors.PrimeMismatch(f"operands over Q_{x.p} and Q_{y.p}")


def add(x, y):
    """Sum with the absolute-precision rule min(k1, k2): p-adic errors do not add."""
    _check_same_prime(x, y)
    if x.is_zero:
        return y
    if y.is_zero:
        return x
    absolute = min(x.absolute_precision, y.absolute_precision)
    base = min(x.valuation, y.valuation)
    width = absolute - base
    residue = x.unit * x.p ** (x.valuation - base) + y.unit * y.p ** (y.valuation - base)
    residue %= x.p**width
    if residue == 0:
        return PAdicNumber.zero(x.p)
    shift = _int_valuation(residue, x.p)
    return PAdicNumber._from_unit(x.p, base + shift, residue // x.p**shift, width - shift)


def neg(x):
    if x.is_zero:
        return x
    n = len(x.digits)
    return PAdicNumber._from_unit(x.p, x.valuation, x.p**n - x.unit, n)


def sub(x, y):
    return add(x, neg(y))


def mul(x, y):
    """Product; relative precision is min of the operands' relative precisions."""
    _check_same_prime(x, y)
    if x.is_zero or y.is_zero:
        return PAdicNumber.zero(x.p)
    n = min(len(x.digits), len(y.digits))
    return PAdicNumber._from_unit(x.p, x.valuation + y.valuation, x.unit * y.unit, n)


def div(x, y):
    _check_same_prime(x, y)
    if y.is_zero:
        raise errors.DivisionByZero("p-adic division by zero")
    if x.is_zero:
        return x
    n = min(len(x.digits), len(y.digits))
    inv = pow(y.unit % y.p**n, -1, y.p**n)
    return PAdicNumber._from_unit(x.p, x.valuation - y.valuation, x.unit * inv, n)


def is_square(x):
    """Squareness in Q_p: even valuation plus the unit-part residue criterion.

    p odd: the unit must be a quadratic residue mod p; p = 2: the unit must be
    1 mod 8.  is_square(zero) is True by convention (0 = 0**2).
    """
    if x.is_zero:
        return True
    if x.valuation % 2 != 0:
        return False
    if x.p == 2:
        if len(x.digits) < 3:
            raise errors.InvalidArgument("need at least 3 digits to decide squareness in Q_2")
        return x.unit % 8 == 1
    u0 = x.unit % x.p
    return pow(u0, (x.p - 1) // 2, x.p) == 1


def hensel_sqrt(x):
    """Square root by Hensel lifting; raises InvalidArgument for non-squares."""
    if x.is_zero:
        return x
    if not is_square(x):
        raise errors.InvalidArgument("not a square in Q_p")
    p, n = x.p, len(x.digits)
    u = x.unit
    if p == 2:
        # lift bit by bit: root of a unit = 1 mod 8 is determined mod 2**(n-1)
        r = 1
        for k in range(3, n + 1):
            if (r * r - u) % 2 ** (k + 1) != 0:
                r += 2 ** (k - 1)
        width = max(1, n - 1)
        return PAdicNumber._from_unit(2, x.valuation // 2, r % 2**width, width)
    r = next(c for c in range(1, p) if (c * c - u) % p == 0)
    k = 1
    while k < n:
        k = min(2 * k, n)
        mod = p**k
        r = (r - (r * r - u) * pow(2 * r, -1, mod)) % mod
    return PAdicNumber._from_unit(p, x.valuation // 2, r, n)


def find_nonresidue(p, n=8):
    """A canonical non-square mu of Q_p: -1 for p = 3 mod 4, 3 for p = 2,
    else the smallest positive integer that fails is_square."""
    _check_prime(p)
    if p == 2:
        mu = 3
    elif p % 4 == 3:
        mu = -1
    else:
        mu = next(
            c for c in range(2, p) if is_square(padic_from_rational(c, 1, p, n)) is False
        )
    assert not is_square(padic_from_rational(mu, 1, p, max(n, 8)))
    return mu


# ---------------------------------------------------------------------------
# literals


def format_padic(x):
    """Literal form "valuation:d0.d1....@p^N"; the canonical zero prints as "inf:@p^0"."""
    if x.is_zero:
        return f"inf:@{x.p}^0"
    body = ".".join(str(d) for d in x.digits)
    return f"{x.valuation}:{body}@{x.p}^{len(x.digits)}"


def parse_padic(text):
    """Parse the literal format produced by format_padic."""
    try:
        head, tail = text.split("@")
        p_s, n_s = tail.split("^")
        p, n = int(p_s), int(n_s)
        val_s, digit_s = head.split(":")
        if val_s == "inf":
            return PAdicNumber.zero(p)
        digits = [int(d) for d in digit_s.split(".")] if digit_s else []
        if len(digits) != n:
            raise ValueError(f"{n} digits declared, {len(digits)} given")
        return PAdicNumber(p, int(val_s), digits)
    except errors.GTError:
        raise
    except Exception as exc:
        raise errors.ParseError(f"bad p-adic literal {text!r}: {exc}") from exc


def format_ext(z):
    """Extension-element literal "x|y" meaning x + y*sqrt(mu), components in literal form."""
    return f"{format_padic(z.x)}|{format_padic(z.y)}"


def parse_ext(text, mu):
    """Parse the "x|y" literal produced by format_ext."""
    try:
        x_s, y_s = text.split("|")
    except ValueError as exc:
        raise errors.ParseError(f"bad extension literal {text!r}: expected 'x|y'") from exc
    return PAdicExtElement(parse_padic(x_s), parse_padic(y_s), mu)


def noncanonical_sort_key(x):
    """Sort key by (norm, digit sequence).

    Q_p carries no canonical total order; this comparator is provided for
    deterministic reporting only and is explicitly non-canonical.
    """
    return (norm(x), x.digits)


# ---------------------------------------------------------------------------
# quadratic extension Q_p(sqrt(mu))


_VERIFIED_NONSQUARES = set()


@dataclass(frozen=True)
class PAdicExtElement:
    """z = x + y*sqrt(mu) with x, y in Q_p and mu a verified non-square."""

    x: PAdicNumber
    y: PAdicNumber
    mu: int

    def __post_init__(self):
        if self.x.p != self.y.p:
            raise errors.PrimeMismatch("extension components over different primes")
        key = (self.x.p, self.mu)
        if key not in _VERIFIED_NONSQUARES:
            if is_square(padic_from_rational(self.mu, 1, self.x.p, 8)):
                raise errors.InvalidArgument(f"mu={self.mu} is a square in Q_{self.x.p}")
            _VERIFIED_NONSQUARES.add(key)

    @property
    def p(self):
        return self.x.p

    @property
    def is_zero(self):
        return self.x.is_zero and self.y.is_zero

    @classmethod
    def from_rationals(cls, x, y, p, mu, n=DEFAULT_PRECISION):
        return cls(padic_from_rational(Fraction(x), 1, p, n), padic_from_rational(Fraction(y), 1, p, n), mu)

    def _mu_scalar(self, n):
        return padic_from_rational(self.mu, 1, self.p, n)

    def __add__(self, other):
        self._check(other)
        return PAdicExtElement(add(self.x, other.x), add(self.y, other.y), self.mu)

    def __sub__(self, other):
        self._check(other)
        return PAdicExtElement(sub(self.x, other.x), sub(self.y, other.y), self.mu)

    def __mul__(self, other):
        self._check(other)
        n = max(len(c.digits) for c in (self.x, self.y, other.x, other.y)) or DEFAULT_PRECISION
        mu = self._mu_scalar(n)
        xx = add(mul(self.x, other.x), mul(mu, mul(self.y, other.y)))
        yy = add(mul(self.x, other.y), mul(self.y, other.x))
        return PAdicExtElement(xx, yy, self.mu)

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero:
            raise errors.DivisionByZero("extension division by zero")
        w = other.field_norm()
        conj_other = ext_conj(other)
        num = self * conj_other
        return PAdicExtElement(div(num.x, w), div(num.y, w), self.mu)

    def __neg__(self):
        return PAdicExtElement(neg(self.x), neg(self.y), self.mu)

    def _check(self, other):
        if not isinstance(other, PAdicExtElement):
            raise errors.InvalidArgument("extension arithmetic needs extension operands")
        if self.p != other.p or self.mu != other.mu:
            raise errors.PrimeMismatch("operands from different extensions")

    def field_norm(self):
        """z * conj(z) = x**2 - mu*y**2, an element of Q_p."""
        n = max(len(self.x.digits), len(self.y.digits)) or DEFAULT_PRECISION
        return sub(mul(self.x, self.x), mul(self._mu_scalar(n), mul(self.y, self.y)))

    def __repr__(self):
        return f"PAdicExtElement({format_padic(self.x)!r} | {format_padic(self.y)!r}, mu={self.mu})"


def ext_zero(p, mu):
    return PAdicExtElement(PAdicNumber.zero(p), PAdicNumber.zero(p), mu)


def ext_conj(z):
    """Conjugation z -> x - y*sqrt(mu); an involution."""
    return PAdicExtElement(z.x, neg(z.y), z.mu)


def ext_eq(a, b):
    """Equality to working precision: the difference cancels to the canonical zero."""
    return (a - b).is_zero


@dataclass(frozen=True, order=False)
class UltraNorm:
    """Value of the extension norm sqrt(|z conj(z)|_p): zero or an exact power p**exponent.

    The exponent is an exact Fraction with denominator 1 or 2, so half-integer
    powers stay exact; `exponent is None` encodes the value 0.
    """

    p: int
    exponent: object  # Fraction | None

    @classmethod
    def zero(cls, p):
        return cls(p, None)

    @property
    def is_zero(self):
        return self.exponent is None

    def __float__(self):
        if self.is_zero:
            return 0.0
        return float(self.p) ** float(self.exponent)

    def __mul__(self, other):
        if self.p != other.p:
            raise errors.PrimeMismatch("norms over different primes")
        if self.is_zero or other.is_zero:
            return UltraNorm.zero(self.p)
        return UltraNorm(self.p, self.exponent + other.exponent)

    def _key(self):
        return self.exponent if not self.is_zero else None

    def __lt__(self, other):
        if self.is_zero:
            return not other.is_zero
        if other.is_zero:
            return False
        return self.exponent < other.exponent

    def __le__(self, other):
        return self < other or self == other


def ext_norm(z):
    """Non-Archimedean extension valuation |z|_{p,mu} = sqrt(|z*conj(z)|_p)."""
    w = z.field_norm()
    if w.is_zero:
        return UltraNorm.zero(z.p)
    return UltraNorm(z.p, Fraction(-w.valuation, 2))


# ---------------------------------------------------------------------------
# p-adic probability


@dataclass(frozen=True)
class PAdicDistribution:
    """Sequence of exact rationals (read in Q_p) summing to exactly 1.

    Entries may be negative or exceed 1: any rational sequence with total 1 is
    a legitimate p-adic probability distribution.
    """

    entries: tuple
    p: int

    def __post_init__(self):
        _check_prime(self.p)
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))
        if sum(self.entries, Fraction(0)) != 1:
            raise errors.InvalidArgument("p-adic distribution entries must sum to exactly 1")

    def __len__(self):
        return len(self.entries)


def distribution_check(entries):
    """True iff the exact rational sum of the sequence equals 1."""
    seq = entries.entries if isinstance(entries, PAdicDistribution) else entries
    return sum((Fraction(e) for e in seq), Fraction(0)) == 1


@dataclass(frozen=True)
class PAdicValue:
    """An exact rational read in Q_p, reported with its valuation and norm."""

    value: Fraction
    p: int
    valuation: object
    norm: Fraction


def padic_expected_payoff(payoffs, dist):
    """Exact weighted sum of rational payoffs under a p-adic distribution."""
    if not isinstance(dist, PAdicDistribution):
        raise errors.InvalidArgument("expected a PAdicDistribution")
    payoffs = [Fraction(u) for u in payoffs]
    if len(payoffs) != len(dist.entries):
        raise errors.InvalidArgument(
            f"{len(payoffs)} payoffs against {len(dist.entries)} probabilities"
        )
    total = sum((w * u for w, u in zip(dist.entries, payoffs)), Fraction(0))
    return PAdicValue(total, dist.p, rational_valuation(total, dist.p), rational_norm(total, dist.p))
