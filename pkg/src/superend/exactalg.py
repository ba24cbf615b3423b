"""Exact rational and modular polynomial arithmetic.

Rationals are :class:`fractions.Fraction` (always gcd-normalized).  Dense
univariate polynomials are stored low-degree first and are generic over an
exact coefficient field, so the same engine works over Q and over a number
field ``Q[x]/(f)`` (see :mod:`superend.numberfield`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "QQ",
    "RationalField",
    "UniPoly",
    "ModPoly",
    "PrimePower",
    "NotSquarefree",
    "is_prime",
    "primes",
    "prime_powers",
    "euler_phi",
    "poly_gcd",
    "resultant",
    "discriminant",
    "cyclotomic_prime_power",
    "pq_polynomial",
    "distinct_degree_factor_degrees",
]


class NotSquarefree(ValueError):
    """Raised when a polynomial mod p has a repeated factor."""


# ---------------------------------------------------------------------------
# integers

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for w in _MR_WITNESSES:
        if n % w == 0:
            return n == w
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
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


def primes(start: int = 2):
    """Yield primes >= start in increasing order."""
    k = max(start, 2)
    while True:
        if is_prime(k):
            yield k
        k += 1


def euler_phi(n: int) -> int:
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


@dataclass(frozen=True)
class PrimePower:
    """The cover degree q = p**r."""

    p: int
    r: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"p={self.p!r} is not prime")
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"r={self.r!r} must be a positive integer")

    @property
    def q(self) -> int:
        return self.p**self.r

    @classmethod
    def from_q(cls, q: int) -> "PrimePower":
        if not isinstance(q, int) or q < 2:
            raise ValueError(f"q={q!r} is not a prime power")
        p = next(d for d in range(2, q + 1) if q % d == 0)
        r, m = 0, q
        while m % p == 0:
            m //= p
            r += 1
        if m != 1:
            raise ValueError(f"q={q} is not a prime power")
        return cls(p, r)

    def __str__(self):
        return f"{self.q}" if self.r == 1 else f"{self.p}^{self.r}"


def prime_powers(q_max: int) -> list[PrimePower]:
    """All prime powers 2 <= q <= q_max, ordered by q."""
    out = []
    for q in range(2, q_max + 1):
        try:
            out.append(PrimePower.from_q(q))
        except ValueError:
            pass
    return out


# ---------------------------------------------------------------------------
# coefficient fields


class RationalField:
    """The field Q, with :class:`Fraction` elements."""

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


# ---------------------------------------------------------------------------
# dense univariate polynomials


def _trim(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UniPoly:
    """Immutable dense polynomial; ``coeffs[k]`` is the coefficient of x**k."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable = (), field=QQ):
        self.field = field
        self.coeffs = _trim([field(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple, field) -> "UniPoly":
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        return obj

    @classmethod
    def from_high(cls, coeffs: Sequence, field=QQ) -> "UniPoly":
        """Build from coefficients listed highest degree first."""
        return cls(reversed(list(coeffs)), field)

    @classmethod
    def monomial(cls, degree: int, coeff=1, field=QQ) -> "UniPoly":
        return cls([0] * degree + [coeff], field)

    @classmethod
    def x(cls, field=QQ) -> "UniPoly":
        return cls.monomial(1, 1, field)

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        return UniPoly([other], self.field)

    # -- basic properties --------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def high(self) -> list:
        """Coefficients highest degree first."""
        return list(reversed(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return self.coeffs == (self.field(other),)

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            cs = str(c)
            if mono and cs == "1":
                cs = ""
            elif mono and cs == "-1":
                cs = "-"
            elif mono and not isinstance(c, (int, Fraction)):
                cs = f"({cs})*"
            elif mono:
                cs += "*"
            terms.append(cs + mono)
        return " + ".join(terms).replace("+ -", "- ")

    # -- ring operations ---------------------------------------------------

    def __neg__(self):
        return UniPoly._raw(tuple(-c for c in self.coeffs), self.field)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return UniPoly._raw(_trim(out), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = self.field(other)
            if c == 0:
                return UniPoly._raw((), self.field)
            return UniPoly._raw(tuple(a * c for a in self.coeffs), self.field)
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly._raw((), self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        bnz = [(j, b) for j, b in enumerate(other.coeffs) if b != 0]
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in bnz:
                out[i + j] = out[i + j] + a * b
        return UniPoly._raw(_trim(out), self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = UniPoly([1], self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = self.field.one / other.lc
        if len(rem) - 1 < db:
            return UniPoly._raw((), self.field), self
        quot = [self.field.zero] * (len(rem) - db)
        bnz = [(j, b) for j, b in enumerate(other.coeffs[:-1]) if b != 0]
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            c = c * inv_lc
            quot[k - db] = c
            rem[k] = self.field.zero
            shift = k - db
            for j, b in bnz:
                rem[shift + j] = rem[shift + j] - c * b
        return UniPoly._raw(_trim(quot), self.field), UniPoly._raw(_trim(rem[:db]), self.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # -- calculus and substitutions --------------------------------------

    def __call__(self, value):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly._raw(
            _trim([c * k for k, c in enumerate(self.coeffs)][1:]), self.field
        )

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        inv = self.field.one / self.lc
        return UniPoly._raw(tuple(c * inv for c in self.coeffs), self.field)

    def shift(self, a) -> "UniPoly":
        """Return p(x + a) (Horner-style Taylor shift)."""
        a = self.field(a)
        out = [self.field.zero] * len(self.coeffs)
        for c in reversed(self.coeffs):
            # out <- out * (x + a) + c
            for k in range(len(out) - 1, 0, -1):
                out[k] = out[k - 1] + out[k] * a
            out[0] = out[0] * a + c
        return UniPoly._raw(_trim(out), self.field)

    def reversal(self, degree: int | None = None) -> "UniPoly":
        """Return x**degree * p(1/x); degree defaults to deg p."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        padded = list(self.coeffs) + [self.field.zero] * (d + 1 - len(self.coeffs))
        return UniPoly._raw(_trim(padded[::-1]), self.field)

    def is_integral(self) -> bool:
        return all(isinstance(c, Fraction) and c.denominator == 1 for c in self.coeffs)

    def integer_coeffs(self) -> list[int]:
        """Integer coefficients, low degree first."""
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return [int(c) for c in self.coeffs]


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic()


def extended_gcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    one = UniPoly([1], a.field)
    zero = UniPoly([], a.field)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if not r0:
        return r0, s0, t0
    inv = a.field.one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def resultant(a: UniPoly, b: UniPoly):
    """Res(a, b) by the Euclidean remainder sequence over a field."""
    if a.is_zero() or b.is_zero():
        return a.field.zero
    field = a.field
    acc = field.one
    while True:
        m, n = a.degree, b.degree
        if n == 0:
            return acc * b.lc**m
        r = a % b
        if r.is_zero():
            return field.zero
        k = r.degree
        if (m * n) % 2:
            acc = -acc
        acc = acc * b.lc ** (m - k)
        a, b = b, r


def discriminant(f: UniPoly):
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    res = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / f.lc


# ---------------------------------------------------------------------------
# cyclotomic polynomials


@lru_cache(maxsize=None)
def cyclotomic_prime_power(pp: PrimePower, i: int) -> UniPoly:
    """Phi_{p^i}(t) = sum_{k<p} t^(k p^(i-1))."""
    if not 1 <= i <= pp.r:
        raise ValueError(f"i={i} outside 1..{pp.r}")
    step = pp.p ** (i - 1)
    coeffs = [0] * ((pp.p - 1) * step + 1)
    for k in range(pp.p):
        coeffs[k * step] = 1
    return UniPoly(coeffs)


@lru_cache(maxsize=None)
def pq_polynomial(pp: PrimePower) -> UniPoly:
    """P_q(t) = (t^q - 1)/(t - 1)."""
    return UniPoly([1] * pp.q)


# ---------------------------------------------------------------------------
# polynomials over F_p


@dataclass(frozen=True)
class ModPoly:
    """Polynomial over F_p; ``coeffs`` low degree first, trimmed, reduced."""

    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        p = self.modulus
        object.__setattr__(self, "coeffs", _mtrim([c % p for c in self.coeffs]))

    @classmethod
    def from_unipoly(cls, f: UniPoly, p: int) -> "ModPoly":
        out = []
        for c in f.coeffs:
            c = Fraction(c)
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            out.append(c.numerator * pow(c.denominator, -1, p))
        return cls(p, tuple(out))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def _mtrim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _msub(a, b, p):
    n = max(len(a), len(b))
    return _mtrim([((a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0)) % p for k in range(n)])


def _mmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _mtrim([c % p for c in out])


def _mdivmod(a, b, p):
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return (), tuple(rem)
    inv = pow(b[-1], -1, p)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] * inv % p
        if c:
            quot[k - db] = c
            for j in range(db + 1):
                rem[k - db + j] = (rem[k - db + j] - c * b[j]) % p
    return _mtrim(quot), _mtrim(rem[:db])


def _mgcd(a, b, p):
    while b:
        a, b = b, _mdivmod(a, b, p)[1]
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


def _mpowmod(base, e, mod, p):
    result = (1,)
    base = _mdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _mdivmod(_mmul(result, base, p), mod, p)[1]
        base = _mdivmod(_mmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def distinct_degree_factor_degrees(f: ModPoly) -> dict[int, int]:
    """Map d -> number of monic irreducible degree-d factors of a squarefree f."""
    p = f.modulus
    a = f.coeffs
    if len(a) < 2:
        return {}
    deriv = _mtrim([k * c % p for k, c in enumerate(a)][1:])
    if len(_mgcd(a, deriv, p)) != 1:
        raise NotSquarefree(f"polynomial is not squarefree mod {p}")
    result: dict[int, int] = {}
    x = (0, 1)
    h = x
    d = 0
    while len(a) - 1 >= 2 * (d + 1):
        d += 1
        h = _mpowmod(h, p, a, p)
        g = _mgcd(a, _msub(h, x, p), p)
        if len(g) > 1:
            result[d] = (len(g) - 1) // d
            a = _mdivmod(a, g, p)[0]
            h = _mdivmod(h, a, p)[1]
    if len(a) > 1:
        result[len(a) - 1] = result.get(len(a) - 1, 0) + 1
    return dict(sorted(result.items()))
