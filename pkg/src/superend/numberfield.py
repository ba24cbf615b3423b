"""Arithmetic in K1 = Q[x]/(f) and the degree-reducing substitution.

When q divides n = deg f, pick a root alpha of f (the class of x in K1),
split off f = (x - alpha) * f1, shift h(x) = f1(x + alpha) and reverse
h1(x) = x^(n-1) h(1/x).  The curve y^q = f(x) is birational to
y1^q = h1(x1) via x1 = 1/(x - alpha), y1 = y/(x - alpha)^(n/q), and p no
longer divides deg h1 = n - 1.

f is never checked for irreducibility up front.  If it factors, some
inversion in K1 eventually hits a zero divisor and :class:`NonInvertible`
carries the factor that was found.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curvegeom import CurveShape, genus
from .exactalg import QQ, PrimePower, UniPoly, extended_gcd, poly_gcd

__all__ = [
    "NonInvertible",
    "NumberField",
    "NumberFieldElement",
    "ReductionResult",
    "degree_reduction",
    "reduced_genus_consistency",
]


class NonInvertible(ArithmeticError):
    """A zero divisor was found; ``factor`` is a nontrivial factor of the modulus."""

    def __init__(self, msg: str, factor: UniPoly):
        super().__init__(msg)
        self.factor = factor


class NumberField:
    """Q[x]/(modulus); used as a coefficient field for :class:`UniPoly`."""

    def __init__(self, modulus: UniPoly, name: str = "a"):
        if modulus.field is not QQ or modulus.degree < 1:
            raise ValueError("modulus must be a nonconstant polynomial over Q")
        self.modulus = modulus.monic()
        self.name = name
        self.zero = NumberFieldElement(self, UniPoly())
        self.one = NumberFieldElement(self, UniPoly([1]))

    @property
    def degree(self) -> int:
        return self.modulus.degree

    @property
    def gen(self) -> "NumberFieldElement":
        return NumberFieldElement(self, UniPoly.x())

    def __call__(self, value) -> "NumberFieldElement":
        if isinstance(value, NumberFieldElement):
            if value.field != self:
                raise ValueError("element of a different number field")
            return value
        if isinstance(value, UniPoly):
            return NumberFieldElement(self, value)
        return NumberFieldElement(self, UniPoly([Fraction(value)]))

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"NumberField({self.modulus})"


class NumberFieldElement:
    __slots__ = ("field", "rep")

    def __init__(self, field: NumberField, rep: UniPoly):
        self.field = field
        self.rep = rep % field.modulus if rep.degree >= field.degree else rep

    def _other(self, other) -> "NumberFieldElement":
        if isinstance(other, NumberFieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("operands live in different number fields")
            return other
        return self.field(other)

    def __add__(self, other):
        return NumberFieldElement(self.field, self.rep + self._other(other).rep)

    __radd__ = __add__

    def __sub__(self, other):
        return NumberFieldElement(self.field, self.rep - self._other(other).rep)

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return NumberFieldElement(self.field, -self.rep)

    def __mul__(self, other):
        return NumberFieldElement(self.field, self.rep * self._other(other).rep)

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        g, s, _ = extended_gcd(self.rep, self.field.modulus)
        if g.degree != 0:
            if not self.rep:
                raise ZeroDivisionError("division by zero in number field")
            raise NonInvertible(f"{self.rep} shares the factor {g} with the modulus", g)
        return NumberFieldElement(self.field, s)

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, NumberFieldElement):
            return self.field == other.field and self.rep == other.rep
        try:
            return self.rep == UniPoly([Fraction(other)])
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def __bool__(self):
        return bool(self.rep)

    def __str__(self):
        return str(self.rep).replace("x", self.field.name)

    def __repr__(self):
        return f"NumberFieldElement({self})"

    def coefficients(self) -> list[Fraction]:
        """Coordinates in the power basis 1, a, ..., a^(d-1)."""
        c = list(self.rep.coeffs)
        return c + [Fraction(0)] * (self.field.degree - len(c))


def nf_add(a: NumberFieldElement, b: NumberFieldElement) -> NumberFieldElement:
    return a + b


def nf_mul(a: NumberFieldElement, b: NumberFieldElement) -> NumberFieldElement:
    return a * b


def nf_inv(a: NumberFieldElement) -> NumberFieldElement:
    return a.inverse()


@dataclass(frozen=True)
class ReductionResult:
    f: UniPoly
    pp: PrimePower
    field: NumberField
    f1: UniPoly
    h: UniPoly
    h1: UniPoly
    h1_separable: bool
    galois_note: str

    @property
    def new_degree(self) -> int:
        return self.h1.degree

    @property
    def m(self) -> int:
        return self.f.degree // self.pp.q

    def reconstructs(self) -> bool:
        """(x - alpha) * f1 == f in K1[x]."""
        K = self.field
        lin = UniPoly([-K.gen, 1], K)
        return lin * self.f1 == UniPoly(self.f.coeffs, K)

    def to_dict(self) -> dict:
        return {
            "n": self.f.degree,
            "q": self.pp.q,
            "m": self.m,
            "field_modulus": [str(c) for c in self.field.modulus.high()],
            "h1_degree": self.new_degree,
            "h1_coefficients": [_element_coords(c) for c in self.h1.high()],
            "h1_separable": self.h1_separable,
            "galois_note": self.galois_note,
        }


def _element_coords(c: NumberFieldElement) -> list[str]:
    return [str(x) for x in c.coefficients()]


def _separable(g: UniPoly) -> bool:
    return poly_gcd(g, g.derivative()).degree == 0


def degree_reduction(f: UniPoly, pp: PrimePower) -> ReductionResult:
    n = f.degree
    if n < 1 or n % pp.q:
        raise ValueError(f"q={pp.q} does not divide deg f = {n}")
    if f.lc != 1:
        raise ValueError("degree reduction expects a monic polynomial")
    K = NumberField(f)
    alpha = K.gen
    fK = UniPoly(f.coeffs, K)
    f1, rem = divmod(fK, UniPoly([-alpha, 1], K))
    if rem:
        raise ArithmeticError("f(alpha) != 0: internal invariant violated")
    h = f1.shift(alpha)
    h1 = h.reversal(n - 1)
    return ReductionResult(
        f=f,
        pp=pp,
        field=K,
        f1=f1,
        h=h,
        h1=h1,
        h1_separable=_separable(h1),
        galois_note=(
            f"if Gal(f/Q) is S_{n} (resp. A_{n}) then Gal(h1/K1) is "
            f"S_{n - 1} (resp. A_{n - 1}); recorded, not verified"
        ),
    )


def reduced_genus_consistency(n: int, pp: PrimePower) -> bool:
    """Genus of y^q = f with q | n equals the genus after reduction."""
    if n % pp.q:
        raise ValueError(f"q={pp.q} does not divide n={n}")
    original = genus(CurveShape(n, pp))
    reduced = genus(CurveShape(n - 1, pp))
    return original == reduced
