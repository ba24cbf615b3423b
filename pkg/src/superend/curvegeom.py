"""Newton-polygon geometry of the curve y^q = f(x).

Eigenvalues of the automorphism (x, y) -> (x, zeta*y) acting on
differentials of the first kind are indexed by an exponent i, standing for
zeta^(-i); no numeric roots of unity appear anywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .exactalg import PrimePower, UniPoly, cyclotomic_prime_power, euler_phi

__all__ = [
    "DivisibilityCase",
    "CurveShape",
    "LatticePoint",
    "MultiplicityTable",
    "ShapeError",
    "genus",
    "interior_lattice_points",
    "count_interior_lattice_points",
    "lattice_row_counts",
    "multiplicity_table",
    "primitive_mass",
    "spectrum_minimal_polynomial",
    "eigenvalue_order",
]


class ShapeError(ValueError):
    """An operation was called on a shape outside its hypotheses."""


class DivisibilityCase(enum.Enum):
    COPRIME = "CoprimeCase"
    DIVISIBLE = "DivisibleCase"


@dataclass(frozen=True)
class CurveShape:
    n: int
    pp: PrimePower

    def __post_init__(self):
        if self.n < 2:
            raise ShapeError(f"degree n={self.n} must be >= 2")
        if self.n % self.pp.p == 0 and self.n % self.pp.q != 0:
            raise ShapeError(
                f"p={self.pp.p} divides n={self.n} but q={self.pp.q} does not"
            )

    @classmethod
    def of(cls, n: int, q: int) -> "CurveShape":
        return cls(n, PrimePower.from_q(q))

    @property
    def q(self) -> int:
        return self.pp.q

    @property
    def p(self) -> int:
        return self.pp.p

    @property
    def case(self) -> DivisibilityCase:
        if self.n % self.pp.p:
            return DivisibilityCase.COPRIME
        return DivisibilityCase.DIVISIBLE

    @property
    def coprime(self) -> bool:
        return self.case is DivisibilityCase.COPRIME

    def reduced(self) -> "CurveShape":
        """Shape after the degree-reduction substitution (n -> n - 1)."""
        if self.coprime:
            raise ShapeError("reduction applies only when q divides n")
        return CurveShape(self.n - 1, self.pp)

    def require_coprime(self, what: str):
        if not self.coprime:
            raise ShapeError(f"{what} requires p not dividing n (got n={self.n}, q={self.q})")

    def __str__(self):
        return f"(n={self.n}, q={self.q})"


class LatticePoint(NamedTuple):
    j: int
    i: int


def genus(shape: CurveShape) -> int:
    q, n = shape.q, shape.n
    if shape.coprime:
        return (q - 1) * (n - 1) // 2
    return (q - 1) * (n - 2) // 2


def interior_lattice_points(shape: CurveShape) -> list[LatticePoint]:
    """Integer points strictly inside the triangle (0,0), (0,q), (n,0)."""
    shape.require_coprime("lattice-point enumeration")
    n, q = shape.n, shape.q
    return [
        LatticePoint(j, i)
        for i in range(1, q)
        for j in range(1, n)
        if q * j + n * i < n * q
    ]


def _interior_mask(n: int, q: int) -> np.ndarray:
    i = np.arange(1, q, dtype=np.int64)[:, None]
    j = np.arange(1, n, dtype=np.int64)[None, :]
    return q * j + n * i < n * q


def count_interior_lattice_points(shape: CurveShape) -> int:
    """Same enumeration as :func:`interior_lattice_points`, vectorized."""
    shape.require_coprime("lattice-point enumeration")
    return int(_interior_mask(shape.n, shape.q).sum())


def lattice_row_counts(shape: CurveShape) -> list[int]:
    """Element k is the number of interior points on the row i = k + 1."""
    shape.require_coprime("lattice-point enumeration")
    return _interior_mask(shape.n, shape.q).sum(axis=1).tolist()


@dataclass(frozen=True)
class MultiplicityTable:
    """Multiplicity of the eigenvalue zeta^(-i) for i = 1 .. q-1."""

    shape: CurveShape
    entries: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        if not 1 <= i < self.shape.q:
            raise IndexError(i)
        return self.entries[i - 1]

    def items(self):
        return enumerate(self.entries, start=1)

    def total(self) -> int:
        return sum(self.entries)

    def as_dict(self) -> dict[str, int]:
        return {str(i): m for i, m in self.items()}


def multiplicity_table(shape: CurveShape) -> MultiplicityTable:
    shape.require_coprime("the differential spectrum")
    n, q = shape.n, shape.q
    return MultiplicityTable(shape, tuple(n * i // q for i in range(1, q)))


def primitive_mass(shape: CurveShape) -> int:
    """Total multiplicity of the primitive q-th roots of unity."""
    table = multiplicity_table(shape)
    p = shape.p
    return sum(m for i, m in table.items() if i % p)


def eigenvalue_order(i: int, pp: PrimePower) -> int:
    """Multiplicative order of zeta^(-i), zeta a primitive q-th root."""
    k = pp.r
    while k and i % pp.p == 0:
        i //= pp.p
        k -= 1
    return pp.p**k


def spectrum_minimal_polynomial(shape: CurveShape) -> UniPoly:
    """Product of the cyclotomic factors whose roots occur in the spectrum."""
    table = multiplicity_table(shape)
    pp = shape.pp
    orders = {eigenvalue_order(i, pp) for i, m in table.items() if m > 0}
    return _cyclotomic_product(pp, tuple(k for k in range(1, pp.r + 1) if pp.p**k in orders))


@lru_cache(maxsize=None)
def _cyclotomic_product(pp: PrimePower, ks: tuple[int, ...]) -> UniPoly:
    result = UniPoly([1])
    for k in ks:
        result = result * cyclotomic_prime_power(pp, k)
    return result


def expected_primitive_mass(shape: CurveShape) -> int:
    return (shape.n - 1) * euler_phi(shape.q) // 2
