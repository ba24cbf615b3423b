"""Degree-zero divisors on the branch points modulo principal divisors.

Roots of f are abstract labels 0 .. n-1; B = {(alpha, 0)} and, when p does
not divide n, one extra point at infinity.  Principal divisors supported on
B and infinity are generated by

    div(x - alpha_k) = q (P_k) - q (inf)
    div(y)           = sum_k (P_k) - n (inf)

The class group of B-supported degree-zero divisors is computed from these
relations by a lattice intersection and a Smith normal form, which makes
the "divisible by q" principality criterion a checked consequence rather
than an input.  The automorphism (x, y) -> (x, zeta*y) fixes every point
of B, so it acts trivially on these classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .curvegeom import CurveShape
from .snf import Matrix, matmul, smith_normal_form

__all__ = [
    "BranchDivisor",
    "ClassGroupDescriptor",
    "HeartModule",
    "is_principal",
    "class_group",
    "fixed_submodule",
    "heart_action",
]


@dataclass(frozen=True)
class BranchDivisor:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(a) for a in self.coefficients))
        if sum(self.coefficients) != 0:
            raise ValueError(f"divisor {self.coefficients} has nonzero degree")

    @property
    def n(self) -> int:
        return len(self.coefficients)

    def permuted(self, perm) -> "BranchDivisor":
        """Image under a permutation of the roots (root k goes to perm[k])."""
        out = [0] * self.n
        for k, a in enumerate(self.coefficients):
            out[perm[k]] = a
        return BranchDivisor(tuple(out))


def is_principal(d: BranchDivisor, shape: CurveShape) -> bool:
    shape.require_coprime("the principality criterion")
    if d.n != shape.n:
        raise ValueError(f"divisor has {d.n} coefficients, curve has {shape.n} roots")
    return all(a % shape.q == 0 for a in d.coefficients)


# ---------------------------------------------------------------------------
# relation lattice


def _principal_relations(n: int, q: int) -> Matrix:
    """Rows: divisors on B + {inf} of x - alpha_k and of y (inf coordinate last)."""
    rows = []
    for k in range(n):
        row = [0] * (n + 1)
        row[k] = q
        row[n] = -q
        rows.append(row)
    rows.append([1] * n + [-n])
    return rows


def _integer_kernel(column: list[int]) -> Matrix:
    """Basis (as rows) of {c in Z^m : sum c_k column_k = 0}."""
    m = len(column)
    u, s, _ = smith_normal_form([[c] for c in column])
    rank = 1 if any(column) else 0
    # rows rank.. of U annihilate the column
    return [u[k] for k in range(rank, m)]


def principal_sublattice(n: int, q: int) -> Matrix:
    """Generators of principal divisors supported on B, in B-coordinates."""
    rel = _principal_relations(n, q)
    inf_column = [row[n] for row in rel]
    kernel = _integer_kernel(inf_column)
    combos = matmul(kernel, rel)
    assert all(row[n] == 0 for row in combos)
    return [row[:n] for row in combos]


@dataclass(frozen=True)
class ClassGroupDescriptor:
    """Z^n_0 / principal, via the basis e_k - e_{n-1} of degree-zero divisors."""

    n: int
    q: int
    elementary_divisors: tuple[int, ...]
    # S = U R V; a coordinate vector x has class (x V) mod diag(S)
    _transform: Matrix = field(repr=False, compare=False, default_factory=list)
    _diagonal: tuple[int, ...] = field(repr=False, compare=False, default=())

    @property
    def order(self) -> int:
        out = 1
        for d in self.elementary_divisors:
            out *= d
        return out

    def class_of(self, d: BranchDivisor) -> tuple[int, ...]:
        """Coordinates of the class of d in the product of Z/s_k (s_k > 1)."""
        x = list(d.coefficients[: self.n - 1])
        y = [sum(x[i] * self._transform[i][k] for i in range(len(x))) for k in range(len(x))]
        return tuple(y[k] % s for k, s in enumerate(self._diagonal) if s != 1)

    def is_identity(self, d: BranchDivisor) -> bool:
        return not any(self.class_of(d))

    def classes_of(self, coeffs: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`class_of` over rows of an int64 array."""
        v = np.array(self._transform, dtype=np.int64)
        y = coeffs[:, : self.n - 1] @ v
        keep = [k for k, s in enumerate(self._diagonal) if s != 1]
        mods = np.array([self._diagonal[k] for k in keep], dtype=np.int64)
        return y[:, keep] % mods

    @property
    def transform_bound(self) -> int:
        return max((abs(x) for row in self._transform for x in row), default=0)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "elementary_divisors": list(self.elementary_divisors),
            "order": self.order,
        }


def class_group(shape: CurveShape) -> ClassGroupDescriptor:
    shape.require_coprime("the branch-point class group")
    n, q = shape.n, shape.q
    gens = [row[: n - 1] for row in principal_sublattice(n, q)]
    _, s, v = smith_normal_form(gens)
    diag = tuple(s[k][k] for k in range(n - 1))
    if 0 in diag:
        raise ArithmeticError("principal sublattice has lower rank than expected")
    return ClassGroupDescriptor(
        n=n,
        q=q,
        elementary_divisors=tuple(d for d in diag if d != 1),
        # column k only matters modulo s_k
        _transform=[[x % diag[k] for k, x in enumerate(row)] for row in v],
        _diagonal=diag,
    )


# ---------------------------------------------------------------------------
# the heart V_{f,p}


@dataclass(frozen=True)
class HeartModule:
    n: int
    p: int
    basis_dimension: int

    def action(self, perm) -> list[list[int]]:
        return heart_action(self.n, self.p, perm)

    def to_dict(self) -> dict:
        return {"n": self.n, "p": self.p, "dimension": self.basis_dimension}


def fixed_submodule(shape: CurveShape) -> HeartModule:
    """Image of multiplication by p^(r-1) on the class group, as an F_p-space."""
    cg = class_group(shape)
    p, k = shape.p, shape.p ** (shape.pp.r - 1)
    dim = 0
    for s in cg.elementary_divisors:
        image_order = s // gcd(s, k)
        if image_order not in (1, p):
            raise ArithmeticError(f"image of Z/{s} under {k} is not killed by p")
        dim += image_order == p
    return HeartModule(shape.n, p, dim)


def heart_action(n: int, p: int, perm) -> list[list[int]]:
    """Matrix of a root permutation on sum-zero F_p-functions.

    Basis b_k = e_k - e_{n-1}, k < n-1; column k holds the image of b_k.
    """
    if n % p == 0:
        raise ValueError(f"p={p} divides n={n}")
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of range({n})")
    m = [[0] * (n - 1) for _ in range(n - 1)]
    last = n - 1
    for k in range(n - 1):
        # sigma(b_k) = e_{s(k)} - e_{s(last)} = b_{s(k)} - b_{s(last)}, b_{last} = 0
        for target, sign in ((perm[k], 1), (perm[last], -1)):
            if target != last:
                m[target][k] = (m[target][k] + sign) % p
    return m
