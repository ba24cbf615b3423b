"""Rigidity of the multiplicity tuple under Galois multipliers.

An automorphism of Q(zeta_q) sends zeta_q to zeta_q^m for a unit m mod q.
It preserves the tuple (m_i) when m_i == m_{i*m mod q} for every i prime
to p.  The check here is an exhaustive search over all units, used as an
independent verifier rather than a reproduction of any interval argument.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .curvegeom import CurveShape, ShapeError, multiplicity_table

__all__ = [
    "RigidityVerdict",
    "set_A",
    "multiplier_preserves_tuple",
    "first_failing_index",
    "rigidity_check",
]


@dataclass(frozen=True)
class RigidityVerdict:
    shape: CurveShape
    rigid: bool
    set_A: tuple[int, ...]
    counterexample: int | None = None
    failing_index: int | None = None
    # multiplier -> first index where the tuple changes
    refutations: dict[int, int] = field(default_factory=dict, compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "rigid": self.rigid,
            "set_A": list(self.set_A),
            "counterexample": self.counterexample,
            "failing_index": self.failing_index,
            "multipliers_checked": len(self.refutations) + (0 if self.rigid else 1),
        }


def set_A(shape: CurveShape) -> tuple[int, ...]:
    """Indices i prime to p with 1 <= i <= floor((q-1)/n)."""
    shape.require_coprime("set A")
    p, bound = shape.p, (shape.q - 1) // shape.n
    return tuple(i for i in range(1, bound + 1) if i % p)


def _check_multiplier(shape: CurveShape, m: int):
    if not 1 <= m < shape.q or gcd(m, shape.p) != 1:
        raise ValueError(f"m={m} is not a unit in 1..{shape.q - 1} mod {shape.q}")


def first_failing_index(shape: CurveShape, m: int) -> int | None:
    """Smallest i prime to p with m_i != m_{i*m mod q}, or None."""
    shape.require_coprime("multiplier action")
    _check_multiplier(shape, m)
    entries = multiplicity_table(shape).entries
    q, p = shape.q, shape.p
    for i in range(1, q):
        if i % p and entries[i - 1] != entries[i * m % q - 1]:
            return i
    return None


def multiplier_preserves_tuple(shape: CurveShape, m: int) -> bool:
    return first_failing_index(shape, m) is None


def rigidity_check(shape: CurveShape) -> RigidityVerdict:
    if shape.n < 4:
        raise ShapeError(f"rigidity needs n >= 4 (got n={shape.n})")
    shape.require_coprime("rigidity check")
    q, p = shape.q, shape.p
    entries = multiplicity_table(shape).entries
    refutations: dict[int, int] = {}
    for m in range(2, q):
        if m % p == 0:
            continue
        for i in range(1, q):
            if i % p and entries[i - 1] != entries[i * m % q - 1]:
                refutations[m] = i
                break
        else:
            return RigidityVerdict(shape, False, set_A(shape), counterexample=m,
                                   refutations=refutations)
    return RigidityVerdict(shape, True, set_A(shape), refutations=refutations)
