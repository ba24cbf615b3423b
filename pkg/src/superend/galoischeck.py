"""Certify that Gal(f) is S_n or A_n from Frobenius cycle types.

By Dedekind's theorem the factorization pattern of f mod an unramified
prime is the cycle type of a Frobenius element.  Certificates are
one-sided: a level is only reported when sampled cycle types plus classical
permutation-group facts prove it.

* irreducible: some prime gives one factor of degree n, or the possible
  factor degrees allowed by the sampled patterns have empty intersection;
* S_n: transitive, a transposition, and a prime cycle of length > n/2
  (such a group is primitive, and primitive + transposition gives S_n).
  Both are accepted as powers: a type with one 2-cycle and otherwise odd
  cycles has an odd power that is a transposition, and a prime part
  l > n/2 is the only part divisible by l;
* A_n (n <= 7 only): disc is a square, transitive, and the observed cycle
  types fit in no proper transitive subgroup of A_n.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .exactalg import (
    ModPoly,
    UniPoly,
    discriminant,
    distinct_degree_factor_degrees,
    is_prime,
    poly_gcd,
    primes,
)

log = logging.getLogger(__name__)

__all__ = [
    "BadPrime",
    "CycleType",
    "CertLevel",
    "GaloisCertificate",
    "IrreducibilityEvidence",
    "reduce_and_cycle_type",
    "irreducibility_evidence",
    "discriminant_square_test",
    "certify",
    "rational_roots",
]

AN_TABLE_MAX_DEGREE = 7
RATIONAL_ROOT_SEARCH_LIMIT = 10**12


class BadPrime(ValueError):
    """The prime divides the leading coefficient or the discriminant."""


class CertLevel(str, enum.Enum):
    CERTIFIED_SN = "CertifiedSn"
    CERTIFIED_AN = "CertifiedAn"
    SUBSET_AN_ONLY = "SubsetAnOnly"
    IRREDUCIBLE_ONLY = "IrreducibleOnly"
    INCONCLUSIVE = "Inconclusive"
    REDUCIBLE = "Reducible"

    @property
    def certified(self) -> bool:
        return self in (CertLevel.CERTIFIED_SN, CertLevel.CERTIFIED_AN)


@dataclass(frozen=True, order=True)
class CycleType:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(k < 1 for k in self.parts):
            raise ValueError(f"invalid cycle type {self.parts}")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def is_transposition(self) -> bool:
        return self.parts.count(2) == 1 and all(k in (1, 2) for k in self.parts)

    def powers_to_transposition(self) -> bool:
        """One 2-cycle and otherwise odd cycles: an odd power is a transposition."""
        return self.parts.count(2) == 1 and all(k == 2 or k % 2 for k in self.parts)

    def is_identity(self) -> bool:
        return all(k == 1 for k in self.parts)

    def long_prime_cycle(self) -> int | None:
        """A prime part exceeding n/2, if any (it is necessarily unique)."""
        for k in self.parts:
            if 2 * k > self.n and is_prime(k):
                return k
        return None

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


# ---------------------------------------------------------------------------
# helpers on integer polynomials


def _require_integral(f: UniPoly):
    if not f.is_integral():
        raise ValueError("expected a polynomial with integer coefficients")


def _require_squarefree(f: UniPoly):
    if poly_gcd(f, f.derivative()).degree > 0:
        raise ValueError(f"{f} is not squarefree")


def _is_bad(p: int, f: UniPoly, disc: Fraction) -> bool:
    return int(f.lc) % p == 0 or disc.numerator % p == 0


def reduce_and_cycle_type(f: UniPoly, p: int, disc: Fraction | None = None) -> CycleType:
    _require_integral(f)
    if disc is None:
        disc = discriminant(f)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if _is_bad(p, f, disc):
        raise BadPrime(f"{p} divides the leading coefficient or the discriminant")
    degrees = distinct_degree_factor_degrees(ModPoly.from_unipoly(f, p))
    return CycleType(tuple(d for d, c in degrees.items() for _ in range(c)))


def _good_primes(f: UniPoly, disc: Fraction, budget: int):
    """Yield (p, cycle type) for the first ``budget`` good primes."""
    taken = 0
    for p in primes():
        if taken >= budget:
            return
        if _is_bad(p, f, disc):
            continue
        taken += 1
        yield p, reduce_and_cycle_type(f, p, disc)


def _partial_degrees(ct: CycleType) -> set[int]:
    """Degrees d, 0 < d < n, of products of some of the local factors."""
    sums = {0}
    for k in ct.parts:
        sums |= {s + k for s in sums}
    return {s for s in sums if 0 < s < ct.n}


def _divisors(m: int) -> list[int]:
    m = abs(m)
    small = [d for d in range(1, isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def rational_roots(f: UniPoly) -> list[Fraction]:
    """All rational roots of an integer polynomial (rational root theorem).

    Returns an empty list for polynomials whose extreme coefficients are too
    large to enumerate divisors of; callers treat that as "no evidence".
    """
    _require_integral(f)
    coeffs = f.integer_coeffs()
    roots = []
    low = 0
    while coeffs[low] == 0:
        low += 1
    if low:
        roots.append(Fraction(0))
    a0, an = coeffs[low], coeffs[-1]
    if max(abs(a0), abs(an)) > RATIONAL_ROOT_SEARCH_LIMIT:
        return roots
    cands = {Fraction(s * d, e) for d in _divisors(a0) for e in _divisors(an) for s in (1, -1)}
    roots.extend(c for c in sorted(cands) if f(c) == 0)
    return roots


# ---------------------------------------------------------------------------
# irreducibility


@dataclass(frozen=True)
class IrreducibilityEvidence:
    status: str  # "IrreducibleCertified" | "ReducibleWitness" | "Unknown"
    primes: tuple[int, ...] = ()
    factor_degrees: tuple[int, ...] = ()
    roots: tuple[Fraction, ...] = ()


def _irreducible_witness(n: int, observed: dict[CycleType, int]) -> tuple[int, ...] | None:
    """Primes whose patterns jointly rule out every proper factor degree."""
    for ct, p in observed.items():
        if ct.parts == (n,):
            return (p,)
    allowed = set(range(1, n))
    used = []
    for ct, p in sorted(observed.items(), key=lambda kv: kv[1]):
        before = len(allowed)
        allowed &= _partial_degrees(ct)
        if len(allowed) < before:
            used.append(p)
        if not allowed:
            return tuple(sorted(used))
    return None


def _irreducibility_from_types(f: UniPoly, observed: dict[CycleType, int]) -> IrreducibilityEvidence:
    witness = _irreducible_witness(f.degree, observed)
    if witness is not None:
        return IrreducibilityEvidence("IrreducibleCertified", primes=witness)
    if all(1 in ct.parts for ct in observed):
        roots = rational_roots(f)
        if roots:
            return IrreducibilityEvidence(
                "ReducibleWitness", factor_degrees=(1,) * len(roots), roots=tuple(roots)
            )
    return IrreducibilityEvidence("Unknown")


def irreducibility_evidence(f: UniPoly, prime_budget: int = 200) -> IrreducibilityEvidence:
    _require_integral(f)
    _require_squarefree(f)
    if f.degree == 1:
        return IrreducibilityEvidence("IrreducibleCertified")
    disc = discriminant(f)
    observed: dict[CycleType, int] = {}
    for p, ct in _good_primes(f, disc, prime_budget):
        observed.setdefault(ct, p)
        if ct.parts == (f.degree,):
            break
    return _irreducibility_from_types(f, observed)


# ---------------------------------------------------------------------------
# discriminant


def _is_square_int(m: int) -> bool:
    return m >= 0 and isqrt(m) ** 2 == m


def is_rational_square(x: Fraction) -> bool:
    x = Fraction(x)
    return _is_square_int(x.numerator) and _is_square_int(x.denominator)


def discriminant_square_test(f: UniPoly) -> bool:
    d = discriminant(f)
    if d == 0:
        raise ValueError("zero discriminant")
    return is_rational_square(d)


# ---------------------------------------------------------------------------
# proper transitive subgroups of A_n, n <= 7, as cycle-type fingerprints


def _cycle_type_of(perm: tuple[int, ...]) -> CycleType:
    seen = [False] * len(perm)
    parts = []
    for s in range(len(perm)):
        if not seen[s]:
            k, t = 0, s
            while not seen[t]:
                seen[t] = True
                t = perm[t]
                k += 1
            parts.append(k)
    return CycleType(tuple(parts))


def _is_even(perm) -> bool:
    return sum(k - 1 for k in _cycle_type_of(perm).parts) % 2 == 0


def _closure(gens: list[tuple[int, ...]]) -> set[tuple[int, ...]]:
    n = len(gens[0])
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[g[k]] for k in range(n))
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return group


def _stabilizer(n: int, structure: list[frozenset]) -> set[tuple[int, ...]]:
    """Even permutations mapping the given set system to itself."""
    target = set(structure)
    return {
        perm
        for perm in itertools.permutations(range(n))
        if _is_even(perm) and {frozenset(perm[k] for k in blk) for blk in structure} == target
    }


def _imprimitive_candidates(n: int) -> list[set]:
    out = []
    for a in range(2, n):
        if n % a == 0:
            blocks = [frozenset(range(k, k + a)) for k in range(0, n, a)]
            out.append(_stabilizer(n, blocks))
    return out


def _primitive_candidates(n: int) -> list[set]:
    if n == 5:
        edges = [frozenset({k, (k + 1) % 5}) for k in range(5)]
        return [_stabilizer(5, edges)]  # dihedral of order 10
    if n == 6:
        # PSL(2,5) on the projective line {0..4, inf=5}
        shift = tuple([1, 2, 3, 4, 0, 5])
        inv = []
        for x in range(6):
            if x == 5:
                inv.append(0)
            elif x == 0:
                inv.append(5)
            else:
                inv.append((-pow(x, -1, 5)) % 5)
        return [_closure([shift, tuple(inv)])]
    if n == 7:
        lines = [frozenset({k, (k + 1) % 7, (k + 3) % 7}) for k in range(7)]
        return [_stabilizer(7, lines)]  # PSL(3,2), contains C7 and F21
    return []


@lru_cache(maxsize=None)
def proper_transitive_fingerprints(n: int) -> tuple[frozenset, ...]:
    """Cycle-type sets of groups covering every proper transitive subgroup of A_n."""
    if n > AN_TABLE_MAX_DEGREE:
        raise ValueError(f"no A_n table beyond degree {AN_TABLE_MAX_DEGREE}")
    groups = _imprimitive_candidates(n) + _primitive_candidates(n)
    return tuple(frozenset(_cycle_type_of(g) for g in grp) for grp in groups)


def _an_fingerprint_ok(n: int, types: set[CycleType]) -> bool:
    if n < 3:
        return False
    return all(not types <= fp for fp in proper_transitive_fingerprints(n))


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class GaloisCertificate:
    polynomial: UniPoly
    n: int
    level: CertLevel
    discriminant: Fraction
    disc_is_square: bool
    witness_primes: dict[int, CycleType] = field(default_factory=dict)
    irreducibility_witness: tuple[int, ...] = ()
    primes_sampled: int = 0
    reducible_roots: tuple[Fraction, ...] = ()

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "level": self.level.value,
            "discriminant": str(self.discriminant),
            "disc_is_square": self.disc_is_square,
            "witness_primes": {str(p): str(ct) for p, ct in sorted(self.witness_primes.items())},
            "irreducibility_witness": list(self.irreducibility_witness),
            "primes_sampled": self.primes_sampled,
        }


def certify(f: UniPoly, prime_budget: int = 200) -> GaloisCertificate:
    _require_integral(f)
    n = f.degree
    if n < 2:
        raise ValueError("certification needs degree >= 2")
    _require_squarefree(f)
    disc = discriminant(f)
    square = is_rational_square(disc)

    observed: dict[CycleType, int] = {}
    sampled = 0
    transposition = long_cycle = None
    for p, ct in _good_primes(f, disc, prime_budget):
        sampled += 1
        observed.setdefault(ct, p)
        if ct.powers_to_transposition() and transposition is None:
            transposition = ct
        if ct.long_prime_cycle() and long_cycle is None:
            long_cycle = ct
        if _irreducible_witness(n, observed) is None:
            continue
        if not square and transposition and long_cycle:
            break
        if square and n <= AN_TABLE_MAX_DEGREE and _an_fingerprint_ok(n, set(observed)):
            break
    log.debug("sampled %d primes, %d distinct cycle types", sampled, len(observed))

    irr = _irreducibility_from_types(f, observed)
    types = set(observed)

    def make(level, witnesses):
        return GaloisCertificate(
            polynomial=f,
            n=n,
            level=level,
            discriminant=disc,
            disc_is_square=square,
            witness_primes={observed[ct]: ct for ct in witnesses},
            irreducibility_witness=irr.primes,
            primes_sampled=sampled,
            reducible_roots=irr.roots,
        )

    if irr.status == "ReducibleWitness":
        return make(CertLevel.REDUCIBLE, [])
    if irr.status != "IrreducibleCertified":
        return make(CertLevel.INCONCLUSIVE, sorted(types))
    if not square and transposition and long_cycle:
        return make(CertLevel.CERTIFIED_SN, [transposition, long_cycle])
    if square:
        if n <= AN_TABLE_MAX_DEGREE and _an_fingerprint_ok(n, types):
            return make(CertLevel.CERTIFIED_AN, sorted(types))
        return make(CertLevel.SUBSET_AN_ONLY, sorted(types))
    return make(CertLevel.IRREDUCIBLE_ONLY, sorted(types))
