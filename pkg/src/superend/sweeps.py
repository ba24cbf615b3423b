"""Exhaustive verification sweeps over (n, q) shapes.

Each per-shape checker returns a list of failure strings; a sweep collects
them in deterministic (n, q) order regardless of how many worker processes
ran.
"""

from __future__ import annotations

import hashlib
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cmcombinatorics import rigidity_check, set_A
from .curvegeom import (
    CurveShape,
    count_interior_lattice_points,
    expected_primitive_mass,
    genus,
    lattice_row_counts,
    multiplicity_table,
    primitive_mass,
    spectrum_minimal_polynomial,
)
from .divisorclasses import BranchDivisor, class_group, fixed_submodule, is_principal
from .endopredict import check_descriptor, predict
from .exactalg import pq_polynomial, prime_powers

log = logging.getLogger(__name__)

__all__ = ["SWEEP_KINDS", "MIN_N", "SweepResult", "sweep_shapes", "run_sweep"]

MIN_N = {"rigidity": 4, "spectrum": 2, "classgroup": 2}
SWEEP_KINDS = tuple(MIN_N)
RANDOM_DIVISORS_PER_SHAPE = 10_000


def sweep_shapes(n_min: int, n_max: int, q_max: int) -> list[tuple[int, int]]:
    """Coprime shapes ordered by (n, q)."""
    pps = prime_powers(q_max)
    return [(n, pp.q) for n in range(n_min, n_max + 1) for pp in pps if n % pp.p]


def check_spectrum(n: int, q: int) -> tuple[list[str], str]:
    shape = CurveShape.of(n, q)
    fails = []
    g = genus(shape)
    if count_interior_lattice_points(shape) != g:
        fails.append("lattice count != genus")
    table = multiplicity_table(shape)
    if table.total() != g:
        fails.append("sum of multiplicities != genus")
    rows = lattice_row_counts(shape)
    for i, m in table.items():
        # eigenvalue zeta^(-i) lives on the row i' = q - i
        if rows[q - i - 1] != m:
            fails.append(f"row count mismatch at i={i}")
            break
        if (m > 0) != (i * n >= q):
            fails.append(f"positivity threshold wrong at i={i}")
            break
        if q > 2 and i % shape.p and m + table[q - i] != n - 1:
            fails.append(f"m_i + m_(q-i) != n-1 at i={i}")
            break
    if primitive_mass(shape) != expected_primitive_mass(shape):
        fails.append("primitive mass != (n-1) phi(q)/2")
    if spectrum_minimal_polynomial(shape) != pq_polynomial(shape.pp):
        fails.append("spectrum minimal polynomial != P_q")
    serialized = ""
    if n >= 5:
        desc = predict(shape)
        fails.extend(check_descriptor(desc))
        serialized = desc.serialize()
    return fails, serialized


def check_rigidity(n: int, q: int) -> tuple[list[str], str]:
    shape = CurveShape.of(n, q)
    verdict = rigidity_check(shape)
    fails = []
    if not verdict.rigid:
        fails.append(f"multiplier m={verdict.counterexample} preserves the tuple")
    zeros = tuple(i for i, m in multiplicity_table(shape).items() if i % shape.p and m == 0)
    if set_A(shape) != zeros:
        fails.append("set A != zero-multiplicity indices")
    return fails, ""


def check_classgroup(n: int, q: int, samples: int = RANDOM_DIVISORS_PER_SHAPE) -> tuple[list[str], str]:
    shape = CurveShape.of(n, q)
    fails = []
    cg = class_group(shape)
    if cg.elementary_divisors != (q,) * (n - 1):
        fails.append(f"elementary divisors {cg.elementary_divisors}")
    if cg.order != q ** (n - 1):
        fails.append("order != q^(n-1)")
    if fixed_submodule(shape).basis_dimension != n - 1:
        fails.append("fixed submodule dimension != n-1")

    rng = np.random.default_rng([n, q])
    half = samples // 2
    free = rng.integers(-3 * q, 3 * q + 1, size=(half, n), dtype=np.int64)
    multiples = q * rng.integers(-3, 4, size=(samples - half, n), dtype=np.int64)
    coeffs = np.vstack([free, multiples])
    coeffs[:, -1] -= coeffs.sum(axis=1)
    bound = cg.transform_bound * (n - 1) * int(np.abs(coeffs).max(initial=1))
    if bound >= 2**62:
        raise OverflowError("transform entries too large for int64 coset arithmetic")
    criterion = np.all(coeffs % q == 0, axis=1)
    coset_zero = np.all(cg.classes_of(coeffs) == 0, axis=1)
    if not np.array_equal(criterion, coset_zero):
        fails.append(f"principality disagrees with coset membership on {int((criterion != coset_zero).sum())} divisors")
    for row, expect in zip(coeffs[:200].tolist(), criterion[:200].tolist()):
        d = BranchDivisor(tuple(row))
        if is_principal(d, shape) != expect or cg.is_identity(d) != expect:
            fails.append("scalar principality check disagrees")
            break
    return fails, ""


_CHECKERS = {
    "spectrum": check_spectrum,
    "rigidity": check_rigidity,
    "classgroup": check_classgroup,
}


def _run_one(args):
    kind, n, q = args
    return _CHECKERS[kind](n, q)


@dataclass
class SweepResult:
    kind: str
    n_max: int
    q_max: int
    shapes: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    descriptor_digest: str | None = None

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "n_max": self.n_max,
            "q_max": self.q_max,
            "shapes": self.shapes,
            "counterexamples": self.counterexamples,
        }
        if self.descriptor_digest is not None:
            out["descriptor_digest"] = self.descriptor_digest
        return out

    def summary(self) -> str:
        return f"{len(self.counterexamples)} counterexamples / {self.shapes} shapes"


def run_sweep(kind: str, n_max: int, q_max: int, jobs: int = 1) -> SweepResult:
    if kind not in _CHECKERS:
        raise ValueError(f"unknown sweep kind {kind!r}")
    n_min = MIN_N[kind]
    if n_max < n_min or q_max < 2:
        raise ValueError(f"sweep {kind} needs n_max >= {n_min} and q_max >= 2")
    shapes = sweep_shapes(n_min, n_max, q_max)
    tasks = [(kind, n, q) for n, q in shapes]
    log.info("sweep %s: %d shapes, %d job(s)", kind, len(tasks), jobs)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    else:
        results = [_run_one(t) for t in tasks]

    out = SweepResult(kind, n_max, q_max, shapes=len(tasks))
    digest = hashlib.sha256()
    for (n, q), (fails, serialized) in zip(shapes, results):
        for msg in fails:
            out.counterexamples.append({"n": n, "q": q, "failure": msg})
        if serialized:
            digest.update(serialized.encode() + b"\n")
    if kind == "spectrum":
        out.descriptor_digest = digest.hexdigest()
    return out
