"""Single-curve report: every invariant the library computes for y^q = f(x)."""

from __future__ import annotations

import time

from .cmcombinatorics import rigidity_check
from .curvegeom import (
    CurveShape,
    ShapeError,
    count_interior_lattice_points,
    genus,
    multiplicity_table,
    primitive_mass,
    spectrum_minimal_polynomial,
)
from .divisorclasses import class_group, fixed_submodule
from .endopredict import predict
from .exactalg import PrimePower, UniPoly, discriminant, poly_gcd, pq_polynomial
from .galoischeck import CertLevel, certify
from .numberfield import NonInvertible, degree_reduction

SCHEMA_ID = "report.schema.v1"

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_HYPOTHESIS = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_USAGE = 64


def spectrum_section(shape: CurveShape) -> dict:
    table = multiplicity_table(shape)
    return {
        "n": shape.n,
        "lattice_point_count": count_interior_lattice_points(shape),
        "multiplicities": list(table.entries),
        "primitive_mass": primitive_mass(shape),
        "minimal_polynomial_is_Pq": spectrum_minimal_polynomial(shape) == pq_polynomial(shape.pp),
    }


def build_report(coeffs_high: list[int], q: int, prime_budget: int = 200,
                 timing: bool = False) -> tuple[dict, int]:
    """Return (document, exit code) for y^q = f(x), f given highest degree first."""
    started = time.perf_counter()
    pp = PrimePower.from_q(q)
    f = UniPoly.from_high(coeffs_high)
    n = f.degree
    if n < 1:
        raise ValueError("polynomial must be nonconstant")
    doc: dict = {
        "schema": SCHEMA_ID,
        "input": {"poly": [int(c) for c in f.high()], "q": pp.q, "p": pp.p, "r": pp.r},
        "n": n,
        "case": None,
        "separable": None,
        "discriminant": None,
        "genus": None,
        "spectrum": None,
        "rigidity": None,
        "galois": None,
        "class_group": None,
        "fixed_submodule": None,
        "reduction": None,
        "endo": None,
        "notes": [],
        "status": "ok",
    }
    notes = doc["notes"]
    code = EXIT_OK

    def fail(msg):
        nonlocal code
        notes.append(msg)
        doc["status"] = "hypothesis_failure"
        code = EXIT_HYPOTHESIS

    if n < 2:
        fail("degree must be >= 2")
        return _finish(doc, started, timing), code
    separable = poly_gcd(f, f.derivative()).degree == 0
    doc["separable"] = separable
    doc["discriminant"] = str(discriminant(f))
    if not separable:
        fail("f is not separable (repeated root)")
        return _finish(doc, started, timing), code
    try:
        shape = CurveShape(n, pp)
    except ShapeError as exc:
        fail(str(exc))
        return _finish(doc, started, timing), code
    doc["case"] = shape.case.value
    doc["genus"] = genus(shape)

    reduction = None
    work = shape
    if not shape.coprime:
        work = shape.reduced()
        try:
            reduction = degree_reduction(f.monic(), pp)
            doc["reduction"] = reduction.to_dict()
        except NonInvertible as exc:
            fail(f"f is reducible: factor {exc.factor} found while reducing")
        notes.append(f"spectrum and class group computed for the reduced degree {work.n}")

    doc["spectrum"] = spectrum_section(work)
    if work.n >= 4:
        doc["rigidity"] = rigidity_check(work).to_dict()
    else:
        notes.append(f"rigidity check skipped: needs n >= 4 (have {work.n})")
    doc["class_group"] = class_group(work).to_dict()
    doc["fixed_submodule"] = fixed_submodule(work).to_dict()

    cert = certify(f, prime_budget)
    doc["galois"] = cert.to_dict()
    if cert.level is CertLevel.REDUCIBLE:
        fail("f is reducible over Q")

    if n < 5:
        fail(f"prediction refused: needs n >= 5 (have {n})")
    elif code == EXIT_OK:
        doc["endo"] = predict(shape, cert, reduction).to_dict()
    return _finish(doc, started, timing), code


def _finish(doc: dict, started: float, timing: bool) -> dict:
    if timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    return doc
