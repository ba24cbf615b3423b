"""Predicted endomorphism algebra of the jacobian of y^q = f(x).

For f irreducible of degree n >= 5 with Galois group S_n or A_n, and
either p not dividing n or q dividing n, the endomorphism algebra over the
algebraic closure is Q[t]/P_q(t) = prod_{i=1..r} Q(zeta_{p^i}), and the
jacobian splits up to isogeny into pieces of dimension (n-1) phi(p^i) / 2.
Fields are symbolic records (conductor and degree); nothing is numeric.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .curvegeom import CurveShape, ShapeError, genus, primitive_mass
from .exactalg import euler_phi, pq_polynomial
from .galoischeck import CertLevel, GaloisCertificate
from .numberfield import ReductionResult

__all__ = [
    "CyclotomicFactor",
    "EndoDescriptor",
    "predict",
    "centralizer_dim_bound",
    "decomposition_report",
]

CAVEAT_5_5 = (
    "(n, q) = (5, 5): exceptional shape for the maximality argument; "
    "prediction emitted, exclusion left unresolved"
)


@dataclass(frozen=True)
class CyclotomicFactor:
    i: int
    conductor: int
    degree: int
    component_dimension: int

    @property
    def is_cm(self) -> bool:
        return self.conductor > 2

    @property
    def totally_real_degree(self) -> int:
        return self.degree // 2 if self.is_cm else self.degree

    @property
    def name(self) -> str:
        return "Q" if self.conductor <= 2 else f"Q(zeta_{self.conductor})"

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "field": self.name,
            "conductor": self.conductor,
            "degree": self.degree,
            "cm": self.is_cm,
            "totally_real_subfield_degree": self.totally_real_degree,
            "component_dimension": self.component_dimension,
        }


@dataclass(frozen=True)
class EndoDescriptor:
    shape: CurveShape
    effective_shape: CurveShape
    hypothesis_level: str
    factors: tuple[CyclotomicFactor, ...]
    total_algebra_dimension: int
    jacobian_dimension: int
    conditional: bool
    caveats: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "n": self.shape.n,
            "q": self.shape.q,
            "case": self.shape.case.value,
            "effective_n": self.effective_shape.n,
            "hypothesis_level": self.hypothesis_level,
            "conditional": self.conditional,
            "algebra": " x ".join(f.name for f in self.factors),
            "factors": [f.to_dict() for f in self.factors],
            "total_algebra_dimension": self.total_algebra_dimension,
            "jacobian_dimension": self.jacobian_dimension,
            "caveats": list(self.caveats),
        }

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def decomposition_report(shape: CurveShape) -> list[tuple[int, int]]:
    """(i, dim J^(f, p^i)) for i = 1..r; dimensions sum to the genus."""
    shape.require_coprime("the isogeny decomposition")
    p = shape.p
    return [(i, (shape.n - 1) * euler_phi(p**i) // 2) for i in range(1, shape.pp.r + 1)]


def predict(
    shape: CurveShape,
    cert: GaloisCertificate | None = None,
    reduction: ReductionResult | None = None,
) -> EndoDescriptor:
    """Predicted algebra; ``cert=None`` means the Galois hypothesis is unverified."""
    if shape.n < 5:
        raise ShapeError(f"prediction needs n >= 5 (got n={shape.n})")
    caveats = []
    if shape.coprime:
        effective = shape
    else:
        if reduction is not None and (
            reduction.new_degree != shape.n - 1 or reduction.pp != shape.pp
        ):
            raise ValueError("reduction result does not match the shape")
        effective = shape.reduced()
        caveats.append("reduced via x1 = 1/(x - alpha); computed for deg h1 = n - 1")
        if (shape.n, shape.q) == (5, 5):
            caveats.append(CAVEAT_5_5)

    level = cert.level.value if cert is not None else "Unverified"
    conditional = cert is None or not CertLevel(cert.level).certified
    if conditional:
        caveats.append("Galois hypothesis not certified; prediction is conditional")

    factors = tuple(
        CyclotomicFactor(i, shape.p**i, euler_phi(shape.p**i), dim)
        for i, dim in decomposition_report(effective)
    )
    return EndoDescriptor(
        shape=shape,
        effective_shape=effective,
        hypothesis_level=level,
        factors=factors,
        total_algebra_dimension=pq_polynomial(shape.pp).degree,
        jacobian_dimension=genus(shape),
        conditional=conditional,
        caveats=tuple(caveats),
    )


def check_descriptor(desc: EndoDescriptor) -> list[str]:
    """Violated descriptor invariants (empty when consistent)."""
    problems = []
    if sum(f.degree for f in desc.factors) != desc.total_algebra_dimension:
        problems.append("factor degrees do not sum to q - 1")
    if sum(f.component_dimension for f in desc.factors) != desc.jacobian_dimension:
        problems.append("component dimensions do not sum to the genus")
    if desc.factors[-1].component_dimension != primitive_mass(desc.effective_shape):
        problems.append("top component dimension differs from the primitive mass")
    return problems


def centralizer_dim_bound(dim_x: int, deg_e: int) -> int:
    """Upper bound 4 dim(X)^2 / [E:Q]^2 on dim_E of the centralizer."""
    if deg_e <= 0 or dim_x <= 0 or (2 * dim_x) % deg_e:
        raise ValueError(f"[E:Q]={deg_e} does not divide 2*dim(X)={2 * dim_x}")
    r = 2 * dim_x // deg_e
    return r * r
