"""Shared result and specification types."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from .constants import HolderExponent
from .sequences import SemiAxisModel

# Tags for EntropyResult.kind.
EXACT = "exact"
CERTIFIED_LOWER = "certified-lower"
CERTIFIED_UPPER = "certified-upper"
ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class EntropyResult:
    """An entropy value in bits, tagged with what it certifies.

    ``epsilon`` is the covering radius the value refers to (which may be
    an inflated radius for some certified bounds).
    """

    bits: float
    kind: str
    epsilon: float


@dataclass(frozen=True)
class BoundCertificate:
    """The data backing a certified bound, for auditability."""

    effective_dimension: int
    block_sizes: Tuple[int, ...]
    inner_radii: Tuple[float, ...]
    tail_radius: float
    omega_count: int
    tail_case: str = "I"
    eta: Optional[float] = None
    kappa: Optional[float] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        out = {
            "effective_dimension": self.effective_dimension,
            "block_sizes": list(self.block_sizes),
            "inner_radii": list(self.inner_radii),
            "tail_radius": self.tail_radius,
            "omega_count": self.omega_count,
            "tail_case": self.tail_case,
        }
        if self.eta is not None:
            out["eta"] = self.eta
        if self.kappa is not None:
            out["kappa"] = self.kappa
        if self.notes:
            out["notes"] = list(self.notes)
        return out


@dataclass(frozen=True)
class EllipsoidSpec:
    """A p-ellipsoid together with the ambient norm exponent q."""

    p: HolderExponent
    model: SemiAxisModel
    q: HolderExponent

    def to_json(self) -> dict:
        return {"p": str(self.p), "model": self.model.to_json(), "q": str(self.q)}

    @classmethod
    def from_json(cls, data: dict) -> "EllipsoidSpec":
        from .constants import as_exponent
        from .sequences import model_from_json

        return cls(
            p=as_exponent(data["p"]),
            model=model_from_json(data["model"]),
            q=as_exponent(data["q"]),
        )
