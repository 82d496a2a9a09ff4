"""Entropy of Besov-type smoothness balls through their ellipsoid model.

A smoothness-s ball on a bounded domain of dimension d, measured in L2,
has wavelet coefficients forming a p1-ellipsoid whose semi-axes follow
the power law

    mu_n = (vol / n)^(s/d - (1/p1 - 1/2)),

so the induced canonical model has decay index and scale

    b = s/d + 1/2 - 1/p1,    c = vol^b,

and the entropy band in the 2-norm carries the exponent
b* = b + 1/p1 - 1/2 = s/d, making both edges proportional to

    vol^(1 - (d/s)(1/p1 - 1/2)) * eps^(-d/s).

The band is exact only up to the wavelet-frame constants of the
coefficient embedding, which are domain-independent but not quantified;
results carry an explicit warning to that effect.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .asymptotics import EntropyBand, canonical_band
from .constants import HolderExponent, as_exponent
from .errors import EntropyError, NonCompactRegime
from .sequences import Canonical

FRAME_CONSTANTS_WARNING = "band valid up to wavelet-frame constants"
SMALL_P_WARNING = (
    "p1 < 2: only the lower edge carries a confirmed constant (one-sided regime)"
)


@dataclass(frozen=True)
class BesovSpec:
    """Smoothness s, domain dimension d, integrability p1, domain volume."""

    s: float
    d: int
    p1: HolderExponent
    vol_omega: float

    def __post_init__(self):
        object.__setattr__(self, "p1", as_exponent(self.p1))
        if not self.s > 0:
            raise EntropyError("smoothness s must be positive")
        if self.d < 1:
            raise EntropyError("domain dimension must be >= 1")
        if not self.vol_omega > 0:
            raise EntropyError("domain volume must be positive")

    @property
    def small_p_warning(self) -> bool:
        return not self.p1.is_inf and self.p1.value < 2.0


def coefficient_decay_exponent(spec: BesovSpec) -> float:
    """s/d - (1/p1 - 1/2), the decay of the coefficient semi-axes."""
    return spec.s / spec.d - (spec.p1.reciprocal() - 0.5)


def decay_exponent_exact(
    s: Union[int, Fraction], d: int, p1: Union[int, Fraction, None]
) -> Fraction:
    """The decay exponent as an exact rational; p1=None means infinity.

    Useful for symbolic identities: the induced entropy exponent
    b* = b + 1/p1 - 1/2 collapses to s/d exactly.
    """
    rp = Fraction(0) if p1 is None else Fraction(1, 1) / Fraction(p1)
    return Fraction(s) / d - rp + Fraction(1, 2)


def semi_axes_from_besov(spec: BesovSpec) -> Canonical:
    """The induced canonical semi-axis model (vol/n)^(s/d - (1/p1 - 1/2))."""
    e = coefficient_decay_exponent(spec)
    if e <= 0:
        raise NonCompactRegime(
            "non-compact parameter combination: s/d must exceed 1/p1 - 1/2"
        )
    return Canonical(b=e, c=spec.vol_omega**e)


@dataclass(frozen=True)
class BesovBand:
    """Entropy band plus the induced model and applicable warnings."""

    band: EntropyBand
    model: Canonical
    b_star: float
    warnings: Tuple[str, ...]


def besov_entropy_band(spec: BesovSpec, eps: float) -> BesovBand:
    """Two-sided (or one-sided for p1 < 2) entropy band at radius eps.

    Applies the canonical band machinery to the induced ellipsoid with
    ambient exponent q = 2; the entropy exponent is b* = s/d.
    """
    model = semi_axes_from_besov(spec)
    band = canonical_band(spec.p1, 2.0, model.b, model.c, eps)
    warnings = [FRAME_CONSTANTS_WARNING]
    if spec.small_p_warning:
        warnings.append(SMALL_P_WARNING)
    return BesovBand(
        band=band,
        model=model,
        b_star=model.b + spec.p1.reciprocal() - 0.5,
        warnings=tuple(warnings),
    )
