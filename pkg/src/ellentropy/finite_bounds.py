"""Certified covering-number bounds for finite-dimensional ellipsoids.

For a p-ellipsoid with semi-axes mu_1 >= ... >= mu_d > 0 and covering
balls of the q-norm, the volume comparison gives for every eps > 0

    log2 N(eps) >= d * log2(V_{p,q,d} * gmean(mu) / eps),

while a density (random-centers plus saturation) construction gives the
fully explicit upper bound

    log2(N(eps) - 1) <= d * log2(kappa(d) * (1 + eta) * B / eps),

valid on a restricted radius interval, where

    kappa(d) = (1 + 1/(d ln d)) * (d ln d + d ln ln d + 1)^(1/d)

and B is V_{p,q,d} * gmean(mu) for the generic case (FD1) or
d^(1/q-1/p) * gmean(mu) when p >= q (FD2).  The kappa expression comes
from splitting the radius as eps1 = eps * d ln d / (1 + d ln d) between
the random and the saturating centers; it needs d >= 3 so ln ln d > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from .constants import ExponentLike, HolderExponent, as_exponent, volume_ratio
from .errors import EntropyError, RadiusOutOfRange
from .numerics import kahan_sum

LN2 = math.log(2.0)

FD1 = "FD1"
FD2 = "FD2"
VOLUME_LOWER = "volume-lower"


@dataclass(frozen=True)
class FiniteEllipsoid:
    """A finite-dimensional p-ellipsoid: exponent plus sorted semi-axes."""

    p: HolderExponent
    axes: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", as_exponent(self.p))
        axes = tuple(float(a) for a in self.axes)
        object.__setattr__(self, "axes", axes)
        if not axes:
            raise EntropyError("ellipsoid needs at least one axis")
        if any(a <= 0 for a in axes):
            raise EntropyError("axes must be positive")
        if any(b > a for a, b in zip(axes, axes[1:])):
            raise EntropyError("axes must be non-increasing")

    @property
    def dim(self) -> int:
        return len(self.axes)

    def log2_geometric_mean(self) -> float:
        return kahan_sum(math.log2(a) for a in self.axes) / self.dim


@dataclass(frozen=True)
class FiniteBound:
    """A one-sided certified bound on log2 N(eps).

    Lower bounds hold for every radius; upper bounds are only asserted
    inside ``valid_radius_range`` = (0, upper].
    """

    log2_bound: float
    kind: str  # "lower" | "upper"
    valid_radius_range: Tuple[float, float]
    case_tag: str
    kappa_used: float


def explicit_kappa(d: int) -> float:
    """The concrete kappa(d) of the density construction; d >= 3."""
    if d < 3:
        raise EntropyError("kappa(d) requires d >= 3 (ln ln d must be positive)")
    ld = math.log(d)
    return (1.0 + 1.0 / (d * ld)) * math.exp(
        math.log(d * ld + d * math.log(ld) + 1.0) / d
    )


def volume_lower_bound(E: FiniteEllipsoid, q: ExponentLike, eps: float) -> FiniteBound:
    """log2 N(eps) >= d log2(V_{p,q,d} gmean / eps), clipped at 0."""
    if eps <= 0:
        raise EntropyError("eps must be positive")
    q = as_exponent(q)
    d = E.dim
    log2_v = math.log2(volume_ratio(E.p, q, d))
    bits = d * (log2_v + E.log2_geometric_mean() - math.log2(eps))
    return FiniteBound(
        log2_bound=max(0.0, bits),
        kind="lower",
        valid_radius_range=(0.0, math.inf),
        case_tag=VOLUME_LOWER,
        kappa_used=1.0,
    )


def admissible_radius(
    E: FiniteEllipsoid, q: ExponentLike, eta: float, case: str
) -> Tuple[float, float]:
    """The interval (0, r] of radii on which the density bound is asserted.

    FD1 (any p, q): r = eta * d^(-(1/p-1/q)_+) * mu_d.
    FD2 (p >= q):   r = eta * d^(1/q-1/p) * mu_d.
    """
    if eta <= 0:
        raise EntropyError("eta must be positive")
    q = as_exponent(q)
    rp, rq = E.p.reciprocal(), q.reciprocal()
    d, mu_d = E.dim, E.axes[-1]
    if case == FD1:
        return (0.0, eta * d ** (-max(rp - rq, 0.0)) * mu_d)
    if case == FD2:
        if rp > rq:
            raise EntropyError("FD2 requires p >= q")
        return (0.0, eta * d ** (rq - rp) * mu_d)
    raise EntropyError(f"unknown case {case!r}")


def _density_bits(E: FiniteEllipsoid, eps: float, eta: float, log2_B: float) -> float:
    d = E.dim
    kappa = explicit_kappa(d)
    # Bound on log2(N-1); reported on N itself.
    on_nm1 = d * (math.log2(kappa) + math.log2(1.0 + eta) + log2_B - math.log2(eps))
    if on_nm1 > 60.0:
        return on_nm1  # adding 1 is below float resolution
    return math.log2(2.0**on_nm1 + 1.0)


def density_upper_bound(
    E: FiniteEllipsoid, q: ExponentLike, eps: float, eta: float
) -> FiniteBound:
    """Explicit upper bound on log2 N(eps) from the density construction.

    Evaluates every case admissible at (eps, eta) and returns the smaller
    bound; raises RadiusOutOfRange (reporting the widest admissible
    interval) when eps lies outside all of them.
    """
    if eps <= 0:
        raise EntropyError("eps must be positive")
    q = as_exponent(q)
    d = E.dim
    if d < 3:
        raise EntropyError("density bound requires d >= 3")
    rp, rq = E.p.reciprocal(), q.reciprocal()
    lg_gmean = E.log2_geometric_mean()

    candidates = []
    r1 = admissible_radius(E, q, eta, FD1)
    if eps <= r1[1]:
        log2_B = math.log2(volume_ratio(E.p, q, d)) + lg_gmean
        candidates.append((_density_bits(E, eps, eta, log2_B), FD1, r1))
    if rp <= rq:
        r2 = admissible_radius(E, q, eta, FD2)
        if eps <= r2[1]:
            log2_B = (rq - rp) * math.log2(d) + lg_gmean
            candidates.append((_density_bits(E, eps, eta, log2_B), FD2, r2))

    if not candidates:
        widest = r1
        if rp <= rq:
            widest = max(widest, admissible_radius(E, q, eta, FD2), key=lambda r: r[1])
        raise RadiusOutOfRange(
            f"eps={eps} outside the admissible interval (0, {widest[1]}]",
            interval=widest,
        )
    bits, tag, rng = min(candidates, key=lambda c: c[0])
    return FiniteBound(
        log2_bound=bits,
        kind="upper",
        valid_radius_range=rng,
        case_tag=tag,
        kappa_used=explicit_kappa(d),
    )


def product_grid_upper_bound(
    axes: Sequence[float], q: ExponentLike, eps: float
) -> float:
    """Crude certified upper bound covering the bounding hyperrectangle.

    Each axis is quantized at per-axis radius eps * d^(-1/q), whose q-norm
    combination is eps.  Useful fallback at dimensions below the density
    bound's reach; for p = q = infinity it is the exact value.
    """
    if eps <= 0:
        raise EntropyError("eps must be positive")
    rq = as_exponent(q).reciprocal()
    d = len(axes)
    per_axis = eps * d ** (-rq)
    return kahan_sum(math.log2(math.ceil(a / per_axis)) for a in axes)
