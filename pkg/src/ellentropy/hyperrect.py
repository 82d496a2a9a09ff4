"""Exact sup-norm entropy of hyperrectangles and optimal coverings.

An infinity-ellipsoid is the hyperrectangle prod [-mu_n, mu_n].  Its
sup-norm covering number factors over the axes:

    N(eps) = prod_n ceil(mu_n / eps),

so the entropy is an exact integer log.  The same number has a second,
counting-function form

    H(eps) = sum_k log2(1 + 1/k) * M_k(eps),   M_k(t) = #{n : mu_n > k t},

and the two must agree at the integer level, not merely within tolerance.
To make that identity hold bit-for-bit, both routes below are driven by
the exact rational ratios mu_n / eps (floats are exact rationals).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from . import constants
from .errors import EnumerationTooLarge, InvalidModel, ScanCapExceeded
from .numerics import kahan_sum, log2_bigint
from .sequences import SemiAxisModel, Tabulated, axis

LN2 = math.log(2.0)

_AXIS_CAP = 10**8
ENUMERATION_CAP = 10**7


@dataclass(frozen=True)
class HyperrectEntropy:
    """Exact entropy of a hyperrectangle in sup-norm.

    ``per_axis_counts`` lists ceil(mu_n/eps) for every axis needing more
    than one point; axes already inside one ball are omitted.
    """

    bits: float
    per_axis_counts: Tuple[int, ...]
    effective_dim: int

    def exact_product(self) -> int:
        """The covering number as an exact integer."""
        return math.prod(self.per_axis_counts)


def _ceil_fraction(r: Fraction) -> int:
    # Exact ceiling; an integer ratio keeps its value.
    return -((-r.numerator) // r.denominator)


def _axis_ratios(model: SemiAxisModel, eps: float) -> List[Fraction]:
    """Exact ratios mu_n/eps for every axis with mu_n > eps.

    The supported families are unimodal at worst (a negative second term
    can lift the head of a two-term sequence), so the scan only stops once
    the axes sit at or below eps while non-increasing.
    """
    if eps <= 0:
        raise InvalidModel("eps must be positive")
    feps = Fraction(eps)
    ratios: List[Fraction] = []
    table = isinstance(model, Tabulated) and model.tail is None
    prev = None
    for n in range(1, _AXIS_CAP + 1):
        if table and n > len(model.values):
            break
        mu = axis(model, n)
        if mu > eps:
            ratios.append(Fraction(mu) / feps)
        elif prev is not None and mu <= prev:
            break
        prev = mu
    else:
        raise ScanCapExceeded("axis scan exceeded cap; model does not decay?")
    return ratios


def exact_entropy(model: SemiAxisModel, eps: float) -> HyperrectEntropy:
    """Exact sup-norm entropy; the axis product is accumulated as a big
    integer before taking the log, so the bits value is exact up to one
    float rounding."""
    counts = tuple(_ceil_fraction(r) for r in _axis_ratios(model, eps))
    product = math.prod(counts)
    bits = 0.0 if product == 1 else log2_bigint(product)
    return HyperrectEntropy(bits=bits, per_axis_counts=counts, effective_dim=len(counts))


def _threshold_counts(model: SemiAxisModel, eps: float) -> List[int]:
    """[M_1, ..., M_K] with K = max per-axis count - 1, from exact ratios."""
    counts = [_ceil_fraction(r) for r in _axis_ratios(model, eps)]
    if not counts:
        return []
    K = max(counts) - 1
    hist = [0] * (K + 2)
    for m in counts:
        hist[1] += 1
        hist[m] -= 1  # axis contributes to M_k for k = 1..m-1
    M = []
    running = 0
    for k in range(1, K + 1):
        running += hist[k]
        M.append(running)
    return M


def exact_entropy_counting(model: SemiAxisModel, eps: float) -> float:
    """The counting-function form sum_k log2(1+1/k) M_k(eps), in bits."""
    return kahan_sum(
        math.log1p(1.0 / k) / LN2 * m
        for k, m in enumerate(_threshold_counts(model, eps), start=1)
    )


def counting_product(model: SemiAxisModel, eps: float) -> Fraction:
    """prod_k ((k+1)/k)**M_k as an exact rational.

    Telescoping makes this equal to the integer product of exact_entropy;
    the equality is asserted by tests at the integer level.
    """
    out = Fraction(1)
    for k, m in enumerate(_threshold_counts(model, eps), start=1):
        out *= Fraction(k + 1, k) ** m
    return out


def optimal_covering(
    axes: Sequence[float], eps: float, cap: int = ENUMERATION_CAP
) -> List[Tuple[float, ...]]:
    """The optimal product-grid covering of prod [-mu_i, mu_i] in sup-norm.

    Axis i carries m_i = ceil(mu_i/eps) points at -mu_i + (2j-1) mu_i/m_i;
    the half-spacing mu_i/m_i never exceeds eps, so every point of the
    hyperrectangle is within eps of a center (closed balls).  The center
    count equals the exact covering number.
    """
    if eps <= 0:
        raise InvalidModel("eps must be positive")
    if any(a <= 0 for a in axes):
        raise InvalidModel("axes must be positive")
    feps = Fraction(eps)
    counts = [_ceil_fraction(Fraction(a) / feps) if a > eps else 1 for a in axes]
    total = math.prod(counts)
    if total > cap:
        # the exact count rides on the exception; render huge ones in log2
        shown = str(total) if total.bit_length() <= 64 else f"2^{log2_bigint(total):.2f}"
        raise EnumerationTooLarge(
            f"covering has {shown} centers, above the cap {cap}", count=total
        )
    grids = []
    for a, m in zip(axes, counts):
        grids.append([-a + (2 * j - 1) * a / m for j in range(1, m + 1)])
    return list(itertools.product(*grids))


def canonical_asymptotic(b: float, c: float, eps: float) -> float:
    """Leading term c^(1/b) eps^(-1/b) S(b) of the canonical exact entropy.

    The remainder is O(log(1/eps)) as eps -> 0.
    """
    if eps <= 0:
        raise InvalidModel("eps must be positive")
    return c ** (1.0 / b) * eps ** (-1.0 / b) * constants.zeta_series_constant(b)
