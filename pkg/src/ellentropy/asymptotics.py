"""Regime classification and asymptotic entropy evaluators.

For a p-ellipsoid with semi-axes decaying at index b, compactness in the
q-norm is decided by the position of q relative to the critical value
p/(pb+1) (read as 1/b when p is infinite):

  q < p/(pb+1)                         not compact;
  q = p/(pb+1), liminf n mu_n^(1/b)>0  not compact;
  q = p/(pb+1), sum mu_n^(1/b) < inf   critical, entropy finite;
  p/(pb+1) < q <= p                    compact, two-sided constants;
  p < q                                compact, lower constant only.

In the compact ranges the entropy scales as eps^(-1/b*) with
b* = b + 1/p - 1/q, and the canonical-decay constants are

  lower edge  (b/ln2) (Gamma_{p,q} c / eps)^(1/b*),
  upper edge  (b/ln2 + 1) (gamma_{p,q,b} c / eps)^(1/b*),

with gamma_{p,q,b} = (b/b*)^(1/q-1/p).  The Hilbert case p = q = 2 has
the exact leading constant b c^(1/b)/ln2 and a second-order expansion for
two-term polynomial decay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple, Union

from .constants import ExponentLike, as_exponent, gamma_pq
from .errors import EntropyError, NonCompactRegime, ScanCapExceeded, UnsupportedCorner
from .numerics import kahan_sum
from .sequences import SemiAxisModel, axis, table_length

LN2 = math.log(2.0)

NONCOMPACT_A = "NonCompact_a"
NONCOMPACT_B = "NonCompact_b"
CRITICAL_II = "Critical_ii"
COMPACT_III = "Compact_iii"
COMPACT_IV = "Compact_iv"

_SCAN_CAP = 10**8


@dataclass(frozen=True)
class Regime:
    """Classification outcome plus the constants attached to the case."""

    case: str
    b_star: float
    lower_const: Optional[float] = None
    upper_const: Optional[float] = None
    exact_const: Optional[float] = None

    @property
    def compact(self) -> bool:
        return self.case in (CRITICAL_II, COMPACT_III, COMPACT_IV)


RationalLike = Union[int, float, Fraction, str]


def _as_fraction(x: RationalLike) -> Optional[Fraction]:
    """Exact rational value, or None for infinity."""
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity"):
            return None
        return Fraction(x)
    if isinstance(x, float) and math.isinf(x):
        return None
    return Fraction(x)


def gamma_pqb(p: ExponentLike, q: ExponentLike, b: float) -> float:
    """(b / (b + 1/p - 1/q))^(1/q - 1/p)."""
    rp, rq = as_exponent(p).reciprocal(), as_exponent(q).reciprocal()
    return (b / (b + rp - rq)) ** (rq - rp)


def classify(
    p: RationalLike,
    q: RationalLike,
    b: RationalLike,
    tail_summable_inv_b: bool = False,
    liminf_n_mu_pos: bool = True,
) -> Regime:
    """Place (p, q, b) in its compactness case, with exact boundary tests.

    The two flags describe the behavior of the sequence at the critical
    line: whether sum mu_n^(1/b) converges and whether n mu_n^(1/b) stays
    bounded away from zero.  Canonical laws always have the latter
    (n (c/n^b)^(1/b) = c^(1/b)), so they land in the non-compact case.

    Inputs given as ints, Fractions, or fraction strings are compared in
    exact arithmetic, so regime boundaries are decided without rounding.
    """
    fp, fq, fb = _as_fraction(p), _as_fraction(q), _as_fraction(b)
    if fb is None or fb <= 0:
        raise EntropyError("b must be a positive real")
    if fq is None:
        below = critical = False  # q = inf exceeds the finite critical value
    elif fp is None:
        # convention: p/(pb+1) -> 1/b at p = infinity
        below, critical = fq < 1 / fb, fq == 1 / fb
    else:
        # q ? p/(pb+1)  <=>  q (p b + 1) ? p
        lhs = fq * (fp * fb + 1)
        below, critical = lhs < fp, lhs == fp

    pv = math.inf if fp is None else float(fp)
    qv = math.inf if fq is None else float(fq)
    bv = float(fb)
    rp = 0.0 if fp is None else 1.0 / pv
    rq = 0.0 if fq is None else 1.0 / qv
    b_star = bv + rp - rq

    if below:
        return Regime(NONCOMPACT_A, b_star)
    if critical:
        if tail_summable_inv_b and liminf_n_mu_pos:
            raise EntropyError(
                "flags inconsistent: a positive liminf forces a divergent sum"
            )
        if liminf_n_mu_pos:
            return Regime(NONCOMPACT_B, b_star)
        if tail_summable_inv_b:
            return Regime(
                CRITICAL_II,
                b_star,
                lower_const=gamma_pq(pv, qv),
                upper_const=1.0,
            )
        raise UnsupportedCorner(
            "critical line with vanishing n mu_n^(1/b) and divergent sum"
        )
    lower = gamma_pq(pv, qv) * (bv / LN2) ** b_star
    q_le_p = (fp is None) if fq is None else (fp is None or fq <= fp)
    if q_le_p:
        return Regime(
            COMPACT_III,
            b_star,
            lower_const=lower,
            upper_const=gamma_pqb(pv, qv, bv) * (bv / LN2 + 1.0) ** b_star,
            exact_const=(bv / LN2) ** bv if (pv == 2.0 and qv == 2.0) else None,
        )
    return Regime(COMPACT_IV, b_star, lower_const=lower)


class EntropyBand(NamedTuple):
    """Two-sided asymptotic enclosure in bits (leading terms only)."""

    lower_bits: float
    upper_bits: float
    upper_constant_unconfirmed: bool = False


def canonical_band(
    p: ExponentLike, q: ExponentLike, b: float, c: float, eps: float
) -> EntropyBand:
    """Leading-order band for canonical decay c/n^b in a compact regime.

    In the two-sided range the edges carry the constants above.  For
    p < q only the lower edge has a confirmed constant; the upper edge is
    returned at its known growth order (an extra log-log or log power)
    with constant 1 and flagged as unconfirmed.
    """
    if eps <= 0 or c <= 0 or b <= 0:
        raise EntropyError("b, c, eps must be positive")
    pe, qe = as_exponent(p), as_exponent(q)
    regime = classify(
        math.inf if pe.is_inf else pe.value,
        math.inf if qe.is_inf else qe.value,
        b,
    )
    if regime.case not in (COMPACT_III, COMPACT_IV):
        raise NonCompactRegime(f"no finite band in case {regime.case}")
    bst = regime.b_star
    lower = (b / LN2) * (gamma_pq(pe, qe) * c / eps) ** (1.0 / bst)
    if regime.case == COMPACT_III:
        upper = (b / LN2 + 1.0) * (gamma_pqb(pe, qe, b) * c / eps) ** (1.0 / bst)
        return EntropyBand(lower, upper, False)
    growth = eps ** (-1.0 / bst)
    loginv = math.log2(1.0 / eps)
    if b >= 1.0:
        upper = growth * math.log2(max(2.0, loginv))
    else:
        upper = growth * loginv ** (1.0 - b)
    return EntropyBand(lower, upper, True)


def hilbert_leading(b: float, c: float, eps: float) -> float:
    """Exact leading term b c^(1/b)/ln2 * eps^(-1/b) of the p=q=2 entropy."""
    if eps <= 0 or c <= 0 or b <= 0:
        raise EntropyError("b, c, eps must be positive")
    return b * c ** (1.0 / b) / LN2 * eps ** (-1.0 / b)


def hilbert_second_order(
    alpha1: float, alpha2: float, c1: float, c2: float, eps: float
) -> float:
    """Two-term p=q=2 expansion for decay c1/n^a1 + c2/n^a2.

    Requires alpha1 < alpha2 < alpha1 + 1/2 so the second term dominates
    the expansion error.
    """
    if not (0 < alpha1 < alpha2 < alpha1 + 0.5):
        raise EntropyError("need alpha1 < alpha2 < alpha1 + 1/2")
    if c1 <= 0 or eps <= 0:
        raise EntropyError("c1 and eps must be positive")
    frak_a = alpha1 - alpha2 + 1.0
    lead = alpha1 * c1 ** (1.0 / alpha1) / LN2 * eps ** (-1.0 / alpha1)
    second = (
        c2
        * c1 ** ((1.0 - alpha2) / alpha1)
        / (LN2 * frak_a)
        * eps ** (-frak_a / alpha1)
    )
    return lead + second


def _largest_index_exceeding(
    surrogate, eps: float, cap: int, finite_end: Optional[int] = None
) -> int:
    """max{d : surrogate(d) > eps} for a unimodal surrogate, 0 if none.

    The supported families give surrogates of the form A d^u + B d^v (at
    most one sign change of the derivative), so once the value sits at or
    below eps while non-increasing it never recovers.  ``finite_end``
    bounds the scan for complete finite tables.
    """
    last = 0
    prev = None
    end = cap if finite_end is None else min(cap, finite_end)
    for d in range(1, end + 1):
        val = surrogate(d)
        if val > eps:
            last = d
        elif prev is not None and val <= prev:
            return last
        prev = val
    if finite_end is not None and end == finite_end:
        return last
    raise ScanCapExceeded(f"surrogate still above eps at the scan cap {cap}")


def entropy_estimator(model: SemiAxisModel, eps: float, cap: int = _SCAN_CAP) -> float:
    """sum_{n <= d*} log2(mu_n / eps) with d* = max{n : mu_n > eps}.

    Reproduces the p = q = 2 asymptotic orders; the reference level eps
    (instead of mu_{d*}) changes the value by O(1) only.
    """
    if eps <= 0:
        raise EntropyError("eps must be positive")
    d_star = _largest_index_exceeding(
        lambda d: axis(model, d), eps, cap, finite_end=table_length(model)
    )
    if d_star == 0:
        return 0.0
    return kahan_sum(math.log2(axis(model, n) / eps) for n in range(1, d_star + 1))


def effective_dimension(
    model: SemiAxisModel,
    p: ExponentLike,
    q: ExponentLike,
    eps: float,
    cap: int = _SCAN_CAP,
) -> int:
    """max{d : d^(1/q-1/p) mu_d > eps}; 0 when the surrogate never exceeds eps.

    This is the dimension-selection heuristic for covering at radius eps:
    the surrogate must eventually decay (decay index above 1/q - 1/p).
    """
    if eps <= 0:
        raise EntropyError("eps must be positive")
    rp, rq = as_exponent(p).reciprocal(), as_exponent(q).reciprocal()
    e = rq - rp
    return _largest_index_exceeding(
        lambda d: d**e * axis(model, d), eps, cap, finite_end=table_length(model)
    )


def sum_expansion_check(
    alpha1: float, alpha2: float, c1: float, c2: float, d: int
) -> Tuple[float, float]:
    """(exact, approx) for sum_{n<=d} log2(mu_n/mu_d) under two-term decay.

    approx = alpha1 d/ln2 + (1/a - 1) c2/(c1 ln2) d^a with
    a = alpha1 - alpha2 + 1 > 0.
    """
    frak_a = alpha1 - alpha2 + 1.0
    if frak_a <= 0:
        raise EntropyError("requires alpha1 - alpha2 + 1 > 0")
    if d < 1:
        raise EntropyError("d must be >= 1")

    def mu(n: int) -> float:
        return c1 * n ** (-alpha1) + c2 * n ** (-alpha2)

    mu_d = mu(d)
    exact = kahan_sum(math.log2(mu(n) / mu_d) for n in range(1, d + 1))
    approx = alpha1 * d / LN2 + (1.0 / frak_a - 1.0) * c2 / (c1 * LN2) * d**frak_a
    return exact, approx


def invert_series(
    alpha1: float, alpha2: float, c1: float, c2: float, g: float
) -> float:
    """Asymptotic inverse of g = c1 u^-a1 + c2 u^-a2 for small g.

    u = c1^(1/a1) g^(-1/a1) + (c2 c1^((1-a2)/a1) / a1) g^(-(a1-a2+1)/a1),
    accurate up to o() of the second term as g -> 0.
    """
    if not (0 < alpha1 < alpha2):
        raise EntropyError("requires 0 < alpha1 < alpha2")
    if c1 <= 0 or g <= 0:
        raise EntropyError("c1 and g must be positive")
    lead = c1 ** (1.0 / alpha1) * g ** (-1.0 / alpha1)
    corr = (
        c2
        * c1 ** ((1.0 - alpha2) / alpha1)
        / alpha1
        * g ** (-(alpha1 - alpha2 + 1.0) / alpha1)
    )
    return lead + corr
