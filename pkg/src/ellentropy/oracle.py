"""Brute-force covering and packing estimates in dimensions up to 3.

These are the package's independent ground truths.  A deterministic
axis-aligned grid of cell centers is laid over the ellipsoid's bounding
box.  Greedy selection in a fixed lexicographic scan then produces

* a covering of all retained grid points at radius eps, whose size upper
  bounds N(eps + delta), delta being the q-norm of the half-cell offsets
  (any point of the body sits within delta of a retained grid point);
* a subset of ellipsoid points pairwise more than 2 eps apart, whose size
  lower bounds N(eps) (an eps-ball holds at most one such point).

Determinism is part of the contract: identical inputs give identical
counts, regardless of how the distance computations are batched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .constants import ExponentLike, HolderExponent, as_exponent
from .errors import EnumerationTooLarge, EntropyError
from .finite_bounds import (
    FiniteEllipsoid,
    density_upper_bound,
    product_grid_upper_bound,
    volume_lower_bound,
)
from .hyperrect import exact_entropy
from .sequences import Tabulated

GRID_POINT_CAP = 10**7


@dataclass(frozen=True)
class OracleReport:
    """Counts from the grid oracle; either count may be absent.

    ``cover_count`` upper-bounds N(eps + delta); ``pack_count``
    lower-bounds N(eps).  ``grid_resolution`` is the largest per-axis cell
    width, ``delta`` the q-norm of the half-cell offsets.
    """

    cover_count: Optional[int]
    pack_count: Optional[int]
    grid_resolution: float
    delta: float


def _qnorm(diff: np.ndarray, q: HolderExponent) -> np.ndarray:
    a = np.abs(diff)
    if q.is_inf:
        return a.max(axis=-1)
    if q.value == 1.0:
        return a.sum(axis=-1)
    if q.value == 2.0:
        return np.sqrt((a * a).sum(axis=-1))
    return (a**q.value).sum(axis=-1) ** (1.0 / q.value)


def _pnorm_mu(points: np.ndarray, axes: np.ndarray, p: HolderExponent) -> np.ndarray:
    scaled = np.abs(points) / axes
    if p.is_inf:
        return scaled.max(axis=-1)
    return (scaled**p.value).sum(axis=-1) ** (1.0 / p.value)


def _grid(axes: Tuple[float, ...], resolution: int) -> np.ndarray:
    """Cell-center grid of the bounding box, lexicographic in the indices."""
    d = len(axes)
    if resolution**d > GRID_POINT_CAP:
        raise EnumerationTooLarge(
            f"grid of {resolution**d} points exceeds the cap", count=resolution**d
        )
    sides = [
        -a + (2 * np.arange(1, resolution + 1) - 1) * (a / resolution) for a in axes
    ]
    mesh = np.meshgrid(*sides, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=-1)


def _check_instance(E: FiniteEllipsoid, eps: float, resolution: int) -> None:
    if E.dim > 3:
        raise EntropyError("oracle supports dimensions 1 to 3 only")
    if resolution < 8:
        raise EntropyError("resolution must be at least 8")
    if eps <= 0:
        raise EntropyError("eps must be positive")


def _cell_half_widths(E: FiniteEllipsoid, resolution: int) -> np.ndarray:
    return np.array(E.axes) / resolution


def greedy_cover(
    E: FiniteEllipsoid, q: ExponentLike, eps: float, resolution: int
) -> OracleReport:
    """Deterministic greedy covering of the grid points near the ellipsoid.

    Grid points are retained when their ellipsoid norm is at most
    1 + slack, slack being the ellipsoid norm of the half-cell offsets;
    this guarantees that the cell center of any body point is retained, so
    the selected centers cover the whole body at radius eps + delta.
    """
    q = as_exponent(q)
    _check_instance(E, eps, resolution)
    half = _cell_half_widths(E, resolution)
    pts = _grid(E.axes, resolution)
    axes = np.array(E.axes)
    slack = float(_pnorm_mu(half[None, :], axes, E.p)[0])
    pts = pts[_pnorm_mu(pts, axes, E.p) <= 1.0 + slack]
    delta = float(_qnorm(half[None, :], q)[0])

    # Forward-diagonal shift of q-norm length 0.95 eps: the center for the
    # first uncovered point is the grid point nearest to point + shift (the
    # point itself if the snap lands outside radius eps).  In one dimension
    # this is the near-optimal interval rule; in higher dimensions it
    # advances a full frontier instead of hugging the scan axis.
    diag = np.ones(len(E.axes))
    shift = 0.95 * eps * diag / float(_qnorm(diag[None, :], q)[0])
    covered = np.zeros(len(pts), dtype=bool)
    count = 0
    while not covered.all():
        i = int(np.argmin(covered))  # first uncovered in lex order
        c = int(np.argmin(_qnorm(pts - (pts[i] + shift), q)))
        if _qnorm((pts[c] - pts[i])[None, :], q)[0] > eps:
            c = i
        count += 1
        covered |= _qnorm(pts - pts[c], q) <= eps
    return OracleReport(
        cover_count=count,
        pack_count=None,
        grid_resolution=float(2.0 * half.max()),
        delta=delta,
    )


def _greedy_pack_once(E: FiniteEllipsoid, q: HolderExponent, eps: float, resolution: int) -> int:
    pts = _grid(E.axes, resolution)
    axes = np.array(E.axes)
    pts = pts[_pnorm_mu(pts, axes, E.p) <= 1.0]  # strict membership
    available = np.ones(len(pts), dtype=bool)
    count = 0
    while available.any():
        i = int(np.argmax(available))  # first available in lex order
        count += 1
        available &= _qnorm(pts - pts[i], q) > 2.0 * eps
    return count


def greedy_pack(
    E: FiniteEllipsoid, q: ExponentLike, eps: float, resolution: int
) -> OracleReport:
    """Deterministic greedy 2eps-separated subset of grid points inside E.

    The greedy runs at the requested resolution and at each halving of it
    (down to 8); the best count is reported.  Every run is a valid lower
    bound, and taking the maximum over the halving chain makes the count
    non-decreasing under dyadic refinement.
    """
    q = as_exponent(q)
    _check_instance(E, eps, resolution)
    half = _cell_half_widths(E, resolution)
    chain = [resolution]
    while chain[-1] // 2 >= 8:
        chain.append(chain[-1] // 2)
    count = max(_greedy_pack_once(E, q, eps, r) for r in chain)
    return OracleReport(
        cover_count=None,
        pack_count=count,
        grid_resolution=float(2.0 * half.max()),
        delta=float(_qnorm(half[None, :], q)[0]),
    )


@dataclass(frozen=True)
class SandwichReport:
    """All bounds evaluated on one instance, with the ordering checks.

    ``checks`` maps a named inequality to a bool; ``values`` holds the
    numbers behind them (bits, except the raw counts).
    """

    report: OracleReport
    checks: dict
    values: dict

    @property
    def all_ok(self) -> bool:
        return all(self.checks.values())


def sandwich_report(
    E: FiniteEllipsoid,
    q: ExponentLike,
    eps: float,
    resolution: int = 64,
    eta: float = 1.0,
) -> SandwichReport:
    """Evaluate every bound on one instance and assert the full ordering.

    With delta the grid slack, the verifiable inequalities are

        volume_lower(eps + delta) <= log2(cover count),
        log2(pack count)          <= upper(eps),

    where upper is the density bound for d >= 3 (when eps is admissible)
    and the product-grid bound otherwise, and for p = q = inf the exact
    entropy must sit inside both brackets.
    """
    q = as_exponent(q)
    cover = greedy_cover(E, q, eps, resolution)
    pack = greedy_pack(E, q, eps, resolution)
    report = OracleReport(
        cover_count=cover.cover_count,
        pack_count=pack.pack_count,
        grid_resolution=cover.grid_resolution,
        delta=cover.delta,
    )
    eps_outer = eps + cover.delta
    vl_outer = volume_lower_bound(E, q, eps_outer).log2_bound
    log_cover = math.log2(cover.cover_count)
    log_pack = math.log2(pack.pack_count)

    values = {
        "eps": eps,
        "delta": cover.delta,
        "volume_lower_at_eps_plus_delta": vl_outer,
        "log2_cover": log_cover,
        "log2_pack": log_pack,
        "volume_lower_at_eps": volume_lower_bound(E, q, eps).log2_bound,
    }
    checks = {"volume_lower<=cover": vl_outer <= log_cover + 1e-9}

    upper_bits = None
    if E.dim >= 3:
        try:
            upper_bits = density_upper_bound(E, q, eps, eta).log2_bound
            values["upper_kind"] = "density"
        except EntropyError:
            upper_bits = None
    if upper_bits is None:
        upper_bits = product_grid_upper_bound(E.axes, q, eps)
        values["upper_kind"] = "product-grid"
    values["upper_at_eps"] = upper_bits
    checks["pack<=upper"] = log_pack <= upper_bits + 1e-9
    checks["volume_lower<=upper"] = values["volume_lower_at_eps"] <= upper_bits + 1e-9

    if E.p.is_inf and q.is_inf:
        exact_inner = exact_entropy(Tabulated(E.axes), eps).bits
        exact_outer = exact_entropy(Tabulated(E.axes), eps_outer).bits
        values["exact_at_eps"] = exact_inner
        values["exact_at_eps_plus_delta"] = exact_outer
        checks["exact_in_lower_bracket"] = (
            vl_outer <= exact_outer + 1e-9 and exact_outer <= log_cover + 1e-9
        )
        checks["exact_in_upper_bracket"] = (
            log_pack <= exact_inner + 1e-9 and exact_inner <= upper_bits + 1e-9
        )
    return SandwichReport(report=report, checks=checks, values=values)
