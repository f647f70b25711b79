"""Volume of a field, Poincare indexes at the poles, the Stokes identity along
parallels, and the elliptic lower bound ``vol(v) >= pi L(eps_k)``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .curvature import volume_density
from .fields import GridField, Spin, wrap_angle
from .geometry import HALF_PI, TWO_PI, check_latitude
from .quadrature import QuadratureConfig, QuadratureResult, ellipse_length, integrate_sphere

__all__ = [
    "IndexUndetermined",
    "PoleIndex",
    "IndexReport",
    "BoundReport",
    "StokesCheck",
    "SweepRow",
    "volume",
    "poincare_index",
    "index_report",
    "stokes_check",
    "bound_report",
    "sweep",
    "lower_bound",
]

#: Largest accepted distance between a measured winding and an integer.
MAX_RESIDUAL = 0.05
#: A single unwrapping step at or above this size is considered ambiguous.
MAX_STEP = 0.5 * math.pi
DEFAULT_MEASURING_LATITUDE = 1.4


class IndexUndetermined(RuntimeError):
    """The winding of a field around a pole cannot be read off reliably."""


class PoleIndex(NamedTuple):
    index: int
    winding: float
    residual: float


@dataclass(frozen=True)
class IndexReport:
    index_north: int
    index_south: int
    winding: float
    residual: float

    def __post_init__(self):
        if self.index_north + self.index_south != 2:
            raise IndexUndetermined(
                f"indexes {self.index_north} + {self.index_south} violate Poincare-Hopf"
            )


@dataclass(frozen=True)
class BoundReport:
    volume: QuadratureResult
    indexes: IndexReport
    k: int
    bound: float
    margin: float
    satisfied: bool
    attains_bound: bool
    note: str = ""


class StokesCheck(NamedTuple):
    lhs: float
    rhs: float
    abs_diff: float


class SweepRow(NamedTuple):
    k: int
    volume: float
    bound: float
    rel_gap: float
    abs_error_estimate: float


def _grid_volume(field: GridField):
    """Midpoint rule in latitude (cell centres) times periodic trapezoid in longitude.

    The error estimate compares against the same rule with longitude step
    doubled and with latitude rows averaged pairwise; both are O(h^2) proxies.
    """
    _, t1, t2 = field.node_derivatives()
    lats = field.latitudes[:, None]
    dens = np.sqrt(1.0 + (np.tan(lats) + t1) ** 2 + t2**2) * np.cos(lats)
    ha, hb = math.pi / field.n_alpha, TWO_PI / field.n_beta
    rows = dens.sum(axis=1) * hb
    full = math.fsum(rows * ha)
    coarse_beta = math.fsum(dens[:, ::2].sum(axis=1) * 2 * hb * ha)
    n_pairs = field.n_alpha // 2
    paired = 0.5 * (rows[0 : 2 * n_pairs : 2] + rows[1 : 2 * n_pairs : 2])
    coarse_alpha = math.fsum(paired * 2 * ha) + math.fsum(rows[2 * n_pairs :] * ha)
    err = abs(full - coarse_beta) + abs(full - coarse_alpha)
    return QuadratureResult(full, err, dens.size)


def volume(field, cfg=None):
    """``int sqrt(1 + (tan alpha + theta1)^2 + theta2^2)`` over the punctured sphere."""
    if isinstance(field, GridField):
        return _grid_volume(field)
    return integrate_sphere(lambda a, b: volume_density(field, a, b), cfg or QuadratureConfig())


def _winding_along(field, alpha, n=256, max_n=1 << 20):
    """Unwrapped turns of theta around the parallel at ``alpha``.

    Sampling is refined until the analytic longitude derivative keeps every
    step below ``pi/4``; wrapped steps alone cannot detect aliasing.
    """
    while True:
        beta = np.arange(n) * (TWO_PI / n)
        theta, t1, _ = field.derivatives(alpha, beta)
        theta = np.broadcast_to(theta, beta.shape)
        slope = np.abs(np.broadcast_to(t1, beta.shape)).max() * math.cos(alpha)
        if slope * (TWO_PI / n) < 0.25 * math.pi:
            steps = wrap_angle(np.roll(theta, -1) - theta)
            w = float(steps.sum() / TWO_PI)
            residual = abs(w - round(w))
            if residual <= MAX_RESIDUAL and np.abs(steps).max() < MAX_STEP:
                return w, residual
        if n >= max_n:
            raise IndexUndetermined(
                f"winding along latitude {alpha:.4g} not resolved with {n} samples"
            )
        n *= 2


def _grid_winding(field: GridField, alpha):
    row = int(np.argmin(np.abs(field.latitudes - alpha)))
    windings, max_steps = field.row_windings()
    w = float(windings[row])
    residual = abs(w - round(w))
    if residual > MAX_RESIDUAL or max_steps[row] >= MAX_STEP:
        raise IndexUndetermined(
            f"grid row {row} has steps up to {max_steps[row]:.3g} rad "
            f"(winding residual {residual:.3g})"
        )
    return w, residual


def poincare_index(field, pole, measuring_latitude=None):
    """Index of ``field`` at ``pole`` ('N' or 'S') from its winding along one parallel.

    ``W`` counts turns of ``theta`` against the moving frame; the frame itself
    turns once around each pole, giving ``1 + W`` at N and ``1 - W`` at S.
    """
    pole = pole.upper()
    if pole not in ("N", "S"):
        raise ValueError(f"pole must be 'N' or 'S', got {pole!r}")
    if measuring_latitude is None:
        measuring_latitude = DEFAULT_MEASURING_LATITUDE * (1 if pole == "N" else -1)
    check_latitude(measuring_latitude)
    if isinstance(field, GridField):
        w, residual = _grid_winding(field, measuring_latitude)
    else:
        w, residual = _winding_along(field, measuring_latitude)
    turns = int(round(w))
    index = 1 + turns if pole == "N" else 1 - turns
    return PoleIndex(index, w, residual)


def index_report(field, latitude=DEFAULT_MEASURING_LATITUDE):
    north = poincare_index(field, "N", abs(latitude))
    south = poincare_index(field, "S", -abs(latitude))
    return IndexReport(
        north.index, south.index, north.winding, max(north.residual, south.residual)
    )


def stokes_check(field, alpha, n_beta=256):
    """Integral of the pulled-back connection form around the parallel at ``alpha``.

    The parallel has arc-length element ``cos(alpha) d beta``; the integral
    should equal ``2 pi (k - 1 + sin alpha)`` with ``k`` the index at N.
    """
    check_latitude(alpha)
    beta = np.arange(n_beta) * (TWO_PI / n_beta)
    _, t1, _ = field.derivatives(alpha, beta)
    pullback = np.tan(alpha) + np.broadcast_to(t1, beta.shape)
    lhs = math.fsum(pullback * math.cos(alpha)) * (TWO_PI / n_beta)
    k = poincare_index(field, "N").index
    rhs = TWO_PI * (k - 1 + math.sin(alpha))
    return StokesCheck(lhs, rhs, abs(lhs - rhs))


def lower_bound(k):
    """``pi * L(eps_k)``."""
    return math.pi * ellipse_length(k)


def bound_report(field, cfg=None, measuring_latitude=DEFAULT_MEASURING_LATITUDE):
    cfg = cfg or QuadratureConfig()
    indexes = index_report(field, measuring_latitude)
    k = max(indexes.index_north, indexes.index_south)
    vol = volume(field, cfg)
    bound = lower_bound(k)
    margin = vol.value - bound
    tolerance = cfg.abs_tol + cfg.rel_tol * bound
    satisfied = margin >= -(vol.abs_error_estimate + tolerance)
    attains = abs(margin) <= max(1e-6, 10 * vol.abs_error_estimate)
    note = ""
    if k <= 2:
        note = "k <= 2: outside the k > 2 range of the theorem"
        if k == 1:
            note += "; for k = 1 the bound 2 pi^2 is the classical north-south value"
    return BoundReport(vol, indexes, k, bound, margin, satisfied, attains, note)


def sweep(k_min, k_max, cfg=None):
    """Volume of ``Spin(k)`` against ``pi L(eps_k)`` for each ``k`` in the range."""
    if k_min < 1:
        raise ValueError("k must be >= 1")
    if k_min > k_max:
        raise ValueError(f"empty range: k_min={k_min} > k_max={k_max}")
    cfg = cfg or QuadratureConfig()
    rows = []
    for k in range(k_min, k_max + 1):
        vol = volume(Spin(k), cfg)
        bound = lower_bound(k)
        rows.append(SweepRow(k, vol.value, bound, abs(vol.value - bound) / bound, vol.abs_error_estimate))
    return rows
