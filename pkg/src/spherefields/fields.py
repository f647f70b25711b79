"""Unit vector fields on the punctured sphere.

A field is stored through its angle ``theta`` against the moving frame,
``v = cos(theta) e1 + sin(theta) e2``, together with the frame derivatives
``theta1 = d theta(e1) = (1/cos alpha) d theta/d beta`` and
``theta2 = d theta(e2) = d theta/d alpha``.

Every field class exposes ``derivatives(alpha, beta)``, vectorised over
broadcastable arrays, returning ``(theta, theta1, theta2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .geometry import HALF_PI, TWO_PI, SphericalPoint, check_latitude, geodesic_distance

__all__ = [
    "UnitField",
    "Spin",
    "NorthSouth",
    "GridField",
    "BumpSpec",
    "Perturbed",
    "evaluate",
    "vector_components",
    "make_grid",
    "perturb",
    "random_bump",
    "wrap_angle",
]

MIN_GRID = 8


def wrap_angle(x):
    """Map angle differences into ``[-pi, pi)``."""
    return np.mod(np.asarray(x) + np.pi, TWO_PI) - np.pi


class UnitField:
    """Base class; subclasses implement :meth:`derivatives`."""

    analytic = True

    def derivatives(self, alpha, beta):
        raise NotImplementedError

    def theta(self, alpha, beta):
        return self.derivatives(alpha, beta)[0]


@dataclass(frozen=True)
class Spin(UnitField):
    """``theta = (k - 1) beta``: index ``k`` at N and ``2 - k`` at S.

    For ``k >= 3`` this is the minimiser of the volume in its index class.
    ``Spin(1)`` is the parallel field ``e1``; it shares ``theta1``, ``theta2``
    (hence volume and indexes) with :class:`NorthSouth`.
    """

    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"Spin needs an integer k >= 1, got {self.k!r}")

    def derivatives(self, alpha, beta):
        alpha, beta = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(beta, float))
        turns = self.k - 1
        return turns * beta, turns / np.cos(alpha), np.zeros_like(alpha)


@dataclass(frozen=True)
class NorthSouth(UnitField):
    """The meridian field ``v = e2``."""

    def derivatives(self, alpha, beta):
        alpha, beta = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(beta, float))
        zero = np.zeros_like(alpha)
        return zero + HALF_PI, zero, zero.copy()


def grid_latitudes(n_alpha):
    """Cell-centred latitudes, strictly inside the open interval."""
    return -HALF_PI + (np.arange(n_alpha) + 0.5) * (math.pi / n_alpha)


def grid_longitudes(n_beta):
    return np.arange(n_beta) * (TWO_PI / n_beta)


@dataclass(frozen=True, eq=False)
class GridField(UnitField):
    """``theta`` sampled on a uniform latitude/longitude grid.

    Longitude is periodic. Values are only meaningful modulo ``2 pi``; every
    difference is wrapped into ``[-pi, pi)`` before use, which is the same as
    lifting each row to a continuous branch.

    Derivatives are second-order central differences, periodic in longitude and
    one-sided (second order) on the first and last latitude rows. Off-node
    evaluation is bilinear.
    """

    theta_values: np.ndarray
    analytic = False
    dtheta_dbeta: np.ndarray = dc_field(init=False, repr=False)
    dtheta_dalpha: np.ndarray = dc_field(init=False, repr=False)

    def __post_init__(self):
        values = np.array(self.theta_values, dtype=float)
        if values.ndim != 2 or min(values.shape) < MIN_GRID:
            raise ValueError(f"grid must be at least {MIN_GRID}x{MIN_GRID}, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("grid contains non-finite theta values")
        values.setflags(write=False)
        object.__setattr__(self, "theta_values", values)
        hb = TWO_PI / self.n_beta
        ha = math.pi / self.n_alpha
        fwd = wrap_angle(np.roll(values, -1, axis=1) - values)
        d_beta = 0.5 * (fwd + np.roll(fwd, 1, axis=1)) / hb
        lifted = values[0:1] + np.concatenate(
            [np.zeros((1, self.n_beta)), np.cumsum(wrap_angle(np.diff(values, axis=0)), axis=0)]
        )
        d_alpha = np.gradient(lifted, ha, axis=0, edge_order=2)
        for arr in (d_beta, d_alpha):
            arr.setflags(write=False)
        object.__setattr__(self, "dtheta_dbeta", d_beta)
        object.__setattr__(self, "dtheta_dalpha", d_alpha)

    @property
    def n_alpha(self):
        return self.theta_values.shape[0]

    @property
    def n_beta(self):
        return self.theta_values.shape[1]

    @property
    def latitudes(self):
        return grid_latitudes(self.n_alpha)

    @property
    def longitudes(self):
        return grid_longitudes(self.n_beta)

    def node_derivatives(self):
        """``(theta, theta1, theta2)`` at the grid nodes, shape ``(n_alpha, n_beta)``."""
        cos_a = np.cos(self.latitudes)[:, None]
        return self.theta_values, self.dtheta_dbeta / cos_a, self.dtheta_dalpha

    def row_windings(self):
        """Total wrapped increment of theta around each latitude row, divided by 2 pi."""
        steps = wrap_angle(np.roll(self.theta_values, -1, axis=1) - self.theta_values)
        return steps.sum(axis=1) / TWO_PI, np.abs(steps).max(axis=1)

    def derivatives(self, alpha, beta):
        alpha, beta = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(beta, float))
        lats = self.latitudes
        if np.any(alpha < lats[0] - 1e-12) or np.any(alpha > lats[-1] + 1e-12):
            raise ValueError(
                f"latitude outside grid range [{lats[0]:.6g}, {lats[-1]:.6g}]"
            )
        ha = math.pi / self.n_alpha
        hb = TWO_PI / self.n_beta
        fa = np.clip((alpha - lats[0]) / ha, 0.0, self.n_alpha - 1)
        i0 = np.minimum(np.floor(fa).astype(int), self.n_alpha - 2)
        ta = fa - i0
        fb = np.mod(beta, TWO_PI) / hb
        j0 = np.floor(fb).astype(int) % self.n_beta
        tb = fb - np.floor(fb)
        j1 = (j0 + 1) % self.n_beta
        i1 = i0 + 1

        def bilinear(arr):
            return ((1 - ta) * (1 - tb) * arr[i0, j0] + (1 - ta) * tb * arr[i0, j1]
                    + ta * (1 - tb) * arr[i1, j0] + ta * tb * arr[i1, j1])

        th = self.theta_values
        base = th[i0, j0]
        # lift the three other corners onto the branch of the first one
        t01 = base + wrap_angle(th[i0, j1] - base)
        t10 = base + wrap_angle(th[i1, j0] - base)
        t11 = base + wrap_angle(th[i1, j1] - base)
        theta = ((1 - ta) * (1 - tb) * base + (1 - ta) * tb * t01
                 + ta * (1 - tb) * t10 + ta * tb * t11)
        theta1 = bilinear(self.dtheta_dbeta) / np.cos(alpha)
        theta2 = bilinear(self.dtheta_dalpha)
        return theta, theta1, theta2


@dataclass(frozen=True)
class BumpSpec:
    """Smooth bump ``amplitude * exp(1 - 1/(1 - (r/width)^2))`` supported in a geodesic disk."""

    amplitude: float
    center: SphericalPoint
    width: float

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("bump width must be positive")

    @property
    def pole_clearance(self):
        """Geodesic gap between the support disk and the nearest pole."""
        return HALF_PI - abs(self.center.alpha) - self.width

    def value_and_gradient(self, alpha, beta):
        """Bump value and its chart derivatives ``(b, db/dalpha, db/dbeta)``."""
        alpha, beta = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(beta, float))
        ac, bc, w = self.center.alpha, self.center.beta, self.width
        r = geodesic_distance(alpha, beta, ac, bc)
        s2 = (r / w) ** 2
        inside = s2 < 1.0
        q = np.where(inside, 1.0 - s2, 1.0)
        b = np.where(inside, self.amplitude * np.exp(1.0 - 1.0 / q), 0.0)
        # db/dr / sin(r), finite at r = 0 where r/sin r -> 1
        r_over_sin = 1.0 / np.sinc(r / np.pi)
        radial = np.where(inside, b * 2.0 / (w * w * q * q) * r_over_sin, 0.0)
        ca, sa = np.cos(alpha), np.sin(alpha)
        dcos_dalpha = ca * math.sin(ac) - sa * math.cos(ac) * np.cos(beta - bc)
        dcos_dbeta = -ca * math.cos(ac) * np.sin(beta - bc)
        return b, radial * dcos_dalpha, radial * dcos_dbeta


@dataclass(frozen=True)
class Perturbed(UnitField):
    """``theta = theta_base + bump``; the bump support stays away from both poles."""

    base: UnitField
    bump: BumpSpec

    def __post_init__(self):
        if not self.base.analytic:
            raise ValueError("only analytic fields can be perturbed")
        if self.bump.pole_clearance <= 0:
            raise ValueError(
                f"bump support reaches a pole (clearance {self.bump.pole_clearance:.3g} rad)"
            )

    def derivatives(self, alpha, beta):
        theta, t1, t2 = self.base.derivatives(alpha, beta)
        b, db_da, db_db = self.bump.value_and_gradient(alpha, beta)
        return theta + b, t1 + db_db / np.cos(alpha), t2 + db_da


def _point(p):
    return p if isinstance(p, SphericalPoint) else SphericalPoint(*p)


def evaluate(field, p):
    """``(theta, theta1, theta2)`` of ``field`` at the point ``p`` as floats."""
    p = _point(p)
    return tuple(float(x) for x in field.derivatives(p.alpha, p.beta))


def vector_components(field, p):
    """Components ``(cos theta, sin theta)`` of the field in the frame ``(e1, e2)``."""
    theta = evaluate(field, p)[0]
    return math.cos(theta), math.sin(theta)


def make_grid(field, n_alpha, n_beta):
    """Sample an analytic field on the cell-centred ``n_alpha x n_beta`` grid."""
    if not field.analytic:
        raise ValueError("make_grid needs an analytic source field")
    if n_alpha < MIN_GRID or n_beta < MIN_GRID:
        raise ValueError(f"grid sizes must be >= {MIN_GRID}")
    alpha = grid_latitudes(n_alpha)[:, None]
    beta = grid_longitudes(n_beta)[None, :]
    theta = np.broadcast_to(field.theta(alpha, beta), (n_alpha, n_beta))
    return GridField(np.array(theta))


def perturb(base, bump):
    """Add a bump to ``base``. Indexes at the poles are unchanged."""
    return Perturbed(base, bump)


def random_bump(rng, amplitude=None, max_amplitude=0.5, width_range=(0.3, 0.6), clearance=0.15):
    """Draw a :class:`BumpSpec` whose support keeps ``clearance`` radians from both poles."""
    width = rng.uniform(*width_range)
    lat_max = HALF_PI - width - clearance
    center = SphericalPoint(rng.uniform(-lat_max, lat_max), rng.uniform(0.0, TWO_PI))
    if amplitude is None:
        amplitude = rng.uniform(0.0, max_amplitude)
        while amplitude == 0.0:
            amplitude = rng.uniform(0.0, max_amplitude)
    return BumpSpec(float(amplitude), center, float(width))
