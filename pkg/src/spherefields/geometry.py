"""Latitude/longitude chart on the sphere with both poles removed.

Frame convention used throughout the package:

* ``e1`` is the unit tangent to parallels, pointing toward increasing longitude.
* ``e2`` is the unit tangent to meridians, pointing north (increasing latitude).

With these choices ``g(nabla_{e1} e1, e2) = tan(alpha)`` and ``nabla_{e2} e2 = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi

#: Latitudes closer than this to a pole are rejected, never clamped.
POLE_GUARD = 1e-12


class DomainError(ValueError):
    """A point lies on (or numerically at) one of the removed poles."""


def reduce_longitude(beta):
    """Reduce longitude into ``[0, 2*pi)``."""
    b = np.mod(beta, TWO_PI)
    # np.mod can round a tiny negative input up to exactly 2*pi
    b = np.where(b >= TWO_PI, 0.0, b)
    return float(b) if np.ndim(b) == 0 else b


def check_latitude(alpha):
    a = np.asarray(alpha, dtype=float)
    if not np.all(np.abs(a) < HALF_PI - POLE_GUARD):
        raise DomainError(f"latitude outside the punctured sphere: {alpha!r}")
    return alpha


@dataclass(frozen=True)
class SphericalPoint:
    """A point of the punctured sphere.

    ``alpha`` is the latitude in ``(-pi/2, pi/2)``; ``beta`` is the longitude,
    stored reduced into ``[0, 2*pi)``.
    """

    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        check_latitude(self.alpha)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", reduce_longitude(float(self.beta)))

    def cartesian(self):
        ca = math.cos(self.alpha)
        return np.array([ca * math.cos(self.beta), ca * math.sin(self.beta), math.sin(self.alpha)])


def _alpha(p):
    return p.alpha if isinstance(p, SphericalPoint) else p


def area_element(p):
    """Jacobian ``cos(alpha)`` of the chart against the round area form.

    Accepts a :class:`SphericalPoint` or latitude array.
    """
    return np.cos(_alpha(p))


def connection_coefficient(p):
    """``g(nabla_{e1} e1, e2) = tan(alpha)``, the geodesic curvature of a parallel."""
    alpha = check_latitude(_alpha(p))
    return np.tan(alpha)


def frame(alpha, beta):
    """Embedded point and frame vectors ``(p, e1, e2)`` in R^3, shape ``(..., 3)``."""
    alpha, beta = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(beta, float))
    ca, sa = np.cos(alpha), np.sin(alpha)
    cb, sb = np.cos(beta), np.sin(beta)
    p = np.stack([ca * cb, ca * sb, sa], axis=-1)
    e1 = np.stack([-sb, cb, np.zeros_like(cb)], axis=-1)
    e2 = np.stack([-sa * cb, -sa * sb, ca], axis=-1)
    return p, e1, e2


def geodesic_distance(alpha1, beta1, alpha2, beta2):
    """Great-circle distance, computed with atan2 so it stays accurate near 0 and pi."""
    p, _, _ = frame(alpha1, beta1)
    q, _, _ = frame(alpha2, beta2)
    cross = np.linalg.norm(np.cross(p, q), axis=-1)
    dot = np.sum(p * q, axis=-1)
    return np.arctan2(cross, dot)
