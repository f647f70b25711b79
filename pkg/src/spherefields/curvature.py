"""Geodesic curvatures of the frame ``{v_perp, v}`` and the volume integrand.

``gamma = g(nabla_v v, v_perp)`` and ``delta = g(nabla_{v_perp} v_perp, v)``.
Two independent routes are provided: the eight-term expansion obtained by
distributing the covariant derivative over ``v = cos(theta) e1 + sin(theta) e2``,
and the collapsed closed form. They agree identically and serve as oracles for
each other.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .fields import _point

__all__ = [
    "CurvaturePair",
    "curvatures_closed",
    "curvatures_expanded",
    "expansion_terms",
    "volume_integrand",
    "volume_density",
    "connection_form_pullback",
]


class CurvaturePair(NamedTuple):
    gamma: float
    delta: float


def curvatures_closed(theta, theta1, theta2, alpha):
    c, s = np.cos(theta), np.sin(theta)
    shifted = np.tan(alpha) + theta1
    return CurvaturePair(c * shifted + s * theta2, s * shifted - c * theta2)


def expansion_terms(theta, theta1, theta2, alpha):
    """The eight terms ``A, B, C, D`` (for gamma) and ``A', B', C', D'`` (for delta).

    Each term is one of the four pieces of ``g(nabla_X Y, Z)`` after writing
    ``X`` and ``Y`` in the frame ``(e1, e2)``, using
    ``g(nabla_{e1} e1, e2) = tan(alpha)`` and ``nabla_{e2} e2 = 0``.
    """
    c, s, t = np.cos(theta), np.sin(theta), np.tan(alpha)
    A = s**2 * c * theta1 + c**3 * t
    B = s**3 * theta2
    C = c**3 * theta1 + s**2 * c * t
    D = s * c**2 * theta2
    Ap = s * c**2 * theta1 + s**3 * t
    Bp = -(c**3) * theta2
    Cp = s**3 * theta1 + s * c**2 * t
    Dp = -(s**2) * c * theta2
    return (A, B, C, D), (Ap, Bp, Cp, Dp)


def curvatures_expanded(theta, theta1, theta2, alpha):
    (A, B, C, D), (Ap, Bp, Cp, Dp) = expansion_terms(theta, theta1, theta2, alpha)
    return CurvaturePair(A + B + C + D, Ap + Bp + Cp + Dp)


def volume_density(field, alpha, beta):
    """Vectorised ``sqrt(1 + (tan alpha + theta1)^2 + theta2^2)`` over arrays."""
    _, t1, t2 = field.derivatives(alpha, beta)
    return np.sqrt(1.0 + (np.tan(alpha) + t1) ** 2 + t2**2)


def volume_integrand(field, p):
    p = _point(p)
    return float(volume_density(field, p.alpha, p.beta))


def connection_form_pullback(field, p):
    """Connection form ``omega_12`` pulled back to the parallel through ``p``, evaluated on ``e1``.

    Equal to ``delta sin(theta) + gamma cos(theta) = tan(alpha) + theta1``.
    """
    p = _point(p)
    _, t1, _ = field.derivatives(p.alpha, p.beta)
    return float(np.tan(p.alpha) + t1)
