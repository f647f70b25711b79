"""Quadrature engines.

* :func:`integrate_1d` -- globally adaptive Gauss-Kronrod (7/15) with bisection.
* :func:`integrate_sphere` -- periodic trapezoid in longitude nested inside the
  adaptive rule in latitude, with the poles handled by truncation at a margin
  ``m`` and Richardson extrapolation over ``m, m/2, m/4``.
* :func:`elliptic_E` / :func:`ellipse_length` -- complete elliptic integral of
  the second kind by the arithmetic-geometric mean.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "QuadratureConfig",
    "QuadratureResult",
    "ConvergenceError",
    "integrate_1d",
    "integrate_sphere",
    "elliptic_E",
    "ellipse_length",
    "ellipse_length_quadrature",
]

# Kronrod 15-point nodes on [0, 1] (symmetric), QUADPACK qk15 table.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss 7-point weights for the nodes _XGK[1], _XGK[3], _XGK[5], _XGK[7].
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_depth: int = 40
    pole_margin: float = 1e-6

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if not 0 < self.pole_margin < 0.1:
            raise ValueError("pole_margin must lie in (0, 0.1)")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.abs_error_estimate < 0 or self.evaluations <= 0:
            raise ValueError("invalid quadrature result")


class ConvergenceError(RuntimeError):
    """Raised when a rule cannot meet its tolerance; ``best`` holds the last estimate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


def _call_vectorized(f, x):
    try:
        y = np.asarray(f(x), dtype=float)
    except TypeError:
        y = None
    if y is None or y.shape != x.shape:
        y = np.broadcast_to(y, x.shape) if y is not None and y.ndim == 0 else None
    if y is None:
        y = np.array([f(float(t)) for t in x.ravel()], dtype=float).reshape(x.shape)
    return y


def _gk15(f, a, b):
    """One Gauss-Kronrod panel. ``f`` maps nodes -> (values, inner_errors)."""
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * NODES
    y, inner = f(x)
    kronrod = half * float(np.dot(KRONROD_WEIGHTS, y))
    gauss = half * float(np.dot(GAUSS_WEIGHTS, y))
    inner_err = abs(half) * float(np.dot(KRONROD_WEIGHTS, inner))
    return kronrod, abs(kronrod - gauss), inner_err


def _adaptive(f, a, b, cfg):
    """Global adaptive bisection: always split the panel with the largest error."""
    value, err, inner = _gk15(f, a, b)
    evals = 15
    heap = [(-err, 0, a, b, value, err, inner, 0)]
    counter = 1
    total_value, total_err = value, err
    while total_err > max(cfg.abs_tol, cfg.rel_tol * abs(total_value)):
        _, _, lo, hi, v, e, ie, depth = heap[0]
        mid = 0.5 * (lo + hi)
        if depth >= cfg.max_depth or not lo < mid < hi:
            best = _finish(heap, evals)
            raise ConvergenceError(
                f"adaptive quadrature on [{a}, {b}] did not reach tolerance "
                f"(estimate {best.value!r} +/- {best.abs_error_estimate:.3g})",
                best,
            )
        heapq.heappop(heap)
        for l, r in ((lo, mid), (mid, hi)):
            vv, ee, ii = _gk15(f, l, r)
            heapq.heappush(heap, (-ee, counter, l, r, vv, ee, ii, depth + 1))
            counter += 1
        evals += 30
        # recompute from scratch in a fixed order to keep results bit-reproducible
        panels = sorted(heap, key=lambda t: t[2])
        total_value = math.fsum(t[4] for t in panels)
        total_err = math.fsum(t[5] for t in panels)
    return _finish(heap, evals)


def _finish(heap, evals):
    panels = sorted(heap, key=lambda t: t[2])
    value = math.fsum(t[4] for t in panels)
    err = math.fsum(t[5] for t in panels) + math.fsum(t[6] for t in panels)
    return QuadratureResult(value, err, evals)


def integrate_1d(f, a, b, cfg=None):
    """Integrate ``f`` over ``[a, b]``.

    ``f`` is called on numpy arrays of nodes when it supports that, and
    element-wise otherwise. Raises :class:`ConvergenceError` if a panel would
    need more than ``cfg.max_depth`` bisections.
    """
    cfg = cfg or QuadratureConfig()
    if not a < b:
        raise ValueError("integrate_1d requires a < b")

    def panel(x):
        return _call_vectorized(f, x), np.zeros_like(x)

    return _adaptive(panel, float(a), float(b), cfg)


MIN_RING = 64
MAX_RING = 1 << 16


def _ring_integrals(g, alphas, cfg, counter):
    """Periodic trapezoid integral of ``g * cos(alpha)`` over longitude, per latitude.

    The number of longitudes doubles (reusing previous samples) until successive
    estimates agree to a tenth of the requested tolerance.
    """
    alphas = np.asarray(alphas, dtype=float)
    weight = np.cos(alphas)[:, None]
    n = MIN_RING
    beta = np.arange(n) * (2 * np.pi / n)

    def sample(b):
        vals = np.broadcast_to(g(alphas[:, None], b[None, :]), (alphas.size, b.size))
        counter[0] += vals.size
        return np.sum(vals * weight, axis=1)

    total = sample(beta) * (2 * np.pi / n)
    while True:
        mids = beta + np.pi / n
        refined = 0.5 * total + sample(mids) * (np.pi / n)
        diff = np.abs(refined - total)
        n *= 2
        beta = np.arange(n) * (2 * np.pi / n)
        tol = 0.1 * np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(refined))
        if np.all(diff <= tol):
            return refined, diff
        total = refined
        if n > MAX_RING:
            raise ConvergenceError(f"longitude rule did not converge with {MAX_RING} samples")


def integrate_sphere(g, cfg=None):
    """Integrate ``g(alpha, beta)`` against the area form of the punctured sphere.

    ``g`` receives broadcastable latitude/longitude arrays. It may blow up like
    ``1/cos(alpha)`` at the poles as long as ``g * cos(alpha)`` has finite
    limits there. The latitude range is truncated to ``[-pi/2 + m, pi/2 - m]``
    and the omitted polar strips are recovered by two Richardson steps using the
    strip integrals between ``m/4``, ``m/2`` and ``m``.
    """
    cfg = cfg or QuadratureConfig()
    counter = [0]

    def panel(x):
        return _ring_integrals(g, x, cfg, counter)

    m = cfg.pole_margin
    lo, hi = -0.5 * np.pi, 0.5 * np.pi
    core = _adaptive(panel, lo + m, hi - m, cfg)
    # strips are tiny; give them an absolute floor tied to the core's accuracy
    strip_cfg = replace(cfg, abs_tol=max(cfg.abs_tol * 1e-3, 1e-300))
    strips = []
    for outer, inner in ((0.5 * m, m), (0.25 * m, 0.5 * m)):
        south = _adaptive(panel, lo + outer, lo + inner, strip_cfg)
        north = _adaptive(panel, hi - inner, hi - outer, strip_cfg)
        strips.append((south, north))
    s1 = strips[0][0].value + strips[0][1].value
    s2 = strips[1][0].value + strips[1][1].value
    # I(m) + c1 m + c2 m^2 expansion; see module docstring
    value = core.value + (2.0 * s1 + 8.0 * s2) / 3.0
    extrapolation_err = abs(2.0 * s2 - s1) / 3.0
    rule_err = core.abs_error_estimate + sum(
        r.abs_error_estimate for pair in strips for r in pair
    ) * 3.0
    return QuadratureResult(float(value), float(rule_err + extrapolation_err), counter[0])


def elliptic_E(m):
    """Complete elliptic integral of the second kind, parameter convention.

    ``E(m) = int_0^{pi/2} sqrt(1 - m sin^2 t) dt`` evaluated by the AGM:
    ``E = K * (1 - sum_n 2^(n-1) c_n^2)`` with ``K = pi / (2 AGM(1, sqrt(1-m)))``.
    """
    m = float(m)
    if not 0.0 <= m <= 1.0:
        raise ValueError(f"elliptic parameter must lie in [0, 1], got {m}")
    if m == 1.0:
        return 1.0
    a, b = 1.0, math.sqrt(1.0 - m)
    c = math.sqrt(m)
    power = 0.5
    acc = power * c * c
    for _ in range(64):
        if abs(c) <= 1e-17 * a:
            break
        # c_{n+1} = c_n^2 / (4 a_{n+1}) avoids the cancellation in (a - b) / 2
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), c * c / (2.0 * (a + b))
        power *= 2.0
        acc += power * c * c
    return math.pi / (2.0 * a) * (1.0 - acc)


def ellipse_length(k):
    """Perimeter of the ellipse with semi-axes ``k`` and ``|k - 2|``.

    Equals ``4 * int_0^{pi/2} sqrt((k-2)^2 + 4(k-1) sin^2 t) dt = 4 k E(m)`` with
    ``m = 1 - (k-2)^2/k^2 = 4(k-1)/k^2``.
    """
    if k < 1:
        raise ValueError(f"index k must be >= 1, got {k}")
    return 4.0 * k * elliptic_E(4.0 * (k - 1) / (k * k))


def ellipse_length_quadrature(k, cfg=None):
    """The same perimeter by direct adaptive quadrature (independent cross-check)."""
    if k < 1:
        raise ValueError(f"index k must be >= 1, got {k}")
    a2, c = float((k - 2) ** 2), 4.0 * (k - 1)
    res = integrate_1d(lambda t: np.sqrt(a2 + c * np.sin(t) ** 2), 0.0, 0.5 * np.pi, cfg)
    return QuadratureResult(4.0 * res.value, 4.0 * res.abs_error_estimate, res.evaluations)
