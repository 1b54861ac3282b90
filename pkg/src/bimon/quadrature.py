"""Deterministic quadrature rules used by every solver in the package.

Two rules cover all integrals that occur:

* periodic trapezoid on the circle, spectrally accurate for smooth
  2*pi-periodic integrands and exact for trigonometric polynomials of
  degree < N/2;
* real-line integration through the substitution t = tan(s) followed by
  Gauss-Legendre on s in (-pi/2, pi/2), which absorbs the 1/(t**2+1)
  factor carried by all half-plane kernels.

Principal values at boundary points are handled by singularity
subtraction (never by node exclusion): the half-plane Schwarz kernel has
vanishing principal value by the partial-fraction identity
(1+t*xi)/((t**2+1)(t-xi)) = 1/(t-xi) - t/(t**2+1), so
PV int u*K = int (u(t)-u(xi))*K(t,xi) dt with a removable singularity.

Results are deterministic for a fixed node count: node order is fixed and
each integral is summed by numpy's (fixed-shape, reproducible) reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import BiNumber
from .errors import NonFiniteSample

CIRCLE_TRAPEZOID = "circle-trapezoid"
REALLINE_TAN = "realline-tan"

#: Node count for production solves; spectral accuracy makes it cheap.
DEFAULT_NODES = 2048


@dataclass(frozen=True)
class QuadratureSpec:
    nodes: int = DEFAULT_NODES
    rule: str = CIRCLE_TRAPEZOID
    pv_mode: str = "none"

    def __post_init__(self):
        if self.nodes < 16:
            raise ValueError("need at least 16 nodes")
        if self.rule not in (CIRCLE_TRAPEZOID, REALLINE_TAN):
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.rule == CIRCLE_TRAPEZOID and self.nodes % 2:
            raise ValueError("circle rules need an even node count")
        if self.pv_mode not in ("none", "subtract-singularity"):
            raise ValueError(f"unknown pv mode {self.pv_mode!r}")


@lru_cache(maxsize=32)
def circle_nodes(n: int):
    return 2.0 * np.pi * np.arange(n) / n


@lru_cache(maxsize=32)
def realline_nodes(n: int):
    """Tan-substitution nodes t_k and weights absorbing the full Jacobian,
    so that int_-inf^inf g(t) dt ~= sum_k w_k * g(t_k)."""
    x, w = np.polynomial.legendre.leggauss(n)
    s = 0.5 * np.pi * x
    t = np.tan(s)
    weights = 0.5 * np.pi * w * (1.0 + t * t)
    return t, weights


def _weighted_sum(values, weights):
    if isinstance(values, BiNumber):
        z1 = np.asarray(values.z1) * weights
        z2 = np.asarray(values.z2) * weights
        if not (np.all(np.isfinite(z1)) and np.all(np.isfinite(z2))):
            raise NonFiniteSample("integrand returned NaN/Inf at a node")
        return BiNumber(complex(np.sum(z1)), complex(np.sum(z2)))
    values = np.asarray(values) * weights
    if not np.all(np.isfinite(values)):
        raise NonFiniteSample("integrand returned NaN/Inf at a node")
    total = np.sum(values)
    return complex(total) if np.iscomplexobj(values) else float(total)


def _sample(g, nodes):
    # Integrands written in this package vectorize over the node array;
    # plain scalar callables are looped as a fallback.
    try:
        vals = g(nodes)
    except (TypeError, ValueError):
        vals = None
    if isinstance(vals, BiNumber):
        if np.shape(vals.z1) == nodes.shape:
            return vals
    elif vals is not None and np.shape(vals) == nodes.shape:
        return np.asarray(vals)
    samples = [g(x) for x in nodes]
    if isinstance(samples[0], BiNumber):
        return BiNumber(np.array([v.z1 for v in samples]),
                        np.array([v.z2 for v in samples]))
    return np.asarray(samples)


def integrate_circle(g, spec: QuadratureSpec):
    """(2*pi/N) * sum_k g(theta_k) for theta_k = 2*pi*k/N.

    g maps an angle (or angle array) to complex or BiNumber values.
    """
    if spec.rule != CIRCLE_TRAPEZOID:
        raise ValueError("integrate_circle needs a circle-trapezoid spec")
    theta = circle_nodes(spec.nodes)
    w = np.full(spec.nodes, 2.0 * np.pi / spec.nodes)
    return _weighted_sum(_sample(g, theta), w)


def integrate_realline(g, spec: QuadratureSpec):
    """int_-inf^inf g(t) dt by the tangent substitution.

    g(t)*(t**2+1) must stay bounded with finite limits at +-inf; all
    half-plane kernels in this package carry the damping factor already.
    """
    if spec.rule != REALLINE_TAN:
        raise ValueError("integrate_realline needs a realline-tan spec")
    t, w = realline_nodes(spec.nodes)
    return _weighted_sum(_sample(g, t), w)


def halfplane_kernel(t, z):
    """The half-plane Schwarz kernel (1+t*z)/((t**2+1)(t-z)) for complex z."""
    return (1.0 + t * z) / ((t * t + 1.0) * (t - z))


def pv_subtracted(u, xi: float, spec: QuadratureSpec, fd_step=1e-6):
    """PV int u(t) * K(t, xi) dt for the half-plane Schwarz kernel at a
    boundary point xi, by singularity subtraction.

    The kernel's own principal value vanishes (partial fractions), so the
    result is int (u(t)-u(xi)) * K(t, xi) dt with the removable point
    filled by its limit u'(xi).
    """
    t, w = realline_nodes(spec.nodes)
    uxi = float(u(xi))
    d = t - xi
    near = np.abs(d) < 1e-9
    safe_d = np.where(near, 1.0, d)
    vals = (np.asarray(u(t), dtype=float) - uxi) / safe_d \
        * (1.0 + t * xi) / (t * t + 1.0)
    if np.any(near):
        slope = (float(u(xi + fd_step)) - float(u(xi - fd_step))) / (2 * fd_step)
        vals = np.where(near, slope * (1.0 + t * xi) / (t * t + 1.0), vals)
    return _weighted_sum(vals, w)
