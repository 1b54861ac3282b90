"""Classical complex Schwarz problems: recover an analytic function from
the boundary values of its real part, on the unit disk and the upper
half-plane.

The disk solver works spectrally: the Fourier coefficients of the data
determine F(z) = c0 + 2*sum_{n>=1} c_n z^n directly, which is exact for
trigonometric-polynomial data, uniformly accurate up to the boundary, and
gives boundary traces of F' without any hypersingular quadrature.  The
half-plane solver evaluates the Schwarz kernel integral with the
real-line rule, using singularity subtraction around Re z so accuracy
does not degrade near the axis.

Gauge: the Schwarz problem determines F only up to an imaginary constant;
both solvers fix Im F = 0 at a normalization point (disk center, z = i
for the half-plane).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .analytic import UNIT_DISK, UPPER_HALF_PLANE, AnalyticFn
from .boundary import CIRCLE, REALLINE, BoundaryData, limit_at_infinity
from .errors import EvaluationOutsideDomain, TraceUnavailable
from .quadrature import (QuadratureSpec, REALLINE_TAN, circle_nodes,
                         realline_nodes)

#: Minimum clearance from the boundary for interior evaluation.
DELTA_MIN = 1e-6

#: Relative Fourier-tail threshold beyond which the boundary trace of F'
#: is considered unstable.
TRACE_TAIL_RTOL = 1e-6


@dataclass(frozen=True)
class SchwarzSolution:
    F: AnalyticFn
    normalization: str
    boundary_derivative: Optional[Callable] = None


def _disk_coefficients(h: BoundaryData, spec: QuadratureSpec):
    theta = circle_nodes(spec.nodes)
    samples = np.asarray(h(theta), dtype=float)
    c = np.fft.rfft(samples) / spec.nodes
    # Taylor coefficients of F: c0 real, 2*c_n for 0 < n < N/2, Nyquist once.
    coeffs = 2.0 * c
    coeffs[0] = np.real(c[0])
    coeffs[-1] = np.real(c[-1])
    return coeffs


def _polyval_ascending(coeffs, z):
    acc = np.zeros_like(np.asarray(z, dtype=complex))
    for c in coeffs[::-1]:
        acc = acc * z + c
    if np.ndim(z) == 0:
        return complex(acc)
    return acc


def schwarz_disk(h: BoundaryData, spec: QuadratureSpec) -> SchwarzSolution:
    """Solve Re F = h on the unit circle with Im F(0) = 0."""
    if h.domain != CIRCLE:
        raise ValueError("schwarz_disk needs circle data")
    coeffs = _disk_coefficients(h, spec)
    dcoeffs = coeffs[1:] * np.arange(1, len(coeffs))
    head = np.max(np.abs(coeffs)) or 1.0
    tail = np.max(np.abs(dcoeffs[3 * len(dcoeffs) // 4:]))
    trace_ok = tail <= TRACE_TAIL_RTOL * head * len(coeffs)

    def value(z):
        _require_in_disk(z)
        return _polyval_ascending(coeffs, z)

    def derivative(z):
        _require_in_disk(z)
        return _polyval_ascending(dcoeffs, z)

    def boundary_derivative(theta):
        if not trace_ok:
            raise TraceUnavailable(
                "Fourier tail of the data does not decay; the boundary "
                "trace of F' is unreliable")
        return _polyval_ascending(dcoeffs, np.exp(1j * np.asarray(theta)))

    F = AnalyticFn(value=value, derivative=derivative, domain_tag=UNIT_DISK)
    return SchwarzSolution(F=F, normalization="Im F(0) = 0",
                           boundary_derivative=boundary_derivative)


def _require_in_disk(z):
    if np.any(np.abs(z) >= 1.0 - DELTA_MIN):
        raise EvaluationOutsideDomain(
            f"evaluation requires |z| < 1 - {DELTA_MIN}")


def _require_in_halfplane(z):
    if np.any(np.imag(z) <= DELTA_MIN):
        raise EvaluationOutsideDomain(
            f"evaluation requires Im z > {DELTA_MIN}")


def schwarz_halfplane(h: BoundaryData, spec: QuadratureSpec) -> SchwarzSolution:
    """Solve Re F = h on the real axis with Im F(i) = 0 and
    F(z) -> h(inf) - (1/pi i) int h(t) t/(t**2+1) dt as |z| -> inf."""
    if h.domain != REALLINE:
        raise ValueError("schwarz_halfplane needs real-line data")
    limit_at_infinity(h)  # raises NoFiniteLimit early for bad data
    rl_spec = QuadratureSpec(nodes=spec.nodes, rule=REALLINE_TAN)
    t, w = realline_nodes(rl_spec.nodes)
    ht = np.asarray(h(t), dtype=float)

    def value(z):
        _require_in_halfplane(z)
        z = np.asarray(z, dtype=complex)
        x = np.real(z)
        hx = np.asarray(h(x), dtype=float)
        zc, xc = z[..., None], hx[..., None]
        kernel = (1.0 + t * zc) / ((t * t + 1.0) * (t - zc))
        out = hx + np.sum(w * (ht - xc) * kernel, axis=-1) / (np.pi * 1j)
        if z.ndim == 0:
            return complex(out)
        return out

    def derivative(z):
        _require_in_halfplane(z)
        z = np.asarray(z, dtype=complex)
        hx = np.asarray(h(np.real(z)), dtype=float)
        zc, xc = z[..., None], hx[..., None]
        out = np.sum(w * (ht - xc) / (t - zc) ** 2, axis=-1) / (np.pi * 1j)
        if z.ndim == 0:
            return complex(out)
        return out

    F = AnalyticFn(value=value, derivative=derivative,
                   domain_tag=UPPER_HALF_PLANE)
    return SchwarzSolution(F=F, normalization="Im F(i) = 0")


def conjugate_boundary_disk(h: BoundaryData, spec: QuadratureSpec) -> Callable:
    """Boundary values of Im F (the conjugate function of h, vanishing
    mean gauge) by Fourier conjugation of the trapezoid coefficients."""
    if h.domain != CIRCLE:
        raise ValueError("conjugate_boundary_disk needs circle data")
    coeffs = _disk_coefficients(h, spec)

    def conjugate(theta):
        out = np.imag(_polyval_ascending(coeffs, np.exp(1j * np.asarray(theta))))
        if np.ndim(theta) == 0:
            return float(out)
        return out

    return conjugate


def solve_F(u1: BoundaryData, u4: BoundaryData, domain: str,
            spec: QuadratureSpec) -> SchwarzSolution:
    """First stage of the pipeline: Re F = u1 - u4 on the shared boundary."""
    if u1.domain != u4.domain:
        raise ValueError("u1 and u4 must share a domain")
    if domain == CIRCLE:
        data = BoundaryData.from_callable(
            lambda s: np.asarray(u1(s)) - np.asarray(u4(s)), CIRCLE,
            description="u1 - u4")
        return schwarz_disk(data, spec)
    vinf = limit_at_infinity(u1) - limit_at_infinity(u4)
    data = BoundaryData.from_callable(
        lambda s: np.asarray(u1(s)) - np.asarray(u4(s)), REALLINE,
        value_at_infinity=vinf, description="u1 - u4")
    return schwarz_halfplane(data, spec)


def solve_F0(u4: BoundaryData, fprime_boundary: Optional[Callable],
             domain: str, spec: QuadratureSpec) -> SchwarzSolution:
    """Second stage: Re F0 = (u4 - Im t * Im F')/2 on the boundary.

    On the real axis Im t = 0, so the trace of F' is not needed and
    fprime_boundary may be None.
    """
    if domain == REALLINE:
        vinf = limit_at_infinity(u4) / 2.0
        data = BoundaryData.from_callable(
            lambda s: 0.5 * np.asarray(u4(s)), REALLINE,
            value_at_infinity=vinf, description="u4 / 2")
        return schwarz_halfplane(data, spec)
    if fprime_boundary is None:
        raise ValueError("disk data needs the boundary trace of F'")

    def h0(theta):
        im_fp = np.imag(fprime_boundary(theta))
        return 0.5 * (np.asarray(u4(theta)) - np.sin(theta) * im_fp)

    data = BoundaryData.from_callable(h0, CIRCLE,
                                      description="(u4 - sin*Im F')/2")
    return schwarz_disk(data, spec)
