"""Monogenic functions on the biharmonic plane.

A monogenic function is built from a pair of complex analytic functions
(F, F0) through

    Phi(zeta) = (F(z) - i*y*F'(z) + 2*F0(z)) e1 + i*(2*F0(z) - i*y*F'(z)) e2

with z = x + i*y the complex shadow of zeta = x*e1 + y*e2.  The four real
components U1..U4 are the real/imaginary parts of the two coefficients.
Numerical verifiers for the Cauchy-Riemann analog and for biharmonicity
of the components live here as well; they accept any field evaluator with
``value``/``components`` methods, not just pair-backed ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import E2, BiNumber
from .analytic import AnalyticPair


class BiPoint(NamedTuple):
    x: float
    y: float

    @property
    def shadow(self):
        return self.x + 1j * self.y

    def embed(self) -> BiNumber:
        return BiNumber(self.x + 0j, self.y + 0j)


class ComponentQuad(NamedTuple):
    U1: float
    U2: float
    U3: float
    U4: float


@dataclass(frozen=True)
class MonogenicFn:
    pair: AnalyticPair

    @property
    def domain_tag(self):
        return self.pair.domain_tag

    def value(self, x, y) -> BiNumber:
        z = np.asarray(x) + 1j * np.asarray(y)
        if np.ndim(z) == 0:
            z = complex(z)
        F = self.pair.F.value(z)
        Fp = self.pair.F.derivative(z)
        F0 = self.pair.F0.value(z)
        iyFp = 1j * np.asarray(y) * Fp
        if np.ndim(x) == 0:
            iyFp = complex(iyFp)
        return BiNumber(F - iyFp + 2.0 * F0, 1j * (2.0 * F0 - iyFp))

    def components(self, x, y):
        v = self.value(x, y)
        return ComponentQuad(np.real(v.z1), np.imag(v.z1),
                             np.real(v.z2), np.imag(v.z2))


def from_pair(pair: AnalyticPair) -> MonogenicFn:
    return MonogenicFn(pair)


def components(phi, zeta: BiPoint) -> ComponentQuad:
    return ComponentQuad(*phi.components(zeta.x, zeta.y))


def hyper_derivative(phi, zeta: BiPoint, h: float = 1e-6) -> BiNumber:
    """Central-difference derivative along the e1 direction.

    For a monogenic Phi the same limit is obtained along e2 after
    right-multiplying by e2**-1; see direction_discrepancy for the
    diagnostic, which is deliberately not averaged in.
    """
    x, y = zeta
    return (phi.value(x + h, y) - phi.value(x - h, y)) * (0.5 / h)


def direction_discrepancy(phi, zeta: BiPoint, h: float = 1e-6) -> float:
    """Norm of the difference between the e1- and e2-direction derivative
    estimates; large values flag a non-monogenic field."""
    x, y = zeta
    along_e1 = hyper_derivative(phi, zeta, h)
    along_e2 = (phi.value(x, y + h) - phi.value(x, y - h)) * (0.5 / h) * E2.inv()
    return float((along_e1 - along_e2).norm())


def check_cr(phi, zeta: BiPoint, h: float = 1e-4) -> float:
    """Residual norm of the Cauchy-Riemann analog
    dPhi/dy * e1 - dPhi/dx * e2, with central differences of step h."""
    x, y = zeta
    dy = (phi.value(x, y + h) - phi.value(x, y - h)) * (0.5 / h)
    dx = (phi.value(x + h, y) - phi.value(x - h, y)) * (0.5 / h)
    return float((dy - dx * E2).norm())


# Delta^2 on the 13-point stencil: offsets and weights, scaled by h**-4.
_STENCIL = (
    ((0, 0), 20.0),
    ((1, 0), -8.0), ((-1, 0), -8.0), ((0, 1), -8.0), ((0, -1), -8.0),
    ((1, 1), 2.0), ((1, -1), 2.0), ((-1, 1), 2.0), ((-1, -1), 2.0),
    ((2, 0), 1.0), ((-2, 0), 1.0), ((0, 2), 1.0), ((0, -2), 1.0),
)


def biharmonic_stencil(phi, zeta: BiPoint, h: float):
    """Signed 13-point estimates of Delta^2 U_l at zeta, step h, as a
    length-4 array.  The leading error is O(h**2 * d^6 U), so two steps can
    be Richardson-combined when the components have large derivatives."""
    x, y = zeta
    acc = np.zeros(4)
    for (ix, iy), w in _STENCIL:
        acc = acc + w * np.asarray(phi.components(x + ix * h, y + iy * h),
                                   dtype=float)
    return acc / h ** 4


def check_biharmonic(phi, zeta: BiPoint, h: float = 0.05):
    """13-point finite-difference residuals of Delta^2 U_l at zeta for the
    four components, step h.  Exact (up to roundoff) for polynomial
    components of degree <= 3 in each variable."""
    return ComponentQuad(*np.abs(biharmonic_stencil(phi, zeta, h)))
