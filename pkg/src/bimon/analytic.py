"""Pointwise evaluators for complex analytic functions with first derivatives.

Evaluators are plain value/derivative callable pairs: solvers elsewhere in
the package produce quadrature-backed functions that only support pointwise
evaluation, so nothing here assumes a closed form.  Callables are expected
to accept complex scalars and numpy complex arrays alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import PoleInDomain

UNIT_DISK = "unit-disk"
UPPER_HALF_PLANE = "upper-half-plane"
ENTIRE = "entire"

_DOMAIN_TAGS = (UNIT_DISK, UPPER_HALF_PLANE, ENTIRE)


@dataclass(frozen=True)
class AnalyticFn:
    value: Callable
    derivative: Callable
    domain_tag: str = ENTIRE

    def __post_init__(self):
        if self.domain_tag not in _DOMAIN_TAGS:
            raise ValueError(f"unknown domain tag {self.domain_tag!r}")

    def __call__(self, z):
        return self.value(z)


@dataclass(frozen=True)
class AnalyticPair:
    F: AnalyticFn
    F0: AnalyticFn

    def __post_init__(self):
        if self.F.domain_tag != self.F0.domain_tag:
            raise ValueError("F and F0 must share a domain tag")

    @property
    def domain_tag(self):
        return self.F.domain_tag


def _horner(coeffs, z):
    acc = np.zeros_like(np.asarray(z, dtype=complex))
    for c in reversed(coeffs):
        acc = acc * z + c
    if np.ndim(z) == 0:
        return complex(acc)
    return acc


def _poly_derivative_coeffs(coeffs):
    return [k * c for k, c in enumerate(coeffs)][1:] or [0j]


def make_polynomial(coeffs, domain_tag=ENTIRE) -> AnalyticFn:
    """Polynomial sum_k coeffs[k] * z**k, evaluated by Horner's scheme."""
    if not len(coeffs):
        raise ValueError("coefficient list must be non-empty")
    coeffs = [complex(c) for c in coeffs]
    dcoeffs = _poly_derivative_coeffs(coeffs)
    return AnalyticFn(value=lambda z: _horner(coeffs, z),
                      derivative=lambda z: _horner(dcoeffs, z),
                      domain_tag=domain_tag)


def make_rational(num, den, domain_tag=ENTIRE) -> AnalyticFn:
    """Quotient of two polynomials; the caller asserts the denominator has
    no zeros in the tagged domain."""
    num = [complex(c) for c in num]
    den = [complex(c) for c in den]
    dnum = _poly_derivative_coeffs(num)
    dden = _poly_derivative_coeffs(den)

    def _den(z):
        d = _horner(den, z)
        if np.any(np.abs(d) < 1e-300):
            raise PoleInDomain("denominator vanished during evaluation")
        return d

    def value(z):
        return _horner(num, z) / _den(z)

    def derivative(z):
        d = _den(z)
        return (_horner(dnum, z) * d - _horner(num, z) * _horner(dden, z)) / (d * d)

    return AnalyticFn(value=value, derivative=derivative, domain_tag=domain_tag)


def make_constant(c, domain_tag=ENTIRE) -> AnalyticFn:
    return make_polynomial([c], domain_tag=domain_tag)


def fd_derivative_check(F: AnalyticFn, points, h=1e-5):
    """Max over points of |central finite difference of F.value - F.derivative|."""
    worst = 0.0
    for z in points:
        fd = (F.value(z + h) - F.value(z - h)) / (2 * h)
        worst = max(worst, abs(fd - F.derivative(z)))
    return worst
