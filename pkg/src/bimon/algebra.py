"""Arithmetic in the two-dimensional commutative biharmonic algebra.

The algebra has a basis {e1, e2} over the complex numbers with e1 the unit
and e2**2 = e1 + 2i*e2, so that (e1**2 + e2**2)**2 = 0 while
e1**2 + e2**2 != 0.  The nilpotent element rho = 2*e1 + 2i*e2 satisfies
rho**2 = 0 and {1, rho} is an alternative basis in which multiplication
and inversion take closed forms.

Coefficients may be Python complex scalars or equally-shaped numpy complex
arrays; all operations are componentwise and vectorize transparently.
"""

from __future__ import annotations

import numpy as np

from .errors import NonInvertible

INVERTIBILITY_RTOL = 1e-13


class BiNumber:
    """Element z1*e1 + z2*e2 with complex (or complex-array) coefficients."""

    __slots__ = ("z1", "z2")

    def __init__(self, z1=0j, z2=0j):
        self.z1 = z1
        self.z2 = z2

    def __repr__(self):
        return f"BiNumber({self.z1!r}, {self.z2!r})"

    def __eq__(self, other):
        if not isinstance(other, BiNumber):
            return NotImplemented
        return np.all(self.z1 == other.z1) and np.all(self.z2 == other.z2)

    def __hash__(self):
        return hash((complex(self.z1), complex(self.z2)))

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return BiNumber(self.z1 + other.z1, self.z2 + other.z2)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return BiNumber(self.z1 - other.z1, self.z2 - other.z2)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return BiNumber(-self.z1, -self.z2)

    def __mul__(self, other):
        if isinstance(other, BiNumber):
            a1, a2, b1, b2 = self.z1, self.z2, other.z1, other.z2
            # e2*e2 = e1 + 2i*e2
            return BiNumber(a1 * b1 + a2 * b2,
                            a1 * b2 + a2 * b1 + 2j * a2 * b2)
        if isinstance(other, (int, float, complex, np.number, np.ndarray)):
            return BiNumber(self.z1 * other, self.z2 * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, BiNumber):
            return self * other.inv()
        if isinstance(other, (int, float, complex, np.number, np.ndarray)):
            return BiNumber(self.z1 / other, self.z2 / other)
        return NotImplemented

    def norm(self):
        """Euclidean norm sqrt(|z1|**2 + |z2|**2)."""
        return np.sqrt(np.abs(self.z1) ** 2 + np.abs(self.z2) ** 2)

    def to_nilpotent(self):
        """Coordinates (xi1, xi2) in the {1, rho} basis."""
        return self.z1 + 1j * self.z2, -0.5j * self.z2

    def inv(self):
        """Multiplicative inverse, computed in the nilpotent basis as
        1/xi1 - (xi2/xi1**2)*rho.  Raises NonInvertible on (or too near)
        the singular line xi1 = 0."""
        xi1, xi2 = self.to_nilpotent()
        tol = INVERTIBILITY_RTOL * np.maximum(1.0, self.norm())
        if np.any(np.abs(xi1) <= tol):
            raise NonInvertible(f"element with |xi1| <= {INVERTIBILITY_RTOL} * max(1, norm)")
        return from_nilpotent(1.0 / xi1, -xi2 / (xi1 * xi1))

    def f(self):
        """The multiplicative functional: f(e1) = 1, f(e2) = i, f(rho) = 0."""
        return self.z1 + 1j * self.z2

    def conj_components(self):
        return BiNumber(np.conj(self.z1), np.conj(self.z2))


def _coerce(value):
    if isinstance(value, BiNumber):
        return value
    if isinstance(value, (int, float, complex, np.number, np.ndarray)):
        return BiNumber(value, 0.0 * np.real(value) * 1j)
    return None


def from_nilpotent(xi1, xi2) -> BiNumber:
    """Inverse of BiNumber.to_nilpotent: xi1*1 + xi2*rho in the {e1, e2} basis."""
    return BiNumber(xi1 + 2.0 * xi2, 2j * xi2)


def to_nilpotent(a: BiNumber):
    return a.to_nilpotent()


def add(a: BiNumber, b: BiNumber) -> BiNumber:
    return a + b


def mul(a: BiNumber, b: BiNumber) -> BiNumber:
    return a * b


def inv(a: BiNumber) -> BiNumber:
    return a.inv()


def norm(a: BiNumber):
    return a.norm()


def functional_f(a: BiNumber):
    return a.f()


E1 = BiNumber(1.0 + 0j, 0j)
E2 = BiNumber(0j, 1.0 + 0j)
IE1 = BiNumber(1j, 0j)
IE2 = BiNumber(0j, 1j)
RHO = BiNumber(2.0 + 0j, 2j)
ZERO = BiNumber(0j, 0j)


def embed(x, y) -> BiNumber:
    """The point zeta = x*e1 + y*e2 of the biharmonic plane."""
    return BiNumber(x + 0j, y + 0j)


def shadow(zeta: BiNumber):
    """Complex shadow z = x + i*y of a point of the biharmonic plane."""
    return zeta.f()


def _fmt_complex(c: complex) -> str:
    c = complex(c)
    re, im = c.real, c.imag
    sign = "+" if im >= 0 else "-"
    return f"{re:.12g}{sign}{abs(im):.12g}i"


def render(a: BiNumber) -> str:
    """Textual form 'z1 e1 + z2 e2' with complex parts in a+bi notation."""
    return f"{_fmt_complex(a.z1)} e1 + {_fmt_complex(a.z2)} e2"
