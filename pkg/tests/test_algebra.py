"""Arithmetic in the biharmonic algebra: multiplication table, nilpotent
basis, inversion, the multiplicative functional f, and the norm."""

import time

import numpy as np
import pytest

from bimon.algebra import (E1, E2, IE2, RHO, ZERO, BiNumber, embed,
                           from_nilpotent, functional_f, render, shadow)
from bimon.errors import NonInvertible

from conftest import random_binumbers


def close(a: BiNumber, b: BiNumber, tol=1e-12):
    return (a - b).norm() <= tol


class TestMultiplicationTable:
    def test_e2_squared(self):
        assert E2 * E2 == BiNumber(1.0 + 0j, 2j)

    def test_rho_squared_vanishes(self):
        assert (RHO * RHO).norm() == 0.0

    def test_defining_relation(self):
        # e1**2 + e2**2 = rho and rho**2 = 0 while rho != 0.
        s = E1 * E1 + E2 * E2
        assert s == RHO
        assert s.norm() > 0
        assert (s * s).norm() <= 1e-14

    def test_unit(self):
        a = BiNumber(2.5 - 1j, 0.5 + 3j)
        assert close(E1 * a, a, 0)

    def test_scalar_coercion(self):
        a = BiNumber(1j, 2.0 + 0j)
        assert close(2 * a, BiNumber(2j, 4.0 + 0j), 0)
        assert close(a + 1, BiNumber(1 + 1j, 2.0 + 0j), 0)
        assert close(1 - a, BiNumber(1 - 1j, -2.0 + 0j), 0)
        assert close(a / 2, BiNumber(0.5j, 1.0 + 0j), 0)


class TestAdd:
    def test_componentwise(self):
        assert BiNumber(1, 0) + BiNumber(0, 1) == BiNumber(1, 1)

    def test_identity(self):
        a = BiNumber(3 - 2j, 1j)
        assert a + ZERO == a

    def test_additive_inverse(self):
        a = BiNumber(2, 2j)
        assert (a + (-a)).norm() == 0.0


class TestAlgebraAxioms:
    def test_random_triples(self, rng):
        start = time.monotonic()
        a = random_binumbers(rng, 1000)
        b = random_binumbers(rng, 1000)
        c = random_binumbers(rng, 1000)
        for x, y, z in zip(a, b, c):
            scale = max(1.0, x.norm() * y.norm() * z.norm())
            assert (x * y - y * x).norm() <= 1e-12 * scale
            assert ((x * y) * z - x * (y * z)).norm() <= 1e-12 * scale
            assert (x * (y + z) - (x * y + x * z)).norm() <= 1e-12 * scale
        assert time.monotonic() - start < 1.0

    def test_mul_in_nilpotent_coordinates(self, rng):
        # (xi1, xi2)*(eta1, eta2) = (xi1 eta1, xi1 eta2 + xi2 eta1).
        for x, y in zip(random_binumbers(rng, 200),
                        random_binumbers(rng, 200)):
            xi1, xi2 = x.to_nilpotent()
            eta1, eta2 = y.to_nilpotent()
            direct = x * y
            via = from_nilpotent(xi1 * eta1, xi1 * eta2 + xi2 * eta1)
            assert close(direct, via, 1e-13 * max(1.0, direct.norm()))


class TestNilpotentBasis:
    def test_rho_coordinates(self):
        assert RHO.to_nilpotent() == (0j, 1.0 + 0j)

    def test_unit_coordinates(self):
        assert E1.to_nilpotent() == (1.0 + 0j, 0j)

    def test_point_coordinates(self):
        x, y = 0.7, -1.3
        xi1, xi2 = embed(x, y).to_nilpotent()
        assert xi1 == pytest.approx(x + 1j * y)
        assert xi2 == pytest.approx(-0.5j * y)

    def test_round_trip_machine_precision(self, rng):
        for a in random_binumbers(rng, 100):
            back = from_nilpotent(*a.to_nilpotent())
            assert close(back, a, 1e-15 * max(1.0, a.norm()))


class TestInverse:
    def test_unit(self):
        assert close(E1.inv(), E1, 0)

    def test_rho_not_invertible(self):
        with pytest.raises(NonInvertible):
            RHO.inv()

    def test_e2_inverse(self):
        got = E2.inv()
        assert close(got, BiNumber(-2j, 1.0 + 0j), 1e-15)
        assert close(E2 * got, E1, 1e-15)

    def test_random_inverses(self, rng):
        for a in random_binumbers(rng, 1000):
            assert close(a * a.inv(), E1, 1e-12)

    def test_near_singular_line(self):
        # z1 + i z2 = 0 characterizes the non-invertible set.
        with pytest.raises(NonInvertible):
            BiNumber(-1j * 3.0, 3.0 + 0j).inv()


class TestFunctional:
    def test_basis_values(self):
        assert functional_f(RHO) == 0
        assert functional_f(E1) == 1
        assert functional_f(E2) == 1j

    def test_multiplicative_and_linear(self, rng):
        for a, b in zip(random_binumbers(rng, 1000),
                        random_binumbers(rng, 1000)):
            fa, fb = a.f(), b.f()
            assert abs((a * b).f() - fa * fb) <= 1e-12 * max(1.0, abs(fa * fb))
            assert abs((a + b).f() - (fa + fb)) <= 1e-12

    def test_shadow_of_point(self):
        assert shadow(embed(2.0, -0.5)) == 2.0 - 0.5j


class TestNorm:
    def test_unit(self):
        assert E1.norm() == 1.0

    def test_rho(self):
        assert RHO.norm() == pytest.approx(2.0 * np.sqrt(2.0))

    def test_zero(self):
        assert ZERO.norm() == 0.0
        assert BiNumber(1e-12, 0).norm() > 0

    def test_triangle_inequality(self, rng):
        for a, b in zip(random_binumbers(rng, 200),
                        random_binumbers(rng, 200)):
            assert (a + b).norm() <= a.norm() + b.norm() + 1e-12


class TestVectorization:
    def test_array_coefficients(self):
        z1 = np.array([1.0 + 0j, 2.0 + 0j])
        z2 = np.array([0j, 1j])
        a = BiNumber(z1, z2)
        prod = a * a
        for k in range(2):
            single = BiNumber(z1[k], z2[k])
            expect = single * single
            assert prod.z1[k] == expect.z1
            assert prod.z2[k] == expect.z2

    def test_array_inverse(self):
        a = BiNumber(np.array([1.0 + 0j, 2.0 + 1j]), np.array([0.5j, 0.5 + 0j]))
        prod = a * a.inv()
        assert np.allclose(prod.z1, 1.0)
        assert np.allclose(prod.z2, 0.0)


def test_render_format():
    assert render(BiNumber(1.0 + 2j, -0.5 - 1j)) == "1+2i e1 + -0.5-1i e2"
