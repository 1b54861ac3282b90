"""Shared fixtures: the two manufactured problems and their solved fields.

Solves are cached per session; most test modules only read them.
"""

import numpy as np
import pytest

from bimon.analytic import (UNIT_DISK, UPPER_HALF_PLANE, AnalyticPair,
                            make_polynomial, make_rational)
from bimon.boundary import CIRCLE, REALLINE, trace_from_monogenic
from bimon.bvp import DISK, HALFPLANE, Problem14, solve, verify_solution
from bimon.monogenic import from_pair
from bimon.quadrature import CIRCLE_TRAPEZOID, REALLINE_TAN, QuadratureSpec


@pytest.fixture(scope="session")
def disk_reference():
    """Manufactured monogenic function from F = z**2, F0 = 0."""
    pair = AnalyticPair(make_polynomial([0, 0, 1], UNIT_DISK),
                        make_polynomial([0], UNIT_DISK))
    return from_pair(pair)


@pytest.fixture(scope="session")
def halfplane_reference():
    """Manufactured monogenic function from F = F0 = 1/(z+i)."""
    rat = make_rational([1], [1j, 1], UPPER_HALF_PLANE)
    return from_pair(AnalyticPair(rat, rat))


@pytest.fixture(scope="session")
def disk_problem(disk_reference):
    u1, u4 = trace_from_monogenic(disk_reference, CIRCLE)
    return Problem14(domain=DISK, u1=u1, u4=u4)


@pytest.fixture(scope="session")
def halfplane_problem(halfplane_reference):
    u1, u4 = trace_from_monogenic(halfplane_reference, REALLINE)
    return Problem14(domain=HALFPLANE, u1=u1, u4=u4)


@pytest.fixture(scope="session")
def disk_spec():
    return QuadratureSpec(nodes=2048, rule=CIRCLE_TRAPEZOID)


@pytest.fixture(scope="session")
def halfplane_spec():
    return QuadratureSpec(nodes=2048, rule=REALLINE_TAN)


@pytest.fixture(scope="session")
def solutions(disk_problem, halfplane_problem, disk_spec, halfplane_spec):
    """All four produced solutions keyed by (domain, method)."""
    out = {}
    for domain, problem, spec in ((DISK, disk_problem, disk_spec),
                                  (HALFPLANE, halfplane_problem,
                                   halfplane_spec)):
        for method in ("explicit", "pipeline"):
            out[(domain, method)] = solve(problem, spec, method=method)
    return out


@pytest.fixture(scope="session")
def reports(solutions, disk_problem, halfplane_problem):
    problems = {DISK: disk_problem, HALFPLANE: halfplane_problem}
    return {key: verify_solution(problems[key[0]], sol)
            for key, sol in solutions.items()}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_binumbers(rng, n):
    from bimon.algebra import BiNumber
    parts = rng.standard_normal((4, n))
    return [BiNumber(complex(parts[0, k], parts[1, k]),
                     complex(parts[2, k], parts[3, k])) for k in range(n)]
