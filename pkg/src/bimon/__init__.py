"""bimon: monogenic functions over the biharmonic algebra and solvers for
the (1-4) Schwartz-type boundary value problem on the half-plane and the
unit disk."""

from .algebra import (E1, E2, IE1, IE2, RHO, BiNumber, embed, from_nilpotent,
                      functional_f, render, shadow)
from .analytic import (AnalyticFn, AnalyticPair, fd_derivative_check,
                       make_constant, make_polynomial, make_rational)
from .boundary import BoundaryData, limit_at_infinity, trace_from_monogenic
from .bvp import (DISK, HALFPLANE, ComparisonReport, Problem14,
                  ResidualReport, Solution, boundary_limit_disk,
                  boundary_limit_halfplane, compare_mod_homogeneous,
                  disk_constants, disk_grid, halfplane_grid,
                  halfplane_limit_at_infinity, homogeneous,
                  schwartz_integral_disk, schwartz_integral_halfplane, solve,
                  solve_disk, solve_halfplane, solve_pipeline,
                  verify_solution)
from .errors import (BimonError, EvaluationError, EvaluationOutsideDomain,
                     NoFiniteLimit, NonFiniteSample, NonInvertible,
                     ParseError, PoleInDomain, TraceUnavailable,
                     UnknownIdentifier, WrongVariable)
from .monogenic import (BiPoint, ComponentQuad, MonogenicFn,
                        check_biharmonic, check_cr, direction_discrepancy,
                        from_pair, hyper_derivative)
from .quadrature import (QuadratureSpec, integrate_circle, integrate_realline,
                         pv_subtracted)
from .schwarz import (SchwarzSolution, conjugate_boundary_disk, schwarz_disk,
                      schwarz_halfplane, solve_F, solve_F0)

__version__ = "0.1.0"
