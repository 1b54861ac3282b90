"""Config-driven command line front end.

Subcommands::

    bimon solve <config.toml>     run a solver, write the field grid and a
                                  JSON residual report
    bimon verify [<config.toml>]  run the built-in manufactured-solution
                                  suite and print a pass/fail table
    bimon plotdata <config.toml>  write one grid file per component

Exit codes: 0 success, 1 failed verification threshold, 2 config or parse
error, 3 numeric failure (no finite limit at infinity, unstable trace,
non-finite integrand sample), 4 I/O failure.

The config is a single TOML file; outputs are deterministic for a fixed
config (grid rows in declared order, 17-significant-digit decimals that
round-trip binary doubles).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import bvp
from .analytic import make_polynomial, make_rational
from .boundary import CIRCLE, REALLINE, BoundaryData
from .errors import (BimonError, EvaluationError, NoFiniteLimit,
                     NonFiniteSample, ParseError, TraceUnavailable)
from .monogenic import from_pair
from .analytic import AnalyticPair
from .quadrature import CIRCLE_TRAPEZOID, REALLINE_TAN, QuadratureSpec

_DOMAINS = {"disk": bvp.DISK, "halfplane": bvp.HALFPLANE}


class ConfigError(BimonError):
    pass


def _load_config(path):
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"bad TOML: {exc}") from exc
    return RunConfig.from_dict(raw, base=Path(path).parent)


class RunConfig:
    def __init__(self, *, domain, method, nodes, a1, a2, u1, u4, grid,
                 output_path, output_format, verify, threads):
        self.domain = domain
        self.method = method
        self.nodes = nodes
        self.a1 = a1
        self.a2 = a2
        self.u1 = u1
        self.u4 = u4
        self.grid = grid
        self.output_path = output_path
        self.output_format = output_format
        self.verify = verify
        self.threads = threads

    @classmethod
    def from_dict(cls, raw, base=Path(".")):
        known = {"domain", "method", "quadrature_nodes", "a1", "a2",
                 "verify", "threads", "boundary", "grid", "output"}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        domain_key = raw.get("domain")
        if domain_key not in _DOMAINS:
            raise ConfigError("domain must be 'disk' or 'halfplane'")
        domain = _DOMAINS[domain_key]
        method = raw.get("method", "explicit")
        if method not in ("explicit", "pipeline", "both"):
            raise ConfigError("method must be explicit, pipeline, or both")
        nodes = int(raw.get("quadrature_nodes", 2048))
        boundary = raw.get("boundary")
        if not isinstance(boundary, dict):
            raise ConfigError("missing [boundary] table")
        u1 = cls._boundary_datum(boundary, "u1", domain, base)
        u4 = cls._boundary_datum(boundary, "u4", domain, base)
        grid = cls._grid(raw.get("grid", {}), domain)
        out = raw.get("output", {})
        fmt = out.get("format", "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError("output format must be csv or json")
        return cls(domain=domain, method=method, nodes=nodes,
                   a1=float(raw.get("a1", 0.0)), a2=float(raw.get("a2", 0.0)),
                   u1=u1, u4=u4, grid=grid,
                   output_path=Path(out.get("path", "solution." + fmt)),
                   output_format=fmt,
                   verify=bool(raw.get("verify", True)),
                   threads=int(raw.get("threads", 1)))

    @staticmethod
    def _boundary_datum(table, name, domain, base):
        bdom = CIRCLE if domain == bvp.DISK else REALLINE
        expr = table.get(name)
        path = table.get(f"{name}_file")
        if (expr is None) == (path is None):
            raise ConfigError(f"give exactly one of {name} or {name}_file")
        try:
            if expr is not None:
                return BoundaryData.from_expression(str(expr), bdom)
            vinf = table.get(f"{name}_infinity")
            return BoundaryData.from_csv(
                base / path, bdom,
                value_at_infinity=None if vinf is None else float(vinf))
        except (ParseError, EvaluationError, ValueError, OSError) as exc:
            raise ConfigError(f"bad boundary datum {name}: {exc}") from exc

    @staticmethod
    def _grid(table, domain):
        if domain == bvp.DISK:
            radii = table.get("radii", [0.1 * k for k in range(1, 10)])
            nangles = int(table.get("nangles", 64))
            return {"kind": "polar", "radii": [float(r) for r in radii],
                    "nangles": nangles}
        x = table.get("x", [-5.0, 5.0])
        y = table.get("y", [0.1, 5.0])
        return {"kind": "cartesian",
                "x": [float(x[0]), float(x[1])], "nx": int(table.get("nx", 41)),
                "y": [float(y[0]), float(y[1])], "ny": int(table.get("ny", 25))}

    def grid_points(self):
        if self.grid["kind"] == "polar":
            return bvp.disk_grid(self.grid["radii"], self.grid["nangles"])
        return bvp.halfplane_grid(tuple(self.grid["x"]), self.grid["nx"],
                                  tuple(self.grid["y"]), self.grid["ny"])

    def problem(self):
        return bvp.Problem14(domain=self.domain, u1=self.u1, u4=self.u4,
                             a1=self.a1, a2=self.a2)

    def quadrature(self):
        rule = CIRCLE_TRAPEZOID if self.domain == bvp.DISK else REALLINE_TAN
        return QuadratureSpec(nodes=self.nodes, rule=rule)


def _evaluate_grid(solution, xs, ys, threads):
    """Component grid in declared order; chunked across a worker pool but
    assembled by index, so results do not depend on the thread count."""
    n = len(xs)
    chunk = max(1, -(-n // max(1, threads * 4)))
    spans = [(i, min(i + chunk, n)) for i in range(0, n, chunk)]

    def run(span):
        i, j = span
        c = solution.components(xs[i:j], ys[i:j])
        return np.stack([np.asarray(v, dtype=float) for v in c])

    if threads <= 1:
        parts = [run(s) for s in spans]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, spans))
    return np.concatenate(parts, axis=1)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _write_field(path, xs, ys, comps, fmt, columns=("U1", "U2", "U3", "U4")):
    try:
        if fmt == "csv":
            with open(path, "w", newline="") as fh:
                fh.write("x,y," + ",".join(columns) + "\n")
                for k in range(len(xs)):
                    row = [_fmt(xs[k]), _fmt(ys[k])]
                    row += [_fmt(comps[j][k]) for j in range(len(columns))]
                    fh.write(",".join(row) + "\n")
        else:
            payload = {"columns": ["x", "y", *columns],
                       "rows": [[_fmt(xs[k]), _fmt(ys[k]),
                                 *[_fmt(comps[j][k]) for j in range(len(columns))]]
                                for k in range(len(xs))]}
            with open(path, "w") as fh:
                json.dump(payload, fh, indent=1)
                fh.write("\n")
    except OSError as exc:
        raise IOFailure(str(exc)) from exc


class IOFailure(BimonError):
    pass


def _report_payload(cfg, solution, report):
    constants = {"a1": cfg.a1, "a2": cfg.a2,
                 "b1": solution.constants.get("b1", 0.0),
                 "b2": solution.constants.get("b2", 0.0),
                 "b": solution.constants.get("b", 0.0)}
    payload = {"constants": constants}
    if report is not None:
        payload.update({k: report.as_dict()[k]
                        for k in ("boundary_sup_U1", "boundary_sup_U4",
                                  "cr_max", "biharmonic_max", "grid")})
    return payload


def run_solve(cfg: RunConfig) -> int:
    problem = cfg.problem()
    spec = cfg.quadrature()
    xs, ys = cfg.grid_points()
    methods = ["explicit", "pipeline"] if cfg.method == "both" else [cfg.method]
    solutions = {m: bvp.solve(problem, spec, method=m) for m in methods}
    primary = solutions[methods[0]]
    comps = _evaluate_grid(primary, xs, ys, cfg.threads)
    _write_field(cfg.output_path, xs, ys, comps, cfg.output_format)
    report = None
    if cfg.verify:
        report = bvp.verify_solution(problem, primary)
    payload = _report_payload(cfg, primary, report)
    if cfg.method == "both":
        cmp = bvp.compare_mod_homogeneous(solutions["explicit"],
                                          solutions["pipeline"], (xs, ys))
        payload["comparison"] = cmp.as_dict()
        with open(cfg.output_path.with_suffix(".compare.json"), "w") as fh:
            json.dump(cmp.as_dict(), fh, indent=1, sort_keys=True)
            fh.write("\n")
    with open(cfg.output_path.with_suffix(".report.json"), "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote {cfg.output_path}")
    return 0


def emit_plotdata(cfg: RunConfig) -> int:
    problem = cfg.problem()
    spec = cfg.quadrature()
    xs, ys = cfg.grid_points()
    method = "pipeline" if cfg.method == "pipeline" else "explicit"
    solution = bvp.solve(problem, spec, method=method)
    comps = _evaluate_grid(solution, xs, ys, cfg.threads)
    stem = cfg.output_path
    for j, name in enumerate(("U1", "U2", "U3", "U4")):
        path = stem.with_name(f"{stem.stem}_{name}{stem.suffix or '.csv'}")
        _write_field(path, xs, ys, comps[j:j + 1], "csv", columns=(name,))
        print(f"wrote {path}")
    return 0


# --- built-in verification fixtures ----------------------------------------


def _fixture_disk():
    """Manufactured solution from F = z**2, F0 = 0."""
    from .analytic import UNIT_DISK
    phi = from_pair(AnalyticPair(make_polynomial([0, 0, 1], UNIT_DISK),
                                 make_polynomial([0], UNIT_DISK)))
    from .boundary import trace_from_monogenic
    u1, u4 = trace_from_monogenic(phi, CIRCLE)
    return phi, bvp.Problem14(domain=bvp.DISK, u1=u1, u4=u4)


def _fixture_halfplane():
    """Manufactured solution from F = F0 = 1/(z+i)."""
    from .analytic import UPPER_HALF_PLANE
    rat = make_rational([1], [1j, 1], UPPER_HALF_PLANE)
    phi = from_pair(AnalyticPair(rat, rat))
    from .boundary import trace_from_monogenic
    u1, u4 = trace_from_monogenic(phi, REALLINE)
    return phi, bvp.Problem14(domain=bvp.HALFPLANE, u1=u1, u4=u4)


def run_verify(cfg=None) -> int:
    nodes = cfg.nodes if cfg is not None else 2048
    methods = ("explicit", "pipeline")
    if cfg is not None and cfg.method in ("explicit", "pipeline"):
        methods = (cfg.method,)
    rows = []

    def check(name, value, threshold):
        rows.append((name, value, threshold, value <= threshold))

    for domain, fixture, rule in ((bvp.DISK, _fixture_disk, CIRCLE_TRAPEZOID),
                                  (bvp.HALFPLANE, _fixture_halfplane,
                                   REALLINE_TAN)):
        spec = QuadratureSpec(nodes=nodes, rule=rule)
        phi_ref, problem = fixture()
        xs, ys = (bvp.disk_grid() if domain == bvp.DISK
                  else bvp.halfplane_grid())
        ref = np.asarray(phi_ref.components(xs, ys), dtype=float)
        sols = {}
        for method in methods:
            sol = bvp.solve(problem, spec, method=method)
            sols[method] = sol
            got = np.asarray(sol.components(xs, ys), dtype=float)
            d = got - ref
            tag = f"{domain}/{method}"
            check(f"{tag}: max |U1 - manufactured|",
                  float(np.max(np.abs(d[0]))), 1e-6)
            check(f"{tag}: max |U4 - manufactured|",
                  float(np.max(np.abs(d[3]))), 1e-6)
            for row, name in ((1, "U2"), (2, "U3")):
                spread = float(np.ptp(d[row]))
                check(f"{tag}: {name} constant-offset spread", spread, 1e-6)
            report = bvp.verify_solution(problem, sol)
            check(f"{tag}: CR residual", report.cr_max, 1e-4)
            check(f"{tag}: biharmonic residual", report.biharmonic_max, 1e-4)
            check(f"{tag}: boundary sup |U1 - u1|",
                  report.boundary_sup_U1, 1e-2)
            check(f"{tag}: boundary sup |U4 - u4|",
                  report.boundary_sup_U4, 1e-2)
        if len(sols) == 2:
            cmp = bvp.compare_mod_homogeneous(sols["explicit"],
                                              sols["pipeline"], (xs, ys))
            check(f"{domain}: route agreement max dU1", cmp.max_dU1, 1e-6)
            check(f"{domain}: route agreement max dU4", cmp.max_dU4, 1e-6)
            check(f"{domain}: route agreement U2 spread", cmp.spread_U2, 1e-6)
            check(f"{domain}: route agreement U3 spread", cmp.spread_U3, 1e-6)

    width = max(len(r[0]) for r in rows)
    ok = True
    for name, value, threshold, passed in rows:
        ok &= passed
        status = "pass" if passed else "FAIL"
        print(f"{name:<{width}}  {value:12.3e} <= {threshold:.0e}  {status}")
    print(f"{'all checks passed' if ok else 'FAILURES present'}")
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="bimon", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solve", "plotdata"):
        p = sub.add_parser(name)
        p.add_argument("config")
        p.add_argument("--output", help="override the configured output path")
    pv = sub.add_parser("verify")
    pv.add_argument("config", nargs="?")
    args = parser.parse_args(argv)

    try:
        cfg = _load_config(args.config) if args.config else None
        if cfg is not None and getattr(args, "output", None):
            cfg.output_path = Path(args.output)
        if args.command == "verify":
            return run_verify(cfg)
        if args.command == "solve":
            return run_solve(cfg)
        return emit_plotdata(cfg)
    except (ConfigError, ParseError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (NoFiniteLimit, TraceUnavailable, NonFiniteSample) as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except IOFailure as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
