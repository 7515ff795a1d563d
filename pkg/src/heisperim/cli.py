"""Command line front end.

Subcommands: profile (CSV sweep of the rescaled perimeter), verify (JSON
identity/quadrature report), omega (the universal constant), limits
(small-r extrapolation and large-r behavior).

Exit codes: 0 success, 1 verification failure (or non-monotone profile),
2 invalid graph spec, 3 quadrature failure, 4 domain violation, 64 usage.
An optional flat key=value config file can stand in for flags; explicit
flags win.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional

from .calculus import (
    ChartBump,
    CutoffSpec,
    IdentityReport,
    identity_suite,
    sample_strip_points,
    verify_gauge_dilation_bound,
    verify_growth_inequality,
    verify_horizontal_ibp,
    verify_vertical_ibp,
)
from .errors import DomainError, GraphValidationError, QuadratureError
from .fields import coordinate_t_field
from .group import point
from .perimeter import (
    large_r_correction,
    monotonicity_check,
    omega_constant,
    profile,
    small_r_limit,
)
from .prng import SplitMix64
from .quadrature import QuadratureConfig
from .report import (
    fmt17,
    plot_profile,
    plot_verify,
    profile_csv,
    profile_json,
    verify_json,
)
from .surface import GraphFunction, GraphicalStrip, graph_arctan, graph_cubic, graph_linear, graph_tanh, graph_zero

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_BAD_GRAPH = 2
EXIT_QUADRATURE = 3
EXIT_DOMAIN = 4
EXIT_USAGE = 64

_MASK64 = (1 << 64) - 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # route argparse's sys.exit(2) through the 64 exit-code contract
    def error(self, message):
        raise UsageError(message)


def parse_g_spec(spec: str) -> GraphFunction:
    """Parse `zero | linear:a,b | arctan:k | cubic:a | tanh:k`."""
    name, _, rest = spec.partition(":")
    params = []
    if rest:
        try:
            params = [float(tok) for tok in rest.split(",")]
        except ValueError:
            raise GraphValidationError(f"non-numeric parameter in graph spec {spec!r}")
    try:
        if name == "zero" and len(params) == 0:
            return graph_zero()
        if name == "linear" and len(params) in (1, 2):
            return graph_linear(*params)
        if name == "arctan" and len(params) == 1:
            return graph_arctan(params[0])
        if name == "cubic" and len(params) == 1:
            return graph_cubic(params[0])
        if name == "tanh" and len(params) == 1:
            return graph_tanh(params[0])
    except TypeError:
        pass
    raise GraphValidationError(f"bad graph spec {spec!r}")


_BOOL_KEYS = {"log"}
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _load_config(path: str) -> dict:
    out = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise UsageError(f"{path}:{lineno}: expected key=value")
                out[key.strip()] = value.strip()
    except OSError as e:
        raise UsageError(f"cannot read config file: {e}")
    return out


def _config_argv(cfg: dict, allowed: set) -> list:
    argv = []
    for key, value in cfg.items():
        if key == "config" or key not in allowed:
            raise UsageError(f"unknown config key {key!r}")
        if key in _BOOL_KEYS:
            low = value.lower()
            if low in _TRUE:
                argv.append(f"--{key}")
            elif low not in _FALSE:
                raise UsageError(f"config key {key!r} needs a boolean, got {value!r}")
        else:
            argv.extend([f"--{key}", value])
    return argv


def build_parser() -> _Parser:
    parser = _Parser(prog="heisperim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="rescaled perimeter sweep as CSV")
    p.add_argument("--g", required=True, help="graph spec, e.g. linear:1,0")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--rmin", type=float, required=True)
    p.add_argument("--rmax", type=float, required=True)
    p.add_argument("--points", type=int, default=16)
    p.add_argument("--log", action="store_true", help="log-spaced r grid")
    p.add_argument("--tol", type=float, default=1e-10, help="quadrature rtol")
    p.add_argument("--slack", type=float, default=1e-8,
                   help="monotonicity slack relative to the max ratio")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help="output path, - for stdout")
    p.add_argument("--plot", default=None, help="also render the profile figure here")
    p.add_argument("--config", default=None, help="key=value config file")
    p.set_defaults(func=cmd_profile)

    v = sub.add_parser("verify", help="identity and quadrature report as JSON")
    v.add_argument("--g", required=True)
    v.add_argument("--t0", type=float, default=0.0)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--r", type=float, default=2.0, help="ball radius for the bound checks")
    v.add_argument("--tol", type=float, default=None,
                   help="force one tolerance on all pointwise checks")
    v.add_argument("--mesh-cells", type=int, default=16,
                   help="cells per axis for the IBP quadrature")
    v.add_argument("--out", default="-")
    v.add_argument("--plot", default=None, help="also render the residual figure here")
    v.add_argument("--config", default=None)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("omega", help="print the universal profile constant")
    o.add_argument("--tol", type=float, default=1e-12)
    o.add_argument("--config", default=None)
    o.set_defaults(func=cmd_omega)

    li = sub.add_parser("limits", help="small-r extrapolation and large-r trend")
    li.add_argument("--g", required=True)
    li.add_argument("--t0", type=float, default=0.0)
    li.add_argument("--r", type=float, required=True)
    li.add_argument("--tol", type=float, default=1e-10)
    li.add_argument("--config", default=None)
    li.set_defaults(func=cmd_limits)
    return parser


def _quad_config(tol: float, mesh_cells: int = 16) -> QuadratureConfig:
    return QuadratureConfig(rtol=tol, atol=min(1e-12, tol), mesh_cells=mesh_cells)


def _write_out(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def cmd_profile(ns) -> int:
    if ns.rmin <= 0 or ns.rmin >= ns.rmax or ns.points < 2:
        raise UsageError("need 0 < rmin < rmax and points >= 2")
    import numpy as np

    strip = GraphicalStrip(parse_g_spec(ns.g))
    grid = (
        np.geomspace(ns.rmin, ns.rmax, ns.points)
        if ns.log
        else np.linspace(ns.rmin, ns.rmax, ns.points)
    )
    table = profile(strip, ns.t0, grid, _quad_config(ns.tol))
    text = profile_csv(table) if ns.format == "csv" else profile_json(table)
    _write_out(text, ns.out)
    if ns.plot:
        plot_profile(table, ns.plot)
    cert = monotonicity_check(table, ns.slack * float(table.column("ratio").max()))
    return EXIT_OK if cert.passed else EXIT_VERIFY_FAIL


def cmd_verify(ns) -> int:
    start = time.perf_counter()
    strip = GraphicalStrip(parse_g_spec(ns.g))
    s = strip.surface()
    rng = SplitMix64(ns.seed & _MASK64)
    p0 = point(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2))
    pts = sample_strip_points(strip, ns.samples, seed=(ns.seed + 1) & _MASK64, t0=ns.t0)
    reports = identity_suite(s, p0, pts, tol=ns.tol)

    bound_tol = ns.tol if ns.tol is not None else 1e-10
    reports.append(
        verify_gauge_dilation_bound(strip, ns.t0, ns.r, ns.samples,
                                    seed=(ns.seed + 2) & _MASK64, tol=bound_tol)
    )

    config = _quad_config(1e-10, ns.mesh_cells)
    bump = ChartBump(yc=0.3, wy=1.0, tc=ns.t0 + 0.2, wt=1.0)
    reports.append(verify_horizontal_ibp(strip, bump, 1, config))
    reports.append(verify_horizontal_ibp(strip, bump, 2, config))
    reports.append(verify_vertical_ibp(strip, coordinate_t_field(), bump, config))

    cutoff = CutoffSpec(ns.r / 10.0)
    lhs, bulk, _ = verify_growth_inequality(strip, ns.t0, ns.r, cutoff, config,
                                            full_output=True)
    res = max(0.0, lhs) / max(bulk, 1e-300)
    reports.append(IdentityReport(
        name="growth_inequality", samples=1, max_residual=res,
        mean_residual=res, tolerance=1e-8, passed=res <= 1e-8,
    ))

    cfg = {
        "command": "verify", "g": ns.g, "t0": ns.t0, "samples": ns.samples,
        "seed": ns.seed, "r": ns.r, "tol": ns.tol, "mesh_cells": ns.mesh_cells,
    }
    text = verify_json(cfg, reports, time.perf_counter() - start)
    _write_out(text, ns.out)
    if ns.plot:
        plot_verify(reports, ns.plot)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAIL


def cmd_omega(ns) -> int:
    res = omega_constant(_quad_config(ns.tol), full_output=True)
    sys.stdout.write(f"{fmt17(res.value)} ± {res.error:.3e}\n")
    return EXIT_OK


def cmd_limits(ns) -> int:
    if ns.r <= 0:
        raise UsageError("need r > 0")
    strip = GraphicalStrip(parse_g_spec(ns.g))
    config = _quad_config(ns.tol)
    omega = omega_constant(config)
    small = small_r_limit(strip, ns.t0, config)
    sys.stdout.write(f"small_r_limit {fmt17(small)}\n")
    corrs = []
    for rr in (ns.r, 2 * ns.r, 4 * ns.r):
        c = large_r_correction(strip, ns.t0, rr, config)
        corrs.append(c)
        sys.stdout.write(f"large_r_ratio r={rr:g} {fmt17(omega + c)}\n")
    d1, d2 = corrs[1] - corrs[0], corrs[2] - corrs[1]
    trend = "converging" if d2 <= 0.5 * d1 + 1e-12 else "growing"
    sys.stdout.write(f"trend {trend}\n")
    return EXIT_OK


def _config_path_from(argv: list) -> Optional[str]:
    for i, tok in enumerate(argv):
        if tok == "--config":
            if i + 1 >= len(argv):
                raise UsageError("--config needs a path")
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def main(argv: Optional[list] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        argv = list(argv)
        cfg_path = _config_path_from(argv[1:]) if argv else None
        sub_choices = parser._subparsers._group_actions[0].choices
        if cfg_path and argv and argv[0] in sub_choices:
            allowed = {
                a.dest.replace("_", "-")
                for a in sub_choices[argv[0]]._actions
                if a.dest not in ("help", "func", "config")
            }
            # config supplies defaults; anything on the command line wins
            extra = _config_argv(_load_config(cfg_path), allowed)
            argv = [argv[0]] + extra + argv[1:]
        try:
            ns = parser.parse_args(argv)
        except SystemExit as e:  # --help
            return int(e.code or 0)
        return ns.func(ns)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except GraphValidationError as e:
        print(f"invalid graph: {e}", file=sys.stderr)
        return EXIT_BAD_GRAPH
    except QuadratureError as e:
        print(f"quadrature failure: {e}", file=sys.stderr)
        return EXIT_QUADRATURE
    except DomainError as e:
        print(f"domain violation: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
