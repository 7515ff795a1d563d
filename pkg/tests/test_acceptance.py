"""Acceptance gate: ten numbered criteria, each with a stated tolerance and
wall-clock budget. Every test prints one pass line; a failed assertion is the
fail line."""

import math
import time

import numpy as np
import pytest

from heisperim import (
    ChartBump,
    CutoffSpec,
    GraphicalStrip,
    QuadratureConfig,
    SplitMix64,
    ball_slice_bounds,
    frame_derivative,
    gauge_dilation_term_reduced,
    graph_arctan,
    graph_cubic,
    graph_linear,
    graph_tanh,
    graph_zero,
    identity_suite,
    large_r_correction,
    monotonicity_check,
    omega_constant,
    perimeter_in_ball,
    point,
    profile,
    sample_strip_points,
    small_r_limit,
    verify_growth_inequality,
    verify_horizontal_ibp,
    verify_vertical_ibp,
)
from helpers import (
    cylinder_points,
    cylinder_surface,
    plane_points,
    plane_surface,
    wave_field,
)

OMEGA = 0.8740191847640398

FAMILY_BUILDERS = {
    "zero": lambda: graph_zero(),
    "linear:1,0": lambda: graph_linear(1.0),
    "arctan:1": lambda: graph_arctan(1.0),
    "cubic:1": lambda: graph_cubic(1.0),
    "tanh:1": lambda: graph_tanh(1.0),
}
STRICT_FAMILIES = ["linear:1,0", "arctan:1", "cubic:1", "tanh:1"]


def _finish(number: int, name: str, started: float, budget: float) -> None:
    elapsed = time.perf_counter() - started
    assert elapsed < budget, f"criterion {number} exceeded budget: {elapsed:.2f}s >= {budget}s"
    print(f"criterion {number} {name}: PASS ({elapsed:.2f}s)")


def test_c01_identity_suite_across_surfaces():
    """Five pointwise identities, 1000 seeded samples, strips + plane + cylinder."""
    started = time.perf_counter()
    worst = 0.0
    cases = []
    for k, (label, make) in enumerate(FAMILY_BUILDERS.items()):
        strip = GraphicalStrip(make())
        pts = sample_strip_points(strip, 1000, seed=100 + k)
        cases.append((label, strip.surface(), pts))
    rng = SplitMix64(900)
    cases.append(("plane", plane_surface(0.8), plane_points(0.8, 1000, rng)))
    cases.append(("cylinder", cylinder_surface(1.5), cylinder_points(1.5, 1000, rng)))
    for j, (label, surface, pts) in enumerate(cases):
        rng_c = SplitMix64(7000 + j)
        p0 = point(rng_c.uniform(-2, 2), rng_c.uniform(-2, 2), rng_c.uniform(-2, 2))
        for rep in identity_suite(surface, p0, pts):
            assert rep.passed, (label, rep.name, rep.max_residual)
            worst = max(worst, rep.max_residual)
    assert worst < 1e-9
    _finish(1, "identity suite", started, 5.0)


def test_c02_gauge_dilation_bound():
    """sup of the dilation term over 1e5 ball samples stays below the radius."""
    started = time.perf_counter()
    t0 = 0.0
    for label in ("zero", "linear:1,0", "arctan:1"):
        strip = GraphicalStrip(FAMILY_BUILDERS[label]())
        for r in (0.5, 1.0, 10.0):
            rng = SplitMix64(hash((label, r)) & 0xFFFFFFFF)
            ts = rng.uniforms(100_000, t0 - r * r / 4.0, t0 + r * r / 4.0)
            u = rng.uniforms(100_000, -1.0, 1.0)
            ymax = ball_slice_bounds(strip, t0, r, ts)
            vals = gauge_dilation_term_reduced(strip, t0, u * ymax, ts)
            sup = float(np.abs(vals).max())
            assert sup <= r * (1.0 + 1e-10), (label, r, sup)
    _finish(2, "gauge dilation bound", started, 10.0)


def test_c03_integration_by_parts():
    """Horizontal (both components) and vertical IBP on curved strips."""
    from heisperim import coordinate_t_field

    started = time.perf_counter()
    bumps = [
        ChartBump(yc=0.3, wy=1.0, tc=0.2, wt=1.0),
        ChartBump(yc=-1.2, wy=0.6, tc=0.8, wt=0.7),
        ChartBump(yc=2.0, wy=0.9, tc=-1.1, wt=1.3),
    ]
    cfg = QuadratureConfig(mesh_cells=16)
    tfield = coordinate_t_field()
    for label in ("arctan:1", "tanh:1"):
        strip = GraphicalStrip(FAMILY_BUILDERS[label]())
        for bump in bumps:
            for i in (1, 2):
                rep = verify_horizontal_ibp(strip, bump, i, cfg)
                assert rep.passed and rep.max_residual < 1e-6, (label, i, rep.max_residual)
            rep = verify_vertical_ibp(strip, tfield, bump, cfg)
            assert rep.passed and rep.max_residual < 1e-6, (label, rep.max_residual)
    # mesh refinement must cut the defect at least in half
    strip = GraphicalStrip(graph_arctan(1.0))
    coarse = verify_horizontal_ibp(strip, bumps[0], 1, QuadratureConfig(mesh_cells=16))
    fine = verify_horizontal_ibp(strip, bumps[0], 1, QuadratureConfig(mesh_cells=32))
    assert fine.max_residual <= coarse.max_residual / 2.0, (
        coarse.max_residual, fine.max_residual,
    )
    _finish(3, "integration by parts", started, 30.0)


GRID64 = np.geomspace(1e-2, 1e2, 64)


def test_c04_profile_monotonicity():
    """P(r)/r^3 nondecreasing on a 64-point log grid, all families, two centers."""
    started = time.perf_counter()
    for label, make in FAMILY_BUILDERS.items():
        strip = GraphicalStrip(make())
        for t0 in (0.0, 1.0):
            table = profile(strip, t0, GRID64)
            cert = monotonicity_check(table, slack=1e-8)
            assert cert.passed, (label, t0, cert.first_violation, cert.min_step)
    _finish(4, "profile monotonicity", started, 60.0)


def test_c05_reference_profile_values():
    """Flat profile pinned to omega; G = t pinned at r = 0.1 and r = 100."""
    started = time.perf_counter()
    flat = GraphicalStrip(graph_zero())
    table = profile(flat, 0.0, GRID64)
    for row in table.rows:
        assert abs(row.ratio - OMEGA) < 1e-6, row
    linear = GraphicalStrip(graph_linear(1.0))
    small = perimeter_in_ball(linear, 0.0, 0.1) / 0.1**3
    assert abs(small - 0.8752173233346966) < 1e-4
    large = perimeter_in_ball(linear, 0.0, 100.0) / 100.0**3
    assert abs(large - (OMEGA + math.pi / 3.0)) < 2e-2
    _finish(5, "reference profile values", started, 10.0)


def test_c06_small_radius_limit():
    """Richardson extrapolation of P(r)/r^3 recovers omega for every family."""
    started = time.perf_counter()
    for label, make in FAMILY_BUILDERS.items():
        strip = GraphicalStrip(make())
        lim = small_r_limit(strip, 0.0)
        assert abs(lim - OMEGA) < 1e-6, (label, lim)
    _finish(6, "small radius limit", started, 10.0)


def test_c07_dilation_scaling():
    """P_{G_lam}(lam r) = lam^3 P_G(r) for the parabolic rescaling of G."""
    started = time.perf_counter()
    t0, r = 0.3, 1.0
    cases = [
        (graph_linear(1.0, 0.5), lambda lam: graph_linear(1.0 / lam**2, 0.5)),
        (graph_arctan(2.0), lambda lam: graph_arctan(2.0 / lam**2)),
        (graph_cubic(1.0), lambda lam: graph_cubic(1.0 / lam**6)),
        (graph_tanh(1.5), lambda lam: graph_tanh(1.5 / lam**2)),
    ]
    for g, scaled_maker in cases:
        base = perimeter_in_ball(GraphicalStrip(g), t0, r)
        for lam in (0.5, 2.0, 7.0):
            scaled = perimeter_in_ball(GraphicalStrip(scaled_maker(lam)), lam * lam * t0, lam * r)
            assert abs(scaled - lam**3 * base) <= 1e-9 * lam**3 * base, (g.label, lam)
    _finish(7, "dilation scaling", started, 5.0)


def test_c08_isoperimetric_lower_bound():
    """P(r) >= (omega - 1e-6) r^3 for every family and radius."""
    started = time.perf_counter()
    radii = np.geomspace(0.01, 100.0, 6)
    floor = OMEGA - 1e-6
    for label, make in FAMILY_BUILDERS.items():
        strip = GraphicalStrip(make())
        for r in radii:
            p = perimeter_in_ball(strip, 0.0, float(r))
            assert p >= floor * r**3, (label, r, p / r**3)
    _finish(8, "lower bound", started, 1.0)


def test_c09_growth_inequality():
    """Mollified growth LHS stays nonpositive on every strict strip."""
    started = time.perf_counter()
    for label in STRICT_FAMILIES:
        strip = GraphicalStrip(FAMILY_BUILDERS[label]())
        for r in (0.5, 2.0, 10.0):
            lhs, bulk, _ = verify_growth_inequality(
                strip, 0.0, r, CutoffSpec(r / 10.0), full_output=True
            )
            assert bulk > 0.0
            assert lhs <= 1e-8 * bulk, (label, r, lhs / bulk)
    _finish(9, "growth inequality", started, 30.0)


def test_c10_frame_derivative_order():
    """Flow finite differences converge at second order: halving h divides
    the error by about four."""
    from helpers import fd_frame

    started = time.perf_counter()
    field = wave_field()
    rng = SplitMix64(4242)
    pts = [
        point(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        for _ in range(20)
    ]
    for idx in (1, 2, "T"):
        e1 = sum(
            abs(fd_frame(field, idx, p, h=1e-3) - frame_derivative(field, idx, p))
            for p in pts
        )
        e2 = sum(
            abs(fd_frame(field, idx, p, h=5e-4) - frame_derivative(field, idx, p))
            for p in pts
        )
        ratio = e1 / e2
        assert 3.5 <= ratio <= 4.5, (idx, ratio)
    _finish(10, "frame derivative order", started, 5.0)
