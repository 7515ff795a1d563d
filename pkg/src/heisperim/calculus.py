"""Tangential horizontal calculus and numerical certification.

Operators on a non-characteristic surface S = {phi = 0}: the tangential
horizontal gradient (ambient gradient minus its normal part), the surface
divergence built from it, the torsion field c = wbar * nu_perp, and the
vertical operators Y u = <grad_H u, nu> and (T - wbar Y).

The verify_* functions certify, over seeded samples or chart quadrature,
the pointwise identities and integral formulas the rest of the package
relies on. Reports state max/mean residuals against a tolerance; a report
passes iff max <= tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import CharacteristicPointError, DomainError
from .fields import (
    Gradient,
    Hessian,
    HorizontalField,
    HorizontalVector,
    ScalarField,
    f_field,
    horizontal_gradient,
    hvec,
    rho_field,
    zeta_field,
)
from .group import Point, point
from .prng import SplitMix64
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, gauss_legendre_nodes, integrate_adaptive
from .surface import (
    FrameData,
    GraphicalStrip,
    ImplicitSurface,
    h_mean_curvature,
    horizontal_gauss_map,
    nu_perp,
)

# the projection of grad_H u onto the tangent space is still a horizontal vector
TangentialGradient = HorizontalVector

RHO_FLOOR = 1e-6  # identity checks skip samples with rho below this * scale


def tangential_gradient(
    s: ImplicitSurface, u: ScalarField, p: Point, fd: Optional[FrameData] = None
) -> TangentialGradient:
    """grad_H u minus its component along the unit horizontal normal."""
    if fd is None:
        fd = horizontal_gauss_map(s, p)
    g = horizontal_gradient(u, p)
    k = g.a[0] * fd.pbar + g.a[1] * fd.qbar
    return hvec(g.a[0] - k * fd.pbar, g.a[1] - k * fd.qbar)


def div_HS(
    s: ImplicitSurface, field: HorizontalField, p: Point, fd: Optional[FrameData] = None
) -> float:
    """Surface divergence: sum_i of the i-th tangential derivative of the
    i-th coefficient."""
    if fd is None:
        fd = horizontal_gauss_map(s, p)
    nu = (fd.pbar, fd.qbar)
    total = 0.0
    for i, comp in enumerate(field.components):
        g = horizontal_gradient(comp, p)
        k = g.a[0] * fd.pbar + g.a[1] * fd.qbar
        total += g.a[i] - nu[i] * k
    return total


def c_HS(s: ImplicitSurface, p: Point, fd: Optional[FrameData] = None) -> HorizontalVector:
    """Torsion field wbar * (unit normal rotated by -pi/2); tangent to S."""
    if fd is None:
        fd = horizontal_gauss_map(s, p)
    perp = nu_perp(fd)
    return hvec(fd.wbar * perp.a[0], fd.wbar * perp.a[1])


def Y_derivative(
    s: ImplicitSurface, u: ScalarField, p: Point, fd: Optional[FrameData] = None
) -> float:
    """Y u = <grad_H u, nu>; the normal is horizontal so only grad_H enters."""
    if fd is None:
        fd = horizontal_gauss_map(s, p)
    g = horizontal_gradient(u, p)
    return g.a[0] * fd.pbar + g.a[1] * fd.qbar


def TY_operator(
    s: ImplicitSurface, u: ScalarField, p: Point, fd: Optional[FrameData] = None
) -> float:
    """(T - wbar Y) u."""
    if fd is None:
        fd = horizontal_gauss_map(s, p)
    tu = u.gradient(p).dt
    return tu - fd.wbar * Y_derivative(s, u, p, fd)


@dataclass(frozen=True)
class IdentityReport:
    """Residual summary for one verified identity."""

    name: str
    samples: int
    max_residual: float
    mean_residual: float
    tolerance: float
    passed: bool
    worst_point: Optional[Point] = None
    skipped: int = 0

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "samples": int(self.samples),
            "max_residual": float(self.max_residual),
            "mean_residual": float(self.mean_residual),
            "tolerance": float(self.tolerance),
            "pass": bool(self.passed),
        }


def _report(name: str, residuals, worst_points, tol: float, skipped: int) -> IdentityReport:
    if not residuals:
        return IdentityReport(name, 0, 0.0, 0.0, tol, True, None, skipped)
    arr = np.asarray(residuals)
    k = int(np.argmax(arr))
    return IdentityReport(
        name=name,
        samples=len(residuals),
        max_residual=float(arr[k]),
        mean_residual=float(arr.mean()),
        tolerance=tol,
        passed=bool(arr[k] <= tol),
        worst_point=worst_points[k],
        skipped=skipped,
    )


SUITE_TOLERANCES = {
    "divergence_identity": 1e-9,
    "tangential_divergence": 1e-10,
    "vertical_balance": 1e-10,
    "gauge_homogeneity": 1e-10,
    "torsion_orthogonality": 1e-14,
}


def identity_suite(
    s: ImplicitSurface,
    p0: Point,
    points: Sequence[Point],
    tol: Optional[float] = None,
) -> list:
    """Evaluate the five pointwise identities over shared frame data.

    Identities (n = 1, Q = 4): the surface divergence of zeta is 1; the
    torsion/vertical pairing <c, zeta> + (T - wbar Y) f is 2; their sum is
    Q - 1 = 3 on any non-characteristic C^2 surface; the dilation generator
    reproduces the gauge distance, <zeta, grad_H rho> + f T rho = rho
    (relative residual); and <c, nu> = 0. Characteristic samples are
    skipped and counted; the gauge identity also skips near-singular rho.
    """
    zeta = zeta_field(p0)
    f_sf = f_field(p0)
    rho_sf = rho_field(p0)
    tols = dict(SUITE_TOLERANCES)
    if tol is not None:
        tols = {k: tol for k in tols}

    names = list(SUITE_TOLERANCES)
    residuals = {k: [] for k in names}
    worst = {k: [] for k in names}
    skipped = 0
    for p in points:
        try:
            fd = horizontal_gauss_map(s, p)
        except CharacteristicPointError:
            skipped += 1
            continue
        div = div_HS(s, zeta, p, fd)
        cz = c_HS(s, p, fd).dot(zeta.value(p))
        tyf = TY_operator(s, f_sf, p, fd)
        residuals["tangential_divergence"].append(abs(div - 1.0))
        worst["tangential_divergence"].append(p)
        residuals["vertical_balance"].append(abs(cz + tyf - 2.0))
        worst["vertical_balance"].append(p)
        residuals["divergence_identity"].append(abs(div + cz + tyf - 3.0))
        worst["divergence_identity"].append(p)
        orth = c_HS(s, p, fd).dot(fd.nu)
        residuals["torsion_orthogonality"].append(abs(orth))
        worst["torsion_orthogonality"].append(p)

        rho = rho_sf.value(p)
        if rho >= RHO_FLOOR:
            gh = horizontal_gradient(rho_sf, p)
            trho = rho_sf.gradient(p).dt
            zr = zeta.value(p).dot(gh)
            res = abs(zr + f_sf.value(p) * trho - rho) / max(1.0, rho)
            residuals["gauge_homogeneity"].append(res)
            worst["gauge_homogeneity"].append(p)

    return [_report(k, residuals[k], worst[k], tols[k], skipped) for k in names]


def _single(
    s: ImplicitSurface, p0: Point, points: Sequence[Point], name: str, tol: Optional[float]
) -> IdentityReport:
    reports = identity_suite(s, p0, points, tol=None)
    rep = next(r for r in reports if r.name == name)
    if tol is None:
        return rep
    return IdentityReport(
        rep.name, rep.samples, rep.max_residual, rep.mean_residual,
        tol, rep.max_residual <= tol, rep.worst_point, rep.skipped,
    )


def verify_divergence_identity(
    s: ImplicitSurface, p0: Point, points: Sequence[Point], tol: float = 1e-9
) -> IdentityReport:
    """Full identity: div zeta + <c, zeta> + (T - wbar Y) f = 3."""
    return _single(s, p0, points, "divergence_identity", tol)


def verify_tangential_divergence(
    s: ImplicitSurface, p0: Point, points: Sequence[Point], tol: float = 1e-10
) -> IdentityReport:
    return _single(s, p0, points, "tangential_divergence", tol)


def verify_vertical_balance(
    s: ImplicitSurface, p0: Point, points: Sequence[Point], tol: float = 1e-10
) -> IdentityReport:
    return _single(s, p0, points, "vertical_balance", tol)


def verify_gauge_homogeneity(
    s: ImplicitSurface, p0: Point, points: Sequence[Point], tol: float = 1e-10
) -> IdentityReport:
    return _single(s, p0, points, "gauge_homogeneity", tol)


def verify_torsion_orthogonality(
    s: ImplicitSurface, p0: Point, points: Sequence[Point], tol: float = 1e-14
) -> IdentityReport:
    return _single(s, p0, points, "torsion_orthogonality", tol)


def sample_strip_points(
    strip: GraphicalStrip,
    n: int,
    seed: int,
    t0: float = 0.0,
    y_half: float = 5.0,
    t_half: float = 5.0,
) -> list:
    """Seeded chart samples: y in [-y_half, y_half], t in t0 +- t_half
    clipped to the graph interval."""
    rng = SplitMix64(seed)
    ys = rng.uniforms(n, -y_half, y_half)
    lo = max(strip.g.t_lo, t0 - t_half)
    hi = min(strip.g.t_hi, t0 + t_half)
    ts = rng.uniforms(n, lo, hi)
    xs = np.asarray(ys, dtype=float) * np.asarray(strip.g.g(ts), dtype=float)
    return [point(float(x), float(y), float(t)) for x, y, t in zip(xs, ys, ts)]


# --- dilation term against the gauge distance ---------------------------


def _require_axis_center(p0: Point) -> None:
    if p0.n != 1 or p0.x[0] != 0.0 or p0.y[0] != 0.0:
        raise DomainError(
            "center must lie on the t-axis (off-axis centers are unsupported)"
        )


def gauge_dilation_term(
    s: ImplicitSurface, p0: Point, p: Point, fd: Optional[FrameData] = None
) -> float:
    """Tangential part of the dilation generator applied to the gauge
    distance: <zeta, grad_HS rho> + f (T - wbar Y) rho.

    Requires the center on the t-axis. On a graphical strip the value lies
    in [0, rho(p)], which drives the perimeter monotonicity. Singular at
    p = p0.
    """
    _require_axis_center(p0)
    if fd is None:
        fd = horizontal_gauss_map(s, p)
    rho_sf = rho_field(p0)
    tg = tangential_gradient(s, rho_sf, p, fd)
    zeta_v = zeta_field(p0).value(p)
    f_v = f_field(p0).value(p)
    return zeta_v.dot(tg) + f_v * TY_operator(s, rho_sf, p, fd)


def gauge_dilation_term_reduced(strip: GraphicalStrip, t0: float, y, t):
    """Closed form of gauge_dilation_term on a strip chart, vectorized:

        rho - 8 y^2 (t-t0)^2 G' / (rho^3 (1 + y^2 G'/2))

    The continuous extension 0 is used at the center point itself.
    """
    y = np.asarray(y, dtype=float)
    t = np.asarray(t, dtype=float)
    gv = np.asarray(strip.g.g(t), dtype=float)
    dgv = np.asarray(strip.g.dg(t), dtype=float)
    delta = t - t0
    one_g2 = 1.0 + gv * gv
    rho4 = y**4 * one_g2**2 + 16.0 * delta**2
    rho = rho4**0.25
    rho3 = rho4**0.75
    bracket = 1.0 + 0.5 * y * y * dgv
    with np.errstate(divide="ignore", invalid="ignore"):
        corr = 8.0 * y * y * delta**2 * dgv / (rho3 * bracket)
        out = np.where(rho3 > 0.0, rho - corr, 0.0)
    if out.ndim == 0:
        return float(out)
    return out


def verify_gauge_dilation_bound(
    strip: GraphicalStrip,
    t0: float,
    r: float,
    n: int,
    seed: int,
    tol: float = 1e-10,
) -> IdentityReport:
    """Sample the ball S cap B((0,0,t0), r) and check 0 <= value <= rho <= r.

    Residual per sample: how far the value escapes [0, rho] or |value|
    exceeds r, relative to max(1, r).
    """
    if r <= 0:
        raise DomainError("radius must be positive")
    rng = SplitMix64(seed)
    ts = rng.uniforms(n, t0 - r * r / 4.0, t0 + r * r / 4.0)
    u = rng.uniforms(n, -1.0, 1.0)
    gv = np.asarray(strip.g.g(ts), dtype=float)
    s4 = np.maximum(r**4 - 16.0 * (ts - t0) ** 2, 0.0)
    ymax = s4**0.25 / np.sqrt(1.0 + gv * gv)
    ys = u * ymax
    rho = strip.chart_rho(t0, ys, ts)
    val = gauge_dilation_term_reduced(strip, t0, ys, ts)
    over = np.maximum(val - rho, 0.0)
    under = np.maximum(-val, 0.0)
    escape = np.maximum(np.abs(val) - r, 0.0)
    res = np.maximum(np.maximum(over, under), escape) / max(1.0, r)
    k = int(np.argmax(res))
    worst = point(float(ys[k] * gv[k]), float(ys[k]), float(ts[k]))
    return IdentityReport(
        name="gauge_dilation_bound",
        samples=n,
        max_residual=float(res[k]),
        mean_residual=float(res.mean()),
        tolerance=tol,
        passed=bool(res[k] <= tol),
        worst_point=worst,
    )


# --- integration by parts on strips --------------------------------------


def _poly_bump(u: float) -> tuple:
    """(1-u^2)^3 and derivatives in u; zero outside |u| < 1."""
    if abs(u) >= 1.0:
        return 0.0, 0.0, 0.0
    w = 1.0 - u * u
    return w**3, -6.0 * u * w * w, w * (30.0 * u * u - 6.0)


@dataclass(frozen=True)
class ChartBump:
    """C^2 bump on a chart rectangle, extended x-independently.

    value(x, y, t) = amplitude * B(y) * C(t) with B, C sixth-degree
    polynomial bumps; support is |y - yc| < wy, |t - tc| < wt.
    """

    yc: float
    wy: float
    tc: float
    wt: float
    amplitude: float = 1.0

    def __post_init__(self):
        if self.wy <= 0 or self.wt <= 0:
            raise ValueError("bump half-widths must be positive")

    def support(self) -> tuple:
        return (self.yc - self.wy, self.yc + self.wy), (self.tc - self.wt, self.tc + self.wt)

    def field(self) -> ScalarField:
        yc, wy, tc, wt, amp = self.yc, self.wy, self.tc, self.wt, self.amplitude

        def parts(p: Point):
            b, db, d2b = _poly_bump((p.y[0] - yc) / wy)
            c, dc, d2c = _poly_bump((p.t - tc) / wt)
            return b, db / wy, d2b / (wy * wy), c, dc / wt, d2c / (wt * wt)

        def value(p: Point) -> float:
            b, _, _, c, _, _ = parts(p)
            return amp * b * c

        def gradient(p: Point) -> Gradient:
            b, db, _, c, dc, _ = parts(p)
            return Gradient((0.0,), (amp * db * c,), amp * b * dc)

        def second(p: Point) -> Hessian:
            b, db, d2b, c, dc, d2c = parts(p)
            return Hessian(0.0, 0.0, 0.0, amp * d2b * c, amp * db * dc, amp * b * d2c)

        return ScalarField(value=value, gradient=gradient, second=second)


def _check_support(strip: GraphicalStrip, support: tuple) -> None:
    (t_lo, t_hi) = support[1]
    if t_lo <= strip.g.t_lo or t_hi >= strip.g.t_hi:
        raise DomainError("bump support touches the graph interval boundary")


def _chart_point(strip: GraphicalStrip, y: float, t: float) -> Point:
    return point(y * float(strip.g.g(t)), y, t)


def verify_horizontal_ibp(
    strip: GraphicalStrip,
    bump: ChartBump,
    i: int,
    config: QuadratureConfig = DEFAULT_CONFIG,
    tol: float = 1e-6,
) -> IdentityReport:
    """Certify the horizontal integration-by-parts formula on a strip:

        int (grad_HS u)_i dsigma = int u (H nu_i - c_i) dsigma

    Both sides by composite Gauss-Legendre quadrature over the bump support
    (config.mesh_cells cells per axis). Residual is |L - R|/(|L|+|R|+1).
    """
    if i not in (1, 2):
        raise ValueError("component index must be 1 or 2")
    _check_support(strip, bump.support())
    (ylo, yhi), (tlo, thi) = bump.support()
    s = strip.surface()
    u = bump.field()
    ys, wy = gauss_legendre_nodes(ylo, yhi, config.mesh_cells)
    ts, wt = gauss_legendre_nodes(tlo, thi, config.mesh_cells)
    lhs = rhs = 0.0
    for yj, wj in zip(ys, wy):
        for tk, wk in zip(ts, wt):
            p = _chart_point(strip, yj, tk)
            fd = horizontal_gauss_map(s, p)
            w = wj * wk * fd.w_density
            tg = tangential_gradient(s, u, p, fd)
            lhs += w * tg.a[i - 1]
            uv = u.value(p)
            if uv != 0.0:
                h = h_mean_curvature(s, p)
                nu_i = fd.pbar if i == 1 else fd.qbar
                ci = c_HS(s, p, fd).a[i - 1]
                rhs += w * uv * (h * nu_i - ci)
    res = abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1.0)
    return IdentityReport(
        name=f"horizontal_ibp_{i}",
        samples=len(ys) * len(ts),
        max_residual=res,
        mean_residual=res,
        tolerance=tol,
        passed=res <= tol,
    )


def verify_vertical_ibp(
    strip: GraphicalStrip,
    f_sf: ScalarField,
    bump: ChartBump,
    config: QuadratureConfig = DEFAULT_CONFIG,
    tol: float = 1e-6,
) -> IdentityReport:
    """Certify the vertical integration-by-parts formula on a strip:

        int f (T - wbar Y) g dsigma = - int g (T - wbar Y) f dsigma
                                      + int f g wbar H dsigma

    g is the compactly supported bump, f any C^1 field; all three terms are
    supported in the bump rectangle.
    """
    _check_support(strip, bump.support())
    (ylo, yhi), (tlo, thi) = bump.support()
    s = strip.surface()
    g_sf = bump.field()
    ys, wy = gauss_legendre_nodes(ylo, yhi, config.mesh_cells)
    ts, wt = gauss_legendre_nodes(tlo, thi, config.mesh_cells)
    t_fg = t_gf = t_h = 0.0
    for yj, wj in zip(ys, wy):
        for tk, wk in zip(ts, wt):
            p = _chart_point(strip, yj, tk)
            fd = horizontal_gauss_map(s, p)
            w = wj * wk * fd.w_density
            fv = f_sf.value(p)
            gv = g_sf.value(p)
            t_fg += w * fv * TY_operator(s, g_sf, p, fd)
            t_gf += w * gv * TY_operator(s, f_sf, p, fd)
            if fv != 0.0 and gv != 0.0:
                t_h += w * fv * gv * fd.wbar * h_mean_curvature(s, p)
    res = abs(t_fg + t_gf - t_h) / (abs(t_fg) + abs(t_gf) + 1.0)
    return IdentityReport(
        name="vertical_ibp",
        samples=len(ys) * len(ts),
        max_residual=res,
        mean_residual=res,
        tolerance=tol,
        passed=res <= tol,
    )


# --- mollified growth inequality ------------------------------------------


@dataclass(frozen=True)
class CutoffSpec:
    """Monotone C^2 cutoff: lam = 0 for s <= 0, 1 for s >= epsilon,
    quintic smoothstep bridge in between."""

    epsilon: float

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")

    def lam(self, s):
        u = np.clip(np.asarray(s, dtype=float) / self.epsilon, 0.0, 1.0)
        return u**3 * (10.0 + u * (6.0 * u - 15.0))

    def dlam(self, s):
        s = np.asarray(s, dtype=float)
        u = np.clip(s / self.epsilon, 0.0, 1.0)
        return 30.0 * u * u * (1.0 - u) ** 2 / self.epsilon


def verify_growth_inequality(
    strip: GraphicalStrip,
    t0: float,
    r: float,
    cutoff: CutoffSpec,
    config: QuadratureConfig = DEFAULT_CONFIG,
    full_output: bool = False,
):
    """Left-hand side of the mollified growth inequality at radius r:

        3 * int lam(r - rho) dsigma - int lam'(r - rho) * K dsigma

    with K the gauge dilation term. Nonpositive on graphical strips with
    an on-axis center (numerically: <= quadrature slack). Returns the LHS;
    with full_output, (lhs, bulk_term, cutoff_term).
    """
    from .perimeter import ball_slice_bounds, check_ball_inside, mollified_perimeter

    if r <= 0:
        raise DomainError("radius must be positive")
    if cutoff.epsilon >= r:
        raise DomainError("cutoff width must be smaller than the radius")
    check_ball_inside(strip, t0, r)
    bulk = 3.0 * mollified_perimeter(strip, t0, r, cutoff, config)

    r_in = r - cutoff.epsilon
    lo, hi = t0 - r * r / 4.0, t0 + r * r / 4.0

    def outer(t: float) -> float:
        y2 = ball_slice_bounds(strip, t0, r, t)
        if y2 <= 0.0:
            return 0.0
        y1 = ball_slice_bounds(strip, t0, r_in, t)

        def inner(y: float) -> float:
            rho = float(strip.chart_rho(t0, y, t))
            k = float(gauge_dilation_term_reduced(strip, t0, y, t))
            w = float(strip.density(y, t))
            return float(cutoff.dlam(r - rho)) * k * w

        res = integrate_adaptive(inner, y1, y2, config)
        return 2.0 * res.value  # integrand is even in y

    pts = [t0 - r_in * r_in / 4.0, t0 + r_in * r_in / 4.0]
    pts += [tf for tf in strip.g.features if lo < tf < hi]
    cut = integrate_adaptive(outer, lo, hi, config, breakpoints=pts).value
    lhs = bulk - cut
    if full_output:
        return lhs, bulk, cut
    return lhs
