"""Hypersurfaces: implicit level sets and graphical strips (n = 1).

A graphical strip is the zero set of phi = x - y G(t) with G' >= 0 on the
interval I. Strips have empty characteristic locus (X1 phi >= 1) and zero
horizontal mean curvature, which is what the verification modules certify
numerically.

Conventions: the non-unit normal is grad(phi); all chart integrals use the
(y, t) chart with H-perimeter density |grad_H phi| = sqrt(1+G^2)(1+y^2 G'/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import CharacteristicPointError, DomainError, GraphValidationError
from .fields import (
    Gradient,
    Hessian,
    HorizontalVector,
    ScalarField,
    frame_second,
    horizontal_gradient,
    hvec,
)
from .group import Point, point

DEFAULT_CHAR_TOL = 1e-10
# sampling window for validating graphs on unbounded intervals
_VALIDATE_WINDOW = 100.0


@dataclass(frozen=True)
class GraphFunction:
    """Graph profile G on [t_lo, t_hi] with vectorized G, G', G''.

    features lists interior t-values where G'/(1+G^2) peaks or kinks; the
    quadrature layer splits integrals there. strict means G' > 0 somewhere.
    """

    label: str
    g: Callable
    dg: Callable
    d2g: Callable
    t_lo: float = -math.inf
    t_hi: float = math.inf
    strict: bool = True
    features: tuple = ()

    def contains(self, t: float) -> bool:
        return self.t_lo <= t <= self.t_hi


def graph_zero() -> GraphFunction:
    z = lambda t: np.zeros_like(np.asarray(t, dtype=float))
    return GraphFunction("zero", g=z, dg=z, d2g=z, strict=False)


def graph_linear(a: float, b: float = 0.0) -> GraphFunction:
    if a < 0:
        raise GraphValidationError("linear graph needs slope a >= 0")
    feats = (-b / a,) if a > 0 else ()
    return GraphFunction(
        f"linear:{a:g},{b:g}",
        g=lambda t: a * np.asarray(t, dtype=float) + b,
        dg=lambda t: np.full_like(np.asarray(t, dtype=float), a),
        d2g=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        strict=a > 0,
        features=feats,
    )


def graph_arctan(k: float) -> GraphFunction:
    if k < 0:
        raise GraphValidationError("arctan graph needs k >= 0")
    return GraphFunction(
        f"arctan:{k:g}",
        g=lambda t: np.arctan(k * np.asarray(t, dtype=float)),
        dg=lambda t: k / (1.0 + (k * np.asarray(t, dtype=float)) ** 2),
        d2g=lambda t: -2.0 * k**3 * np.asarray(t, dtype=float)
        / (1.0 + (k * np.asarray(t, dtype=float)) ** 2) ** 2,
        strict=k > 0,
        features=(0.0,) if k > 0 else (),
    )


def graph_cubic(a: float) -> GraphFunction:
    if a < 0:
        raise GraphValidationError("cubic graph needs a >= 0")
    # G'/(1+G^2) = 3at^2/(1+a^2 t^6) peaks at t^6 = 1/(2 a^2)
    feats = ()
    if a > 0:
        tp = (2.0 * a * a) ** (-1.0 / 6.0)
        feats = (-tp, 0.0, tp)
    return GraphFunction(
        f"cubic:{a:g}",
        g=lambda t: a * np.asarray(t, dtype=float) ** 3,
        dg=lambda t: 3.0 * a * np.asarray(t, dtype=float) ** 2,
        d2g=lambda t: 6.0 * a * np.asarray(t, dtype=float),
        strict=a > 0,
        features=feats,
    )


def _sech2(x):
    # 4 e^{-2|x|} / (1 + e^{-2|x|})^2, overflow-free for any x
    e = np.exp(-2.0 * np.abs(np.asarray(x, dtype=float)))
    return 4.0 * e / (1.0 + e) ** 2


def graph_tanh(k: float) -> GraphFunction:
    if k < 0:
        raise GraphValidationError("tanh graph needs k >= 0")
    return GraphFunction(
        f"tanh:{k:g}",
        g=lambda t: np.tanh(k * np.asarray(t, dtype=float)),
        dg=lambda t: k * _sech2(k * np.asarray(t, dtype=float)),
        d2g=lambda t: -2.0 * k**2 * np.tanh(k * np.asarray(t, dtype=float))
        * _sech2(k * np.asarray(t, dtype=float)),
        strict=k > 0,
        features=(0.0,) if k > 0 else (),
    )


BUILTIN_GRAPHS = {
    "zero": graph_zero,
    "linear": graph_linear,
    "arctan": graph_arctan,
    "cubic": graph_cubic,
    "tanh": graph_tanh,
}


@dataclass(frozen=True)
class StripCertificate:
    """Result of a dense-grid G' >= 0 check."""

    valid: bool
    samples: int
    violation_t: Optional[float]
    strict_intervals: tuple

    @property
    def strict_anywhere(self) -> bool:
        return len(self.strict_intervals) > 0


def validate_graphical_strip(g: GraphFunction, samples: int = 4096) -> StripCertificate:
    """Check G' >= 0 on a dense grid; report where G' is strictly positive.

    Unbounded intervals are sampled on a +-100 window. A violation worse
    than -1e-12 invalidates the certificate and reports the offending t.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    lo = max(g.t_lo, -_VALIDATE_WINDOW)
    hi = min(g.t_hi, _VALIDATE_WINDOW)
    ts = np.linspace(lo, hi, samples)
    dg = np.asarray(g.dg(ts), dtype=float)
    bad = dg < -1e-12
    if bad.any():
        return StripCertificate(False, samples, float(ts[int(np.argmax(bad))]), ())
    strict = dg > 0.0
    intervals = []
    start = None
    for i, s in enumerate(strict):
        if s and start is None:
            start = ts[i]
        elif not s and start is not None:
            intervals.append((float(start), float(ts[i - 1])))
            start = None
    if start is not None:
        intervals.append((float(start), float(ts[-1])))
    return StripCertificate(True, samples, None, tuple(intervals))


@dataclass(frozen=True)
class ImplicitSurface:
    """Zero level set of phi, oriented by the non-unit normal grad(phi)."""

    phi: ScalarField


@dataclass(frozen=True)
class FrameData:
    """Unit horizontal normal data at a non-characteristic point.

    pbar^2 + qbar^2 = 1; wbar = T(phi)/|grad_H phi|; w_density is the
    non-unit |grad_H phi|, which in a unit-x-slope chart is the H-perimeter
    density; n_h is the non-unit horizontal normal.
    """

    pbar: float
    qbar: float
    wbar: float
    w_density: float
    n_h: HorizontalVector

    @property
    def nu(self) -> HorizontalVector:
        return hvec(self.pbar, self.qbar)


class GraphicalStrip:
    """Surface x = y G(t); validated on construction."""

    def __init__(self, g: GraphFunction, validate_samples: int = 4096):
        cert = validate_graphical_strip(g, validate_samples)
        if not cert.valid:
            raise GraphValidationError(
                f"graph {g.label!r} has G' < 0 at t={cert.violation_t}"
            )
        self.g = g
        self.certificate = cert
        self._phi = self._build_phi()

    def _build_phi(self) -> ScalarField:
        g, dg, d2g = self.g.g, self.g.dg, self.g.d2g

        def value(p: Point) -> float:
            return p.x[0] - p.y[0] * float(g(p.t))

        def gradient(p: Point) -> Gradient:
            return Gradient((1.0,), (-float(g(p.t)),), -p.y[0] * float(dg(p.t)))

        def second(p: Point) -> Hessian:
            return Hessian(0.0, 0.0, 0.0, 0.0, -float(dg(p.t)), -p.y[0] * float(d2g(p.t)))

        return ScalarField(value=value, gradient=gradient, second=second)

    @property
    def phi(self) -> ScalarField:
        return self._phi

    def surface(self) -> ImplicitSurface:
        return ImplicitSurface(self._phi)

    # vectorized chart helpers -------------------------------------------

    def chart_x(self, y, t):
        return np.asarray(y, dtype=float) * self.g.g(t)

    def density(self, y, t):
        """H-perimeter density sqrt(1+G^2) (1 + y^2 G'/2) on the chart."""
        y = np.asarray(y, dtype=float)
        gv = np.asarray(self.g.g(t), dtype=float)
        dgv = np.asarray(self.g.dg(t), dtype=float)
        return np.sqrt(1.0 + gv * gv) * (1.0 + 0.5 * y * y * dgv)

    def frame_arrays(self, y, t):
        """(pbar, qbar, wbar, W) closed forms on the chart, vectorized."""
        y = np.asarray(y, dtype=float)
        gv = np.asarray(self.g.g(t), dtype=float)
        dgv = np.asarray(self.g.dg(t), dtype=float)
        root = np.sqrt(1.0 + gv * gv)
        bracket = 1.0 + 0.5 * y * y * dgv
        pbar = 1.0 / root
        qbar = -gv / root
        wbar = -y * dgv / (root * bracket)
        return pbar, qbar, wbar, root * bracket

    def chart_rho(self, t0: float, y, t):
        """Gauge distance from (0,0,t0) on the chart:
        (y^4 (1+G^2)^2 + 16 (t-t0)^2)^(1/4)."""
        y = np.asarray(y, dtype=float)
        t = np.asarray(t, dtype=float)
        gv = np.asarray(self.g.g(t), dtype=float)
        one_g2 = 1.0 + gv * gv
        return (y**4 * one_g2**2 + 16.0 * (t - t0) ** 2) ** 0.25


def strip_chart(strip: GraphicalStrip, y: float, t: float) -> Point:
    """Chart map (y, t) -> (y G(t), y, t); t must lie in the graph interval."""
    if not strip.g.contains(t):
        raise DomainError(f"t={t} outside graph interval")
    return point(y * float(strip.g.g(t)), y, t)


def strip_perimeter_density(strip: GraphicalStrip, y: float, t: float) -> float:
    if not strip.g.contains(t):
        raise DomainError(f"t={t} outside graph interval")
    return float(strip.density(y, t))


def implicit_normal_components(s: ImplicitSurface, p: Point) -> tuple:
    """(p_raw, q_raw, w_raw) = (X1 phi, X2 phi, T phi) at p."""
    if p.n != 1:
        raise ValueError("surface machinery is n = 1 only")
    g = s.phi.gradient(p)
    p_raw = g.dx[0] - 0.5 * p.y[0] * g.dt
    q_raw = g.dy[0] + 0.5 * p.x[0] * g.dt
    return p_raw, q_raw, g.dt


def angle_function(s: ImplicitSurface, p: Point) -> float:
    """|grad_H phi|; vanishes exactly at characteristic points."""
    p_raw, q_raw, _ = implicit_normal_components(s, p)
    return math.hypot(p_raw, q_raw)


def is_characteristic(s: ImplicitSurface, p: Point, tol: float = DEFAULT_CHAR_TOL) -> bool:
    """True when |grad_H phi| < tol * |grad phi| (frame-orthonormal norm)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    p_raw, q_raw, w_raw = implicit_normal_components(s, p)
    w = math.hypot(p_raw, q_raw)
    full = math.sqrt(p_raw * p_raw + q_raw * q_raw + w_raw * w_raw)
    if full == 0.0:
        raise DomainError("degenerate defining function: grad phi = 0")
    return w < tol * full


def horizontal_gauss_map(s: ImplicitSurface, p: Point, tol: float = DEFAULT_CHAR_TOL) -> FrameData:
    """Unit horizontal normal (pbar, qbar) plus wbar and the chart density."""
    p_raw, q_raw, w_raw = implicit_normal_components(s, p)
    w = math.hypot(p_raw, q_raw)
    full = math.sqrt(p_raw * p_raw + q_raw * q_raw + w_raw * w_raw)
    if full == 0.0 or w < tol * full:
        raise CharacteristicPointError(f"characteristic point {p}")
    return FrameData(p_raw / w, q_raw / w, w_raw / w, w, hvec(p_raw, q_raw))


def nu_perp(fd: FrameData) -> HorizontalVector:
    """In-plane rotation of the unit normal: (qbar, -pbar)."""
    return hvec(fd.qbar, -fd.pbar)


def h_mean_curvature(s: ImplicitSurface, p: Point, tol: float = DEFAULT_CHAR_TOL) -> float:
    """Horizontal mean curvature as the divergence X1(pbar) + X2(qbar).

    Quotient-rule expansion in the raw components; needs second partials
    of phi. Zero on graphical strips, 1/R on the cylinder of radius R.
    """
    p_raw, q_raw, w_raw = implicit_normal_components(s, p)
    w2 = p_raw * p_raw + q_raw * q_raw
    w = math.sqrt(w2)
    full = math.sqrt(w2 + w_raw * w_raw)
    if full == 0.0 or w < tol * full:
        raise CharacteristicPointError(f"characteristic point {p}")
    x1p, x1q, x2p, x2q = frame_second(s.phi, p)
    div = (x1p + x2q) / w
    corr = (
        p_raw * (p_raw * x1p + q_raw * x1q) + q_raw * (p_raw * x2p + q_raw * x2q)
    ) / (w2 * w)
    return div - corr
