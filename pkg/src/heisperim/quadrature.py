"""Quadrature engines behind a single config object.

Two 1D schemes: double-exponential (tanh-sinh) as the default, which eats
algebraic endpoint singularities, and adaptive bisection (QUADPACK) as the
independent cross-check path. Integrands must accept numpy arrays.

tanh-sinh clusters nodes at the interval ends only, so integrands with
sharp interior features must be split there; pass those locations as
breakpoints. A small composite Gauss-Legendre tensor rule with explicit
cell-count control serves the mesh-refinement checks.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy import integrate as _si

from .errors import QuadratureError

SCHEMES = ("tanhsinh", "adaptive")


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and scheme selection for all integration entry points.

    mesh_cells controls the composite Gauss-Legendre rule used by the
    integration-by-parts verifiers (cells per axis).
    """

    rtol: float = 1e-10
    atol: float = 1e-12
    max_depth: int = 10
    scheme: str = "tanhsinh"
    mesh_cells: int = 16

    def __post_init__(self):
        if self.rtol <= 0 or self.atol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.mesh_cells < 1:
            raise ValueError("mesh_cells must be >= 1")


DEFAULT_CONFIG = QuadratureConfig()


class QuadResult(NamedTuple):
    value: float
    error: float


def _interior_breaks(a: float, b: float, breakpoints: Sequence[float]) -> list:
    eps = 1e-12 * max(abs(a), abs(b), 1.0)
    pts = sorted({float(p) for p in breakpoints if a + eps < p < b - eps})
    return pts


def integrate_tanhsinh(
    f: Callable,
    a: float,
    b: float,
    config: QuadratureConfig = DEFAULT_CONFIG,
    breakpoints: Sequence[float] = (),
) -> QuadResult:
    """Piecewise tanh-sinh integration of a vectorized integrand."""
    edges = [a] + _interior_breaks(a, b, breakpoints) + [b]
    total, err = 0.0, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        res = _si.tanhsinh(
            f, lo, hi, atol=config.atol / max(len(edges) - 1, 1),
            rtol=config.rtol, maxlevel=max(config.max_depth, 4),
        )
        if not np.all(res.success):
            raise QuadratureError(f"tanh-sinh failed on [{lo}, {hi}]")
        total += float(res.integral)
        err += float(res.error)
    return QuadResult(total, err)


def integrate_adaptive(
    f: Callable,
    a: float,
    b: float,
    config: QuadratureConfig = DEFAULT_CONFIG,
    breakpoints: Sequence[float] = (),
) -> QuadResult:
    """Adaptive (QUADPACK) integration; breakpoints map to `points`."""
    pts = _interior_breaks(a, b, breakpoints)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _si.IntegrationWarning)
        out = _si.quad(
            f, a, b,
            epsabs=config.atol, epsrel=config.rtol,
            limit=max(50 * config.max_depth, 200),
            points=pts if pts else None,
            full_output=1,
        )
    value, abserr = float(out[0]), float(out[1])
    if len(out) >= 4:  # warning message present
        if abserr > 1e3 * max(config.atol, config.rtol * abs(value)):
            raise QuadratureError(f"adaptive quadrature did not converge: {out[3]}")
    return QuadResult(value, abserr)


def integrate(
    f: Callable,
    a: float,
    b: float,
    config: QuadratureConfig = DEFAULT_CONFIG,
    breakpoints: Sequence[float] = (),
) -> QuadResult:
    if config.scheme == "adaptive":
        return integrate_adaptive(f, a, b, config, breakpoints)
    return integrate_tanhsinh(f, a, b, config, breakpoints)


def gauss_legendre_nodes(lo: float, hi: float, cells: int, nodes: int = 3):
    """Composite Gauss-Legendre nodes and weights on [lo, hi]."""
    xs, ws = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(lo, hi, cells + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = (mid[:, None] + half[:, None] * xs[None, :]).ravel()
    wts = (half[:, None] * ws[None, :]).ravel()
    return pts, wts


def gauss_legendre_2d(
    f: Callable,
    y_range: tuple,
    t_range: tuple,
    cells: int,
    nodes: int = 3,
) -> float:
    """Tensor Gauss-Legendre integral of f(y, t) over a rectangle.

    f must broadcast over same-shape arrays. cells counts per axis, so one
    refinement step (cells -> 2*cells) quarters the cell area.
    """
    ys, wy = gauss_legendre_nodes(y_range[0], y_range[1], cells, nodes)
    ts, wt = gauss_legendre_nodes(t_range[0], t_range[1], cells, nodes)
    ym, tm = np.meshgrid(ys, ts, indexing="ij")
    vals = np.asarray(f(ym, tm), dtype=float)
    return float(np.einsum("i,j,ij->", wy, wt, vals))
