"""Scalar and horizontal fields on the group, and the left-invariant frame.

The frame acts on scalar fields through their coordinate partials:

    X_i     = d/dx_i - (y_i/2) d/dt      (i = 1..n)
    X_{n+i} = d/dy_i + (x_i/2) d/dt
    T       = d/dt

so a ScalarField only has to supply coordinate partials. Built-in fields
(zeta, f, rho, gauge) carry analytic partials; finite differences are a
test-side oracle only.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Callable, NamedTuple, Optional, Union

from .errors import DomainError
from .group import Point, origin


class Gradient(NamedTuple):
    """Coordinate partials (d/dx_i, d/dy_i, d/dt)."""

    dx: tuple
    dy: tuple
    dt: float


class Hessian(NamedTuple):
    """Coordinate second partials for n = 1, symmetric entries once."""

    xx: float
    xy: float
    xt: float
    yy: float
    yt: float
    tt: float


class HorizontalVector(NamedTuple):
    """Coefficients on the orthonormal horizontal frame X_1..X_{2n}."""

    a: tuple

    def norm(self) -> float:
        return sqrt(sum(c * c for c in self.a))

    def dot(self, other: "HorizontalVector") -> float:
        return sum(c * d for c, d in zip(self.a, other.a))


def hvec(*coeffs: float) -> HorizontalVector:
    return HorizontalVector(tuple(float(c) for c in coeffs))


@dataclass(frozen=True)
class ScalarField:
    """Scalar function with analytic partials through order two.

    value and gradient are total on the field's domain; second is optional
    (only needed where curvature is computed) and restricted to n = 1.
    """

    value: Callable[[Point], float]
    gradient: Callable[[Point], Gradient]
    second: Optional[Callable[[Point], Hessian]] = None


@dataclass(frozen=True)
class HorizontalField:
    """Horizontal vector field whose components are ScalarFields."""

    components: tuple

    def value(self, p: Point) -> HorizontalVector:
        return HorizontalVector(tuple(c.value(p) for c in self.components))


FrameIndex = Union[int, str]


def frame_derivative(field: ScalarField, index: FrameIndex, p: Point) -> float:
    """Apply X_index (1..2n) or T (index "T") to the field at p."""
    g = field.gradient(p)
    n = p.n
    if index == "T" or index == "t":
        return g.dt
    i = int(index)
    if 1 <= i <= n:
        return g.dx[i - 1] - 0.5 * p.y[i - 1] * g.dt
    if n < i <= 2 * n:
        return g.dy[i - n - 1] + 0.5 * p.x[i - n - 1] * g.dt
    raise ValueError(f"frame index {index!r} out of range for n={n}")


def horizontal_gradient(field: ScalarField, p: Point) -> HorizontalVector:
    """(X_1 u, ..., X_2n u) from one gradient evaluation."""
    g = field.gradient(p)
    first = tuple(g.dx[i] - 0.5 * p.y[i] * g.dt for i in range(p.n))
    second = tuple(g.dy[i] + 0.5 * p.x[i] * g.dt for i in range(p.n))
    return HorizontalVector(first + second)


def frame_second(field: ScalarField, p: Point) -> tuple:
    """(X1X1 u, X1X2 u, X2X1 u, X2X2 u) at p, n = 1 only.

    Expanded through coordinate partials; the +-(1/2) u_t terms realize
    [X1, X2] = T.
    """
    if p.n != 1:
        raise ValueError("frame_second is implemented for n = 1 only")
    if field.second is None:
        raise ValueError("field has no second partials")
    g = field.gradient(p)
    h = field.second(p)
    x, y = p.x[0], p.y[0]
    x1x1 = h.xx - y * h.xt + 0.25 * y * y * h.tt
    x2x2 = h.yy + x * h.yt + 0.25 * x * x * h.tt
    mixed = h.xy + 0.5 * x * h.xt - 0.5 * y * h.yt - 0.25 * x * y * h.tt
    x1x2 = mixed + 0.5 * g.dt
    x2x1 = mixed - 0.5 * g.dt
    return x1x1, x1x2, x2x1, x2x2


def zeta_field(p0: Point) -> HorizontalField:
    """Horizontal field with coefficients (x_i - x0_i, y_i - y0_i)."""
    n = p0.n
    comps = []
    for i in range(n):
        x0i = p0.x[i]
        dx = tuple(1.0 if j == i else 0.0 for j in range(n))
        zeros = (0.0,) * n
        comps.append(
            ScalarField(
                value=lambda p, i=i, x0i=x0i: p.x[i] - x0i,
                gradient=lambda p, dx=dx, zeros=zeros: Gradient(dx, zeros, 0.0),
                second=(lambda p: Hessian(0, 0, 0, 0, 0, 0)) if n == 1 else None,
            )
        )
    for i in range(n):
        y0i = p0.y[i]
        dy = tuple(1.0 if j == i else 0.0 for j in range(n))
        zeros = (0.0,) * n
        comps.append(
            ScalarField(
                value=lambda p, i=i, y0i=y0i: p.y[i] - y0i,
                gradient=lambda p, dy=dy, zeros=zeros: Gradient(zeros, dy, 0.0),
                second=(lambda p: Hessian(0, 0, 0, 0, 0, 0)) if n == 1 else None,
            )
        )
    return HorizontalField(tuple(comps))


def f_field(p0: Point) -> ScalarField:
    """Vertical companion of zeta: 2(t - t0) + <x, y0> - <x0, y>.

    Frame action: X_i f = y0_i - y_i, X_{n+i} f = x_i - x0_i, T f = 2.
    """
    n = p0.n
    x0, y0, t0 = p0.x, p0.y, p0.t

    def value(p: Point) -> float:
        cross = sum(p.x[i] * y0[i] - x0[i] * p.y[i] for i in range(n))
        return 2.0 * (p.t - t0) + cross

    def gradient(p: Point) -> Gradient:
        return Gradient(y0, tuple(-v for v in x0), 2.0)

    second = (lambda p: Hessian(0, 0, 0, 0, 0, 0)) if n == 1 else None
    return ScalarField(value=value, gradient=gradient, second=second)


def rho_field(p0: Point) -> ScalarField:
    """Gauge distance from p0 as a field with analytic first partials (n = 1).

    With A = |z - z0|^2 and B = 2(t - t0) + (x y0 - x0 y):

        rho   = (A^2 + 4 B^2)^(1/4)
        X1rho = (A (x - x0) - 2 B (y - y0)) / rho^3
        X2rho = (A (y - y0) + 2 B (x - x0)) / rho^3
        Trho  = 4 B / rho^3

    Derivatives are singular at p0; evaluation there raises DomainError.
    """
    if p0.n != 1:
        raise ValueError("rho_field is implemented for n = 1 only")
    x0, y0, t0 = p0.x[0], p0.y[0], p0.t

    def _parts(p: Point):
        dx, dy = p.x[0] - x0, p.y[0] - y0
        a = dx * dx + dy * dy
        b = 2.0 * (p.t - t0) + (p.x[0] * y0 - x0 * p.y[0])
        return dx, dy, a, b

    def value(p: Point) -> float:
        _, _, a, b = _parts(p)
        return (a * a + 4.0 * b * b) ** 0.25

    def gradient(p: Point) -> Gradient:
        dx, dy, a, b = _parts(p)
        r3 = (a * a + 4.0 * b * b) ** 0.75
        if r3 == 0.0:
            raise DomainError("rho derivatives are singular at the center point")
        x1r = (a * dx - 2.0 * b * dy) / r3
        x2r = (a * dy + 2.0 * b * dx) / r3
        tr = 4.0 * b / r3
        # convert frame components back to coordinate partials
        return Gradient(
            (x1r + 0.5 * p.y[0] * tr,),
            (x2r - 0.5 * p.x[0] * tr,),
            tr,
        )

    return ScalarField(value=value, gradient=gradient)


def gauge_field() -> ScalarField:
    """The gauge norm as a ScalarField (n = 1); rho centered at the origin."""
    return rho_field(origin(1))


def constant_field(c: float) -> ScalarField:
    return ScalarField(
        value=lambda p: c,
        gradient=lambda p: Gradient((0.0,) * p.n, (0.0,) * p.n, 0.0),
        second=lambda p: Hessian(0, 0, 0, 0, 0, 0),
    )


def coordinate_t_field() -> ScalarField:
    """The vertical coordinate t as a field; X1 t = -y/2, X2 t = x/2."""
    return ScalarField(
        value=lambda p: p.t,
        gradient=lambda p: Gradient((0.0,) * p.n, (0.0,) * p.n, 1.0),
        second=lambda p: Hessian(0, 0, 0, 0, 0, 0),
    )


def generator_apply(p0: Point, field: ScalarField, p: Point) -> float:
    """Dilation generator centered at p0: <zeta, grad_H F> + f * TF.

    For the gauge centered at p0 this returns the gauge itself
    (degree-one homogeneity under the centered dilations).
    """
    zeta = zeta_field(p0).value(p)
    grad_h = horizontal_gradient(field, p)
    tf = field.gradient(p).dt
    return zeta.dot(grad_h) + f_field(p0).value(p) * tf
