"""Shared fixtures-by-hand: finite-difference oracles and reference surfaces."""

import math

from heisperim import (
    Gradient,
    Hessian,
    ImplicitSurface,
    ScalarField,
    group_multiply,
    point,
)


def fd_frame(field: ScalarField, index, p, h: float = 1e-5) -> float:
    """Central difference along the exact frame flow.

    The flow of the i-th horizontal frame vector through p is right
    translation by (±h e_i, 0), so a plain central difference is O(h^2)
    without any operator splitting.  index "T" steps in t.
    """
    if index == "T":
        pp = point(p.x, p.y, p.t + h)
        pm = point(p.x, p.y, p.t - h)
    else:
        n = p.n
        xs = [0.0] * n
        ys = [0.0] * n
        if index <= n:
            xs[index - 1] = h
        else:
            ys[index - 1 - n] = h
        step = point(tuple(xs), tuple(ys), 0.0)
        back = point(tuple(-v for v in xs), tuple(-v for v in ys), 0.0)
        pp = group_multiply(p, step)
        pm = group_multiply(p, back)
    return (field.value(pp) - field.value(pm)) / (2.0 * h)


def plane_surface(c: float = 0.0) -> ImplicitSurface:
    """Vertical plane x = c; never characteristic."""
    return ImplicitSurface(
        ScalarField(
            value=lambda p: p.x[0] - c,
            gradient=lambda p: Gradient((1.0,), (0.0,), 0.0),
            second=lambda p: Hessian(0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
        )
    )


def cylinder_surface(radius: float) -> ImplicitSurface:
    """x^2 + y^2 = radius^2; never characteristic on the cylinder."""
    return ImplicitSurface(
        ScalarField(
            value=lambda p: p.x[0] ** 2 + p.y[0] ** 2 - radius**2,
            gradient=lambda p: Gradient((2.0 * p.x[0],), (2.0 * p.y[0],), 0.0),
            second=lambda p: Hessian(2.0, 0.0, 0.0, 2.0, 0.0, 0.0),
        )
    )


def cylinder_points(radius: float, n: int, rng) -> list:
    pts = []
    for _ in range(n):
        theta = rng.uniform(0.0, 2.0 * math.pi)
        pts.append(
            point(radius * math.cos(theta), radius * math.sin(theta), rng.uniform(-5.0, 5.0))
        )
    return pts


def plane_points(c: float, n: int, rng) -> list:
    return [point(c, rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)) for _ in range(n)]


def poly_field() -> ScalarField:
    """u = x^2 y + 3 t^2 - x t + y^3 with hand gradient and Hessian."""

    def value(p):
        x, y, t = p.x[0], p.y[0], p.t
        return x * x * y + 3.0 * t * t - x * t + y**3

    def gradient(p):
        x, y, t = p.x[0], p.y[0], p.t
        return Gradient((2.0 * x * y - t,), (x * x + 3.0 * y * y,), 6.0 * t - x)

    def second(p):
        x, y, _ = p.x[0], p.y[0], p.t
        return Hessian(2.0 * y, 2.0 * x, -1.0, 6.0 * y, 0.0, 6.0)

    return ScalarField(value=value, gradient=gradient, second=second)


def trans_field() -> ScalarField:
    """u = sin x cosh y + t cos(x y); transcendental, nonzero mixed partials."""

    def value(p):
        x, y, t = p.x[0], p.y[0], p.t
        return math.sin(x) * math.cosh(y) + t * math.cos(x * y)

    def gradient(p):
        x, y, t = p.x[0], p.y[0], p.t
        s = math.sin(x * y)
        return Gradient(
            (math.cos(x) * math.cosh(y) - t * y * s,),
            (math.sin(x) * math.sinh(y) - t * x * s,),
            math.cos(x * y),
        )

    def second(p):
        x, y, t = p.x[0], p.y[0], p.t
        s, c = math.sin(x * y), math.cos(x * y)
        return Hessian(
            -math.sin(x) * math.cosh(y) - t * y * y * c,
            math.cos(x) * math.sinh(y) - t * s - t * x * y * c,
            -y * s,
            math.sin(x) * math.cosh(y) - t * x * x * c,
            -x * s,
            0.0,
        )

    return ScalarField(value=value, gradient=gradient, second=second)


def wave_field() -> ScalarField:
    """u = sin x cosh y + sin t cos(x - y); genuinely nonlinear in t, so
    second differences along any frame flow carry an O(h^2) error term."""

    def value(p):
        x, y, t = p.x[0], p.y[0], p.t
        return math.sin(x) * math.cosh(y) + math.sin(t) * math.cos(x - y)

    def gradient(p):
        x, y, t = p.x[0], p.y[0], p.t
        s = math.sin(x - y)
        return Gradient(
            (math.cos(x) * math.cosh(y) - math.sin(t) * s,),
            (math.sin(x) * math.sinh(y) + math.sin(t) * s,),
            math.cos(t) * math.cos(x - y),
        )

    return ScalarField(value=value, gradient=gradient)


def random_point(rng, half: float = 3.0):
    return point(
        rng.uniform(-half, half), rng.uniform(-half, half), rng.uniform(-half, half)
    )
