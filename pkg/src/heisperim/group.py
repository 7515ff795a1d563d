"""Heisenberg group arithmetic: points, group law, dilations, gauge.

The group H^n is R^{2n+1} with coordinates (x, y, t), x and y in R^n.
Group operations support general n; everything downstream of the surface
machinery fixes n = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

from .errors import DomainError

Coords = Union[float, Sequence[float]]


class Point(NamedTuple):
    """Group element (x, y, t); x and y are length-n tuples."""

    x: tuple
    y: tuple
    t: float

    @property
    def n(self) -> int:
        return len(self.x)


def point(x: Coords, y: Coords, t: float) -> Point:
    """Build a Point from scalars (n = 1) or coordinate sequences."""
    xs = (float(x),) if isinstance(x, (int, float)) else tuple(float(v) for v in x)
    ys = (float(y),) if isinstance(y, (int, float)) else tuple(float(v) for v in y)
    if len(xs) != len(ys):
        raise ValueError("x and y must have the same length")
    return Point(xs, ys, float(t))


def origin(n: int = 1) -> Point:
    return Point((0.0,) * n, (0.0,) * n, 0.0)


@dataclass(frozen=True)
class GroupParams:
    """Group dimension data; Q = 2n + 2 is the homogeneous dimension."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def Q(self) -> int:
        return 2 * self.n + 2


def _check_same_n(p: Point, q: Point) -> None:
    if p.n != q.n:
        raise ValueError(f"dimension mismatch: n={p.n} vs n={q.n}")


def group_multiply(p: Point, q: Point) -> Point:
    """Group law: (x,y,t)*(x',y',t') has t-part t+t' + (<x,y'> - <x',y>)/2."""
    _check_same_n(p, q)
    cross = sum(a * b for a, b in zip(p.x, q.y)) - sum(a * b for a, b in zip(q.x, p.y))
    return Point(
        tuple(a + b for a, b in zip(p.x, q.x)),
        tuple(a + b for a, b in zip(p.y, q.y)),
        p.t + q.t + 0.5 * cross,
    )


def group_inverse(p: Point) -> Point:
    """(-x, -y, -t); the cross term cancels at (p, p^-1)."""
    return Point(tuple(-a for a in p.x), tuple(-a for a in p.y), -p.t)


def dilate(lam: float, p: Point) -> Point:
    """Anisotropic dilation (x, y, t) -> (lam x, lam y, lam^2 t), lam > 0."""
    if lam <= 0:
        raise DomainError("dilation factor must be positive")
    return Point(
        tuple(lam * a for a in p.x),
        tuple(lam * a for a in p.y),
        lam * lam * p.t,
    )


def gauge_norm(p: Point) -> float:
    """Homogeneous gauge (|z|^4 + 16 t^2)^(1/4); vanishes only at the origin."""
    z2 = sum(a * a for a in p.x) + sum(a * a for a in p.y)
    return (z2 * z2 + 16.0 * p.t * p.t) ** 0.25


def gauge_distance(p: Point, p0: Point) -> float:
    """Left-invariant gauge distance: the gauge norm of p0^-1 * p."""
    _check_same_n(p, p0)
    return gauge_norm(group_multiply(group_inverse(p0), p))
