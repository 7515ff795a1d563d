import math

import pytest

from heisperim import (
    DomainError,
    GroupParams,
    SplitMix64,
    dilate,
    gauge_distance,
    gauge_norm,
    group_inverse,
    group_multiply,
    origin,
    point,
)
from helpers import random_point


def close(p, q, tol=1e-12):
    return (
        all(abs(a - b) <= tol for a, b in zip(p.x, q.x))
        and all(abs(a - b) <= tol for a, b in zip(p.y, q.y))
        and abs(p.t - q.t) <= tol
    )


def test_identity_and_inverse():
    e = origin()
    p = point(1.5, -2.0, 0.75)
    assert group_multiply(p, e) == p
    assert group_multiply(e, p) == p
    assert close(group_multiply(p, group_inverse(p)), e, 0.0)
    assert close(group_multiply(group_inverse(p), p), e, 0.0)


def test_noncommutativity_generates_center():
    a = point(1.0, 0.0, 0.0)
    b = point(0.0, 1.0, 0.0)
    ab = group_multiply(a, b)
    ba = group_multiply(b, a)
    assert ab.t - ba.t == pytest.approx(1.0)  # commutator lands on the t-axis


def test_associativity_sampled():
    rng = SplitMix64(11)
    for _ in range(200):
        p, q, s = (random_point(rng, 10.0) for _ in range(3))
        lhs = group_multiply(group_multiply(p, q), s)
        rhs = group_multiply(p, group_multiply(q, s))
        assert close(lhs, rhs, 1e-12)


def test_gauge_norm_values():
    assert gauge_norm(point(1.0, 0.0, 0.0)) == pytest.approx(1.0)
    assert gauge_norm(point(0.0, 0.0, 1.0)) == pytest.approx(2.0)
    assert gauge_norm(point(1.0, 0.0, 1.0)) == pytest.approx(17.0**0.25)
    assert gauge_norm(origin()) == 0.0


def test_gauge_homogeneous_of_degree_one():
    rng = SplitMix64(5)
    for lam in (1e-3, 0.1, 1.0, 7.0, 1e3):
        for _ in range(50):
            p = random_point(rng, 4.0)
            n = gauge_norm(p)
            assert gauge_norm(dilate(lam, p)) == pytest.approx(lam * n, rel=1e-12)


def test_distance_left_invariant_and_symmetric():
    rng = SplitMix64(21)
    for _ in range(100):
        p, p0, q = (random_point(rng) for _ in range(3))
        d = gauge_distance(p, p0)
        assert gauge_distance(group_multiply(q, p), group_multiply(q, p0)) == pytest.approx(
            d, rel=1e-10, abs=1e-12
        )
        assert gauge_distance(p0, p) == pytest.approx(d, rel=1e-12)


def test_dilation_rules():
    p = point(1.0, 2.0, 3.0)
    q = dilate(2.0, p)
    assert (q.x[0], q.y[0], q.t) == (2.0, 4.0, 12.0)
    # group homomorphism
    a, b = point(1.0, -1.0, 0.5), point(0.25, 2.0, -1.0)
    lhs = dilate(3.0, group_multiply(a, b))
    rhs = group_multiply(dilate(3.0, a), dilate(3.0, b))
    assert close(lhs, rhs, 1e-12)
    with pytest.raises(DomainError):
        dilate(0.0, p)
    with pytest.raises(DomainError):
        dilate(-1.0, p)


def test_homogeneous_dimension():
    assert GroupParams(1).Q == 4
    assert GroupParams(2).Q == 6


def test_dimension_mismatch_rejected():
    p = point(1.0, 2.0, 0.0)
    q = point((1.0, 0.0), (0.0, 1.0), 0.0)
    assert q.n == 2
    with pytest.raises(ValueError):
        group_multiply(p, q)


def test_higher_step_group_law():
    # n = 2 sanity: the area form couples the two complex slots
    p = point((1.0, 0.0), (0.0, 0.0), 0.0)
    q = point((0.0, 0.0), (1.0, 0.0), 0.0)
    assert group_multiply(p, q).t == pytest.approx(0.5)
    assert group_multiply(q, p).t == pytest.approx(-0.5)
    e = origin(2)
    assert close(group_multiply(p, group_inverse(p)), e, 0.0)


def test_gauge_distance_is_a_quasi_norm_scale():
    p0 = point(0.0, 0.0, 1.0)
    p = point(0.0, 0.0, 1.0 + 1.0)
    # pure vertical offset: d = (16 dt^2)^(1/4) = 2 sqrt(|dt|)
    assert gauge_distance(p, p0) == pytest.approx(2.0 * math.sqrt(1.0))
