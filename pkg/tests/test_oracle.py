import math

import numpy as np

from bjorth import oracle
from bjorth.norms import NormSpec
from bjorth.sampled import on_interval


def test_examples():
    r = oracle.oracle_orth(oracle.vector_line(NormSpec.euclidean(2), [1, 0], [0, 1]), 1.0, 1.0)
    assert r.orthogonal and r.lambda_star == 0.0 and r.min_value == 1.0
    r = oracle.oracle_orth(oracle.spectral_line(np.diag([2.0, 1.0]), np.eye(2)), 2.0, 1.0)
    assert not r.orthogonal
    assert abs(r.lambda_star + 1.5) < 1e-9 and abs(r.min_value - 0.5) < 1e-9
    f = on_interval(lambda u: np.sin(np.pi * u), 0.0, 2.0, 2001)
    r = oracle.oracle_orth(oracle.function_line(f.values, np.ones_like(f.values), f.space), 1.0, 1.0)
    assert r.orthogonal and r.min_value >= 1 - 1e-6


def test_analytic_profile():
    line = oracle.spectral_line(np.diag([2.0, 1.0]), np.eye(2))
    for t in np.linspace(-4, 4, 33):
        assert abs(line(t) - max(abs(2 + t), abs(1 + t))) < 1e-14


def test_batched_matches_scalar(rng):
    A, B = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
    ts = rng.uniform(-3, 3, 600)
    for line in (oracle.spectral_line(A, B), oracle.operator_line(A, B, 1),
                 oracle.operator_line(A, B, math.inf),
                 oracle.vector_line(NormSpec.lp(3, 3), A[0], B[0]),
                 oracle.function_line(A, B, NormSpec.lp(1, 3))):
        np.testing.assert_allclose(line.many(ts), [line(t) for t in ts], rtol=1e-13)


def test_self_consistency_and_bracket(rng):
    for _ in range(40):
        A, B = rng.uniform(-1, 1, (3, 3)), rng.uniform(-1, 1, (3, 3))
        line = oracle.spectral_line(A, B)
        na, nb = np.linalg.norm(A, 2), np.linalg.norm(B, 2)
        r = oracle.oracle_orth(line, na, nb)
        scan = line.many(np.linspace(-r.radius, r.radius, oracle.SCAN_POINTS))
        assert r.min_value <= scan.min() + 1e-15
        assert abs(line(r.lambda_star) - r.min_value) <= 1e-10
        assert line(r.radius) > na and line(-r.radius) > na


def test_zero_direction():
    r = oracle.oracle_orth(lambda t: 1.0, 1.0, 0.0)
    assert r.orthogonal and math.isinf(r.margin)


def test_operator_norm_exact():
    M = np.array([[1.0, -2.0], [3.0, 0.5]])
    assert oracle.operator_norm_exact(M, 1) == 4.0
    assert oracle.operator_norm_exact(M, math.inf) == 3.5
    assert abs(oracle.operator_norm_exact(M, 2) - np.linalg.svd(M, compute_uv=False)[0]) < 1e-15
