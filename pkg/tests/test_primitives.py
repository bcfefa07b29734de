import math

import numpy as np
import pytest

from bjorth import oracle
from bjorth.norms import NormSpec, norm
from bjorth.primitives import (ConeSide, golden_section, in_cone, is_bj_orthogonal,
                               min_norm_over_line, one_sided_derivative)

L1, L2, LINF = NormSpec.lp(1, 2), NormSpec.euclidean(2), NormSpec.lp(math.inf, 2)


def test_golden_section_quadratic():
    x, f, _ = golden_section(lambda t: (t - 0.3) ** 2 + 1, -2, 2, 1e-12)
    assert abs(x - 0.3) < 1e-6 and abs(f - 1) < 1e-12


def test_min_norm_over_line_examples():
    r = min_norm_over_line(L2, [1, 0], [0, 1])
    assert r.lambda_star == 0.0 and r.min_value == 1.0
    r = min_norm_over_line(L2, [1, 0], [1, 0])
    assert abs(r.lambda_star + 1) < 1e-7 and r.min_value < 1e-7
    r = min_norm_over_line(LINF, [2, 1], [0, 1])
    assert -3 <= r.lambda_star <= 1 and r.min_value == 2.0
    with pytest.raises(ValueError):
        min_norm_over_line(L2, [1, 0], [0, 0])


def test_min_norm_matches_scan(rng):
    # dense lambda scan as the reference
    for p in (1, 3, math.inf):
        s = NormSpec.lp(p, 3)
        for _ in range(10):
            x, y = rng.standard_normal(3), rng.standard_normal(3)
            r = min_norm_over_line(s, x, y)
            lams = np.linspace(-20, 20, 200001)
            ref = min(norm(s, x + t * y) for t in lams[::50])
            assert r.min_value <= ref + 1e-9


def test_derivative_examples():
    assert one_sided_derivative(L2, [1, 0], [1, 0], "plus") == 1.0
    assert one_sided_derivative(L2, [1, 0], [0, 1], "plus") == 0.0
    assert abs(one_sided_derivative(L1, [1, 0], [0, 1], "plus") - 1) < 1e-12
    assert abs(one_sided_derivative(L1, [1, 0], [0, 1], "minus") + 1) < 1e-12
    with pytest.raises(ValueError):
        one_sided_derivative(L2, [0, 0], [1, 0], "plus")


def test_derivative_smooth_lp_closed_form(rng):
    for p in (1.5, 3, 6):
        for n in (1, 3, 6):
            s = NormSpec.lp(p, n)
            for _ in range(30):
                x, y = rng.standard_normal(n), rng.standard_normal(n)
                exact = (np.sign(x) * np.abs(x) ** (p - 1)) @ y / norm(s, x) ** (p - 1)
                for side in ConeSide:
                    assert abs(one_sided_derivative(s, x, y, side) - exact) <= 1e-8 * norm(s, y)


def test_derivative_at_kinks():
    x = np.array([2.0, 2.0, -1.0])
    y = np.array([1.0, -3.0, 5.0])
    s = NormSpec.lp(math.inf, 3)
    assert abs(one_sided_derivative(s, x, y, "plus") - 1.0) < 1e-10
    assert abs(one_sided_derivative(s, x, y, "minus") + 3.0) < 1e-10
    s1 = NormSpec.lp(1, 3)
    x1 = np.array([1.0, 0.0, -2.0])
    assert abs(one_sided_derivative(s1, x1, y, "plus") - (1 + 3 - 5)) < 1e-10
    assert abs(one_sided_derivative(s1, x1, y, "minus") - (1 - 3 - 5)) < 1e-10


def test_cone_examples():
    assert in_cone(L2, [1, 0], [1, 1], "plus")
    assert not in_cone(L2, [1, 0], [-1, 1], "plus")
    assert in_cone(L2, [1, 0], [0, 1], "plus") and in_cone(L2, [1, 0], [0, 1], "minus")


def test_is_bj_orthogonal_examples():
    c = is_bj_orthogonal(L2, [1, 0], [0, 1])
    assert c.orthogonal and not c.degenerate
    c = is_bj_orthogonal(L2, [1, 0], [1, 1])
    assert not c.orthogonal
    assert abs(c.lambda_star + 0.5) < 1e-6 and abs(c.min_value - math.sqrt(0.5)) < 1e-10
    assert is_bj_orthogonal(LINF, [2, 1], [0, 1]).orthogonal


def test_zero_vectors_are_degenerate():
    for x, y in (([0, 0], [1, 2]), ([1, 2], [0, 0])):
        c = is_bj_orthogonal(L2, x, y)
        assert c.orthogonal and c.degenerate


def test_not_orthogonal_evidence_really_decreases(rng):
    for p in (1, 2, 4, math.inf):
        s = NormSpec.lp(p, 4)
        for _ in range(20):
            x, y = rng.standard_normal(4), rng.standard_normal(4)
            c = is_bj_orthogonal(s, x, y)
            if not c.orthogonal:
                assert norm(s, x + c.lambda_star * y) < norm(s, x)


def test_verdict_homogeneous_and_matches_oracle(rng):
    for p in (1, 2, 3, math.inf):
        for _ in range(25):
            s = NormSpec.lp(p, 3)
            x, y = rng.standard_normal(3), rng.standard_normal(3)
            if p != 2:
                x[rng.integers(3)] = 0.0  # kinks for l1, ties are rare anyway
            v = is_bj_orthogonal(s, x, y).orthogonal
            a, b = rng.uniform(0.1, 10), rng.choice([-1, 1]) * rng.uniform(0.1, 10)
            assert is_bj_orthogonal(s, a * x, b * y).orthogonal == v
            o = oracle.oracle_orth(oracle.vector_line(s, x, y), norm(s, x), norm(s, y))
            if o.margin > 1e-9:
                assert o.orthogonal == v
