import numpy as np
import pytest

from bjorth.bilinear import (BilinearForm, bilinear_attainment, bilinear_eval, bilinear_norm,
                             bilinear_orth_check)
from bjorth.oracle import sphere_sup
from bjorth.sampled import quasi_random_sphere


def test_eval_examples():
    assert bilinear_eval(BilinearForm(np.eye(2)), [1, 0], [0, 1]) == 0.0
    assert bilinear_eval(BilinearForm(np.array([[1.0, 2.0], [3.0, 4.0]])), [1, 0], [0, 1]) == 2.0
    with pytest.raises(ValueError):
        bilinear_eval(BilinearForm(np.eye(2)), [1, 0, 0], [0, 1])


def test_norm_examples():
    assert bilinear_norm(BilinearForm(np.diag([2.0, 1.0]))) == 2.0
    assert bilinear_norm(BilinearForm(np.zeros((2, 3)))) == 0.0


def test_norm_dominates_samples(rng):
    A = rng.standard_normal((4, 3))
    F = BilinearForm(A)
    nrm = bilinear_norm(F)
    assert sphere_sup(lambda x, y: bilinear_eval(F, x, y), 4, 3) <= nrm + 1e-12
    # pairs x = Ay/||Ay|| reach the sup by Cauchy-Schwarz; sample y only
    Y = quasi_random_sphere(3, 10_000, seed=7)
    best = max(bilinear_eval(F, A @ y / np.linalg.norm(A @ y), y) for y in Y)
    assert best <= nrm + 1e-12 and nrm - best < 1e-3


def test_sphere_sup_diag():
    F = BilinearForm(np.diag([2.0, 1.0]))
    assert sphere_sup(lambda x, y: bilinear_eval(F, x, y), 2, 2, samples=10_000) >= 1.99
    Z = BilinearForm(np.zeros((2, 2)))
    assert sphere_sup(lambda x, y: bilinear_eval(Z, x, y), 2, 2, samples=100) == 0.0


def test_sum_identity(rng):
    for _ in range(50):
        A, B = rng.standard_normal((3, 4)), rng.standard_normal((3, 4))
        x, y, lam = rng.standard_normal(3), rng.standard_normal(4), rng.uniform(-5, 5)
        lhs = (BilinearForm(A) + lam * BilinearForm(B))(x, y)
        assert abs(lhs - bilinear_eval(BilinearForm(A + lam * B), x, y)) < 1e-12


def test_attainment_diag():
    att = bilinear_attainment(BilinearForm(np.diag([2.0, 1.0])))
    pairs = att.pairs()
    assert len(pairs) == 4
    for x, y in pairs:
        assert abs(abs(x[0]) - 1) < 1e-15 and abs(abs(y[0]) - 1) < 1e-15
        assert abs(abs(bilinear_eval(BilinearForm(np.diag([2.0, 1.0])), x, y)) - 2) < 1e-14
    with pytest.raises(ValueError):
        bilinear_attainment(BilinearForm(np.zeros((2, 2))))


def test_attainment_identity_is_circle():
    att = bilinear_attainment(BilinearForm(np.eye(2)))
    assert att.top.dim == 2
    with pytest.raises(ValueError):
        att.pairs()
    for x, y in att.sample(20, seed=3):
        np.testing.assert_allclose(np.abs(x), np.abs(y), atol=1e-15)


def test_orth_examples():
    c = bilinear_orth_check(BilinearForm(np.diag([2.0, 1.0])),
                            BilinearForm(np.array([[0.0, 0.0], [0.0, 1.0]])))
    assert c.orthogonal
    x0, y0 = c.witness
    np.testing.assert_allclose(x0, [1, 0])
    np.testing.assert_allclose(y0, [1, 0])
    assert not bilinear_orth_check(BilinearForm(np.diag([2.0, 1.0])), BilinearForm(np.eye(2))).orthogonal
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert bilinear_orth_check(BilinearForm(np.eye(2)), BilinearForm(rot)).orthogonal


def test_lift_sign_and_shape(rng):
    for _ in range(40):
        A = rng.standard_normal((3, 5))
        y = np.linalg.svd(A)[2][0]
        Ay = A @ y
        B = rng.standard_normal((3, 5))
        B -= (Ay @ (B @ y)) / (Ay @ Ay) * np.outer(Ay, y)
        c = bilinear_orth_check(BilinearForm(A), BilinearForm(B))
        assert c.orthogonal
        x0, y0 = c.witness
        assert x0.shape == (3,) and y0.shape == (5,)
        assert bilinear_eval(BilinearForm(A), x0, y0) > 0
