import numpy as np
import pytest

from bjorth.attainment import attainment_sampled, jacobi_eigh, top_singular
from bjorth.norms import NormSpec
from bjorth.sampled import SampledFunction, circle_grid, interval_grid, on_interval


def test_jacobi_matches_numpy(rng):
    for n in (1, 2, 5, 12):
        M = rng.standard_normal((n, n))
        S = M + M.T
        w, U = jacobi_eigh(S)
        np.testing.assert_allclose(w, np.linalg.eigvalsh(S), atol=1e-12 * np.abs(S).max())
        np.testing.assert_allclose(U.T @ U, np.eye(n), atol=1e-12)
        np.testing.assert_allclose(S @ U, U * w, atol=1e-11 * np.abs(S).max())


def test_jacobi_rejects_asymmetric():
    with pytest.raises(ValueError):
        jacobi_eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_top_singular_examples():
    t = top_singular(np.diag([2.0, 1.0]))
    assert t.sigma_max == 2.0 and t.dim == 1 and t.gap == 1.0
    assert abs(abs(t.basis[0, 0]) - 1) < 1e-15
    t = top_singular(np.eye(3))
    assert t.sigma_max == 1.0 and t.dim == 3
    with pytest.raises(ValueError):
        top_singular(np.zeros((2, 2)))


def _power_sigma(A, iters=5000):
    # independent reference: power iteration on A^T A
    v = np.ones(A.shape[1])
    for _ in range(iters):
        v = A.T @ (A @ v)
        v /= np.linalg.norm(v)
    return np.linalg.norm(A @ v)


def test_top_singular_random(rng):
    A = rng.standard_normal((5, 4))
    t = top_singular(A)
    assert abs(t.sigma_max - _power_sigma(A)) < 1e-10 * t.sigma_max
    for v in t.basis.T:
        assert abs(np.linalg.norm(A @ v) / t.sigma_max - 1) < 1e-9


def test_top_singular_merges_near_ties(rng):
    U, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    V, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    s = np.array([3.0, 3.0 * (1 - 1e-12), 1.0])
    A = U[:, :3] @ np.diag(s) @ V.T
    t = top_singular(A, gap_tol=1e-8)
    assert t.dim == 2
    assert top_singular(A, gap_tol=1e-14).dim == 1


def test_sin_attainment():
    f = on_interval(lambda u: np.sin(np.pi * u), 0.0, 2.0, 2001)
    att = attainment_sampled(f)
    assert abs(att.sup_norm - 1) < 1e-6
    reps = sorted(r[0] for r in att.representatives(f.grid))
    assert att.n_components == 2
    assert abs(reps[0] - 0.5) < 1e-3 and abs(reps[1] - 1.5) < 1e-3


def test_constant_and_endpoint():
    f = on_interval(lambda u: np.full_like(u, 3.0), 0.0, 1.0, 51)
    att = attainment_sampled(f)
    assert len(att.indices) == 51 and att.n_components == 1
    f = on_interval(lambda u: u, 0.0, 1.0, 101)
    att = attainment_sampled(f)
    assert att.indices.tolist() == [100]


def test_refinement_moves_components_less_than_a_step():
    fn = lambda u: np.stack([np.sin(np.pi * u), 0.3 * np.cos(3 * u)], axis=-1)
    coarse = on_interval(fn, 0.0, 2.0, 401)
    fine = on_interval(fn, 0.0, 2.0, 801)
    step = 2.0 / 400
    rc = sorted(r[0] for r in attainment_sampled(coarse).representatives(coarse.grid))
    rf = sorted(r[0] for r in attainment_sampled(fine).representatives(fine.grid))
    assert len(rc) == len(rf)
    assert all(abs(a - b) < step for a, b in zip(rc, rf))


def test_antipodal_identification():
    grid, adj, anti = circle_grid(64)
    # |<u, e1>| peaks at both e1 and -e1
    f = SampledFunction(grid, grid[:, :1], adj, NormSpec.euclidean(1), anti)
    assert attainment_sampled(f, eps_att=1e-12).n_components == 2
    assert attainment_sampled(f, eps_att=1e-12, identify_antipodes=True).n_components == 1


def test_empty_rejected():
    grid, adj = interval_grid(0, 1, 2)
    with pytest.raises(ValueError):
        SampledFunction(grid[:0], np.zeros((0, 1)), adj[:0], NormSpec.euclidean(1))
