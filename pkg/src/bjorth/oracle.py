"""Brute-force ground truth for Birkhoff-James orthogonality.

Decides ``F _|_B G`` straight from the definition by minimising the convex
function ``lam -> ||F + lam*G||`` on a bracket: a dense scan followed by a
golden-section polish around the best scan point.  Nothing here consults the
attainment-set characterisations used by the fast checks.

The tolerance convention matches the fast paths: ``F`` counts as orthogonal
to ``G`` when ``||F + lam*G|| + tol*||G||*|lam| >= ||F||`` for every ``lam``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .norms import NormSpec, norm, norm_rows
from .sampled import quasi_random_sphere

SCAN_POINTS = 4001
BRACKET_FACTOR = 2.0 * (1.0 + 1e-3)
_ROUNDING = 64 * np.finfo(float).eps
_CHUNK = 256


@dataclass(frozen=True)
class OracleResult:
    orthogonal: bool
    lambda_star: float
    min_value: float
    margin: float
    penalised_min: float
    radius: float

    @property
    def verdict(self) -> str:
        return "orthogonal" if self.orthogonal else "not_orthogonal"


class Line:
    """``lam -> ||F + lam*G||`` with an optional batched evaluator."""

    def __init__(self, scalar, batch=None):
        self._scalar = scalar
        self._batch = batch

    def __call__(self, lam: float) -> float:
        return float(self._scalar(float(lam)))

    def many(self, lams) -> np.ndarray:
        lams = np.asarray(lams, dtype=float)
        if self._batch is None:
            return np.array([self._scalar(float(t)) for t in lams])
        out = [self._batch(lams[i:i + _CHUNK]) for i in range(0, len(lams), _CHUNK)]
        return np.concatenate(out)


def vector_line(space: NormSpec, x, y) -> Line:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return Line(lambda t: norm(space, x + t * y),
                lambda ts: norm_rows(space, x[None, :] + ts[:, None] * y[None, :]))


def spectral_line(A, B) -> Line:
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    return Line(lambda t: np.linalg.norm(A + t * B, 2),
                lambda ts: np.linalg.svd(A[None] + ts[:, None, None] * B[None], compute_uv=False)[:, 0])


def operator_norm_exact(M, p: float) -> float:
    """``||M||_{p->p}`` for p in {1, 2, inf}: max column sum, spectral norm, max row sum."""
    M = np.asarray(M, dtype=float)
    if p == 1:
        return float(np.abs(M).sum(axis=0).max())
    if p == math.inf:
        return float(np.abs(M).sum(axis=1).max())
    if p == 2:
        return float(np.linalg.norm(M, 2))
    raise ValueError(f"no closed form for the {p}-operator norm")


def operator_line(T, A, p: float) -> Line:
    T = np.asarray(T, dtype=float)
    A = np.asarray(A, dtype=float)
    if p == 2:
        return spectral_line(T, A)
    axis = 1 if p == 1 else 2  # stack axis 0; column sums run over rows
    if p not in (1, math.inf):
        raise ValueError(f"no closed form for the {p}-operator norm")
    return Line(lambda t: operator_norm_exact(T + t * A, p),
                lambda ts: np.abs(T[None] + ts[:, None, None] * A[None]).sum(axis=axis).max(axis=1))


def function_line(f_values, g_values, space: NormSpec) -> Line:
    """``lam -> max_u ||f(u) + lam*g(u)||`` over the sample points."""
    f = np.asarray(f_values, dtype=float)
    g = np.asarray(g_values, dtype=float)
    return Line(lambda t: float(norm_rows(space, f + t * g).max()),
                lambda ts: norm_rows(space, f[None] + ts[:, None, None] * g[None]).max(axis=1))


def oracle_orth(norm_of_sum, base_norm: float, direction_norm: float,
                tol: float = 1e-8, scan_points: int = SCAN_POINTS) -> OracleResult:
    """Decide orthogonality by direct minimisation over ``lam``.

    ``norm_of_sum(lam)`` must be ``||F + lam*G||``; ``base_norm = ||F||`` and
    ``direction_norm = ||G||`` fix the bracket ``|lam| <= ~2||F||/||G||``.
    ``margin`` is the distance of the penalised minimum from the decision
    threshold: how far it dips below ``||F||`` for a refutation, or how far it
    rises one scan step away from 0 otherwise.
    """
    if base_norm == 0 or direction_norm == 0:
        return OracleResult(True, 0.0, float(base_norm), math.inf, float(base_norm), 0.0)
    R = BRACKET_FACTOR * base_norm / direction_norm
    lams = np.linspace(-R, R, scan_points)
    mid = scan_points // 2
    lams[mid] = 0.0
    batch = getattr(norm_of_sum, "many", None)
    vals = batch(lams) if batch is not None else np.array([norm_of_sum(t) for t in lams])
    slope = tol * direction_norm
    pen = vals + slope * np.abs(lams)

    def phi(t):
        return float(norm_of_sum(t))

    def psi(t):
        return phi(t) + slope * abs(t)

    lam_star, min_value = _polish(phi, lams, vals)
    pen_lam, pen_min = _polish(psi, lams, pen)
    orthogonal = pen_min >= base_norm - _ROUNDING * base_norm
    if orthogonal:
        margin = float(min(pen[mid - 1], pen[mid + 1]) - base_norm)
    else:
        margin = float(base_norm - pen_min)
    return OracleResult(bool(orthogonal), lam_star, min_value, margin, pen_min, R)


def _polish(fn, lams, vals):
    """Golden-section refinement between the neighbours of the best scan point."""
    ties = np.flatnonzero(vals == vals.min())
    i = int(ties[np.argmin(np.abs(lams[ties]))])  # on a plateau prefer lam nearest 0
    lo = lams[max(i - 1, 0)]
    hi = lams[min(i + 1, len(lams) - 1)]
    best_x, best_f = float(lams[i]), float(vals[i])
    a, b = lo, hi
    r = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - r * (b - a), a + r * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > 1e-13 * max(1.0, abs(hi - lo)):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - r * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + r * (b - a)
            fd = fn(d)
        for x, fx in ((c, fc), (d, fd)):
            if fx < best_f:
                best_x, best_f = float(x), float(fx)
    return best_x, best_f


def sphere_sup(evaluator, m: int, n: int, samples: int = 10_000, seed: int = 0) -> float:
    """Lower bound on ``sup |F(x, y)|`` over unit pairs from quasi-random samples."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    X = quasi_random_sphere(m, samples, seed=seed)
    Y = quasi_random_sphere(n, samples, seed=seed + 1)
    return float(max(abs(float(evaluator(x, y))) for x, y in zip(X, Y)))
