"""Birkhoff-James orthogonality of matrices.

``bhatia_semrl_check`` handles the spectral norm: ``A _|_B B`` exactly when
some unit ``y0`` in the top singular subspace of ``A`` has
``<A y0, B y0> = 0``.  On that subspace ``y -> <Ay, By>`` is the quadratic
form of ``S = (A^T B + B^T A)/2`` restricted to the basis, so the question is
whether the restricted form has a zero on the unit sphere, i.e. whether its
extreme eigenvalues straddle 0.

``operator_orth_check`` handles operators on (R^n, l_p): it locates the
attainment set ``M_T`` on the unit sphere and looks for one point ``x`` with
``Ax`` in the cone ``(Tx)^+`` and one ``y`` with ``Ay`` in ``(Ty)^-``.
"""

from __future__ import annotations

import functools
import math

import numpy as np

from .attainment import (DEFAULT_GAP_TOL, attainment_sampled, jacobi_eigh,
                         top_singular)
from .certificate import OrthCertificate, Verdict
from .norms import EUCLIDEAN, LP, NormSpec, norm, norm_rows
from .primitives import DEFAULT_TOL, ConeSide, golden_section, one_sided_derivative
from .sampled import (SampledFunction, match_antipodes, proximity_adjacency,
                      quasi_random_sphere)

# attainment ties at the decision level: only rounding-level differences
TIE_EPS = 1e-12
DEFAULT_SPHERE_SAMPLES = 2048
_REFINE_STARTS = 16
_REFINE_ITERS = 20_000
_MAX_CUBE_DIM = 16


def _check_pair(A, B):
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim != 2:
        raise ValueError(f"A must be a matrix, got shape {A.shape}")
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch: A is {A.shape}, B is {B.shape}")
    return A, B


def _zero_of_form(w, U):
    """Unit vector ``c`` with ``c^T diag(w) c`` as close to 0 as the spectrum allows."""
    lo, hi = w[0], w[-1]
    if lo <= 0.0 <= hi:
        if hi == lo:
            return U[:, 0]
        # hi*a^2 + lo*b^2 = 0 with a^2 + b^2 = 1
        a = math.sqrt(-lo / (hi - lo))
        b = math.sqrt(hi / (hi - lo))
        return a * U[:, -1] + b * U[:, 0]
    return U[:, int(np.argmin(np.abs(w)))]


def _spectral(M) -> float:
    return float(np.linalg.norm(M, 2))


def _descent_evidence(norm_of, A, B, base, direction_norm, side, tol):
    """Minimiser of ``lam -> norm_of(A + lam*B)`` on the half-line where it decreases."""
    R = 2.0 * base / direction_norm
    lo, hi = (0.0, R) if side > 0 else (-R, 0.0)
    lam, val, _ = golden_section(lambda t: norm_of(A + t * B), lo, hi, tol)
    return float(lam), float(val)


def bhatia_semrl_check(A, B, tol: float = DEFAULT_TOL,
                       gap_tol: float = DEFAULT_GAP_TOL) -> OrthCertificate:
    A, B = _check_pair(A, B)
    notes = []
    details = {}
    if A.shape[1] == 1:
        notes.append("n = 1: the criterion reduces to <a, b> = 0")
        details["n_equals_one"] = True
    if not np.any(A):
        return OrthCertificate(Verdict.ORTHOGONAL, "matrix", degenerate=True,
                               notes=notes + ["A = 0: orthogonal by convention"])
    top = top_singular(A, gap_tol)
    P = top.basis
    norm_a = top.sigma_max
    details.update(top_dim=top.dim, sigma_max=norm_a, gap=top.gap)
    if not np.any(B):
        p0 = P[:, 0] if P[np.argmax(np.abs(P[:, 0])), 0] > 0 else -P[:, 0]
        return OrthCertificate(Verdict.ORTHOGONAL, "matrix", witness=p0, degenerate=True,
                               details=details, notes=notes + ["B = 0: orthogonal by convention"])
    norm_b = top_singular(B, gap_tol).sigma_max
    S = 0.5 * (A.T @ B + B.T @ A)
    w, U = jacobi_eigh(P.T @ S @ P)
    tol_eff = tol * norm_a * norm_b
    residuals = {"lambda_min": w[0], "lambda_max": w[-1], "tol_eff": tol_eff}
    if w[0] <= tol_eff and w[-1] >= -tol_eff:
        y0 = P @ _zero_of_form(w, U)
        y0 /= np.linalg.norm(y0)
        if y0[np.argmax(np.abs(y0))] < 0:
            y0 = -y0  # fixed sign so that output is reproducible
        Ay, By = A @ y0, B @ y0
        residuals.update(pairing=float(Ay @ By), attain_gap=norm_a - float(np.linalg.norm(Ay)))
        return OrthCertificate(Verdict.ORTHOGONAL, "matrix", witness=y0,
                               residuals=residuals, details=details, notes=notes)
    # d/dlam sigma_max(A + lam B) is lambda_max/||A|| at 0+ and lambda_min/||A|| at 0-
    side = 1 if w[-1] < -tol_eff else -1
    lam, val = _descent_evidence(_spectral, A, B, norm_a, norm_b, side, tol)
    return OrthCertificate(Verdict.NOT_ORTHOGONAL, "matrix", lambda_star=lam, min_value=val,
                           residuals=residuals, details=details, notes=notes)


# ---------------------------------------------------------------- l_p operators

def _lp_space(space: NormSpec) -> float:
    if space.kind not in (LP, EUCLIDEAN):
        raise ValueError("operator checks need an l_p norm")
    return float(space.p)


def _dual(v, p):
    """Vector ``z`` of unit dual norm with ``<z, v> = ||v||_p``."""
    if p == 2:
        return v / np.linalg.norm(v)
    a = np.abs(v)
    w = np.sign(v) * (a / a.max()) ** (p - 1.0)
    q = p / (p - 1.0)
    return w / np.sum(np.abs(w) ** q) ** (1.0 / q)


def power_refine(T, x, p: float, iters: int = _REFINE_ITERS):
    """Local maximiser of ``||Tx||_p`` on the p-sphere by the p-norm power method."""
    T = np.asarray(T, dtype=float)
    space_n = NormSpec.lp(p, T.shape[1])
    space_m = NormSpec.lp(p, T.shape[0])
    x = np.asarray(x, dtype=float)
    x = x / norm(space_n, x)
    q = p / (p - 1.0)
    val = norm(space_m, T @ x)
    for _ in range(iters):
        y = T @ x
        if not np.any(y):
            break
        z = T.T @ _dual(y, p)
        if not np.any(z):
            break
        x_new = _dual(z, q)
        val_new = norm(space_m, T @ x_new)
        if val_new < val * (1.0 - 1e-14):
            break
        step = np.linalg.norm(x_new - x)
        x, val = x_new, val_new
        if step < 1e-14:
            break
    return x, val


def _dedupe(points, tol=1e-8):
    kept = []
    for x in points:
        if all(np.linalg.norm(x - k) > tol for k in kept):
            kept.append(x)
    return np.array(kept)


@functools.lru_cache(maxsize=64)
def _unit_samples(n: int, p: float, samples: int, seed: int) -> np.ndarray:
    """Quasi-random points of the unit p-sphere (cached, read-only)."""
    raw = quasi_random_sphere(n, samples, seed=seed)
    raw = raw / norm_rows(NormSpec.lp(p, n), raw)[:, None]
    raw.setflags(write=False)
    return raw


def _sphere_candidates(T, p, samples, seed):
    """Candidate maximisers of ``||Tx||`` on the unit p-sphere, with topology.

    l1 and linf balls are polytopes and a convex function peaks on vertices,
    so the vertices are the exact candidate set.  Other p: quasi-random
    samples, the best of which are refined by the power method.
    """
    n = T.shape[1]
    if p == 1:
        pts = np.concatenate([np.eye(n), -np.eye(n)])
        idx = np.arange(2 * n)
        anti = (idx + n) % (2 * n)
        i, j = np.triu_indices(2 * n, k=1)
        keep = anti[i] != j
        return pts, np.stack([i[keep], j[keep]], axis=1), anti
    if p == math.inf:
        if n > _MAX_CUBE_DIM:
            raise ValueError(f"linf vertex enumeration limited to n <= {_MAX_CUBE_DIM}")
        codes = np.arange(2 ** n)
        pts = 1.0 - 2.0 * ((codes[:, None] >> np.arange(n)) & 1)
        anti = codes ^ (2 ** n - 1)
        edges = [(c, c ^ (1 << k)) for c in codes for k in range(n) if c < c ^ (1 << k)]
        return pts, np.array(edges, dtype=np.int64).reshape(-1, 2), anti
    space_m = NormSpec.lp(p, T.shape[0])
    raw = _unit_samples(n, p, samples, seed)
    vals = norm_rows(space_m, raw @ T.T)
    starts = raw[np.argsort(-vals, kind="stable")[:_REFINE_STARTS]]
    refined = [power_refine(T, s, p)[0] for s in starts]
    pts = _dedupe(refined + [-r for r in refined])
    anti = match_antipodes(pts, tol=1e-6)
    radius = 2.0 * (4.0 * np.pi / max(samples, 1)) ** (1.0 / max(n - 1, 1))
    return pts, proximity_adjacency(pts, radius), anti


def operator_norm(M, space: NormSpec, samples: int = 256, seed: int = 0) -> float:
    """``||M||_{p->p}``; closed forms for p in {1, 2, inf}, power method otherwise."""
    M = np.asarray(M, dtype=float)
    p = _lp_space(space)
    if not np.any(M):
        return 0.0
    if p == 1:
        return float(np.abs(M).sum(axis=0).max())
    if p == math.inf:
        return float(np.abs(M).sum(axis=1).max())
    if p == 2:
        return top_singular(M).sigma_max
    raw = _unit_samples(M.shape[1], p, samples, seed)
    vals = norm_rows(NormSpec.lp(p, M.shape[0]), raw @ M.T)
    starts = raw[np.argsort(-vals, kind="stable")[:_REFINE_STARTS]]
    return float(max(power_refine(M, x, p)[1] for x in starts))


def operator_orth_check(T, A, space: NormSpec, sphere_samples: int = DEFAULT_SPHERE_SAMPLES,
                        tol: float = DEFAULT_TOL, eps_att: float = TIE_EPS,
                        seed: int = 0) -> OrthCertificate:
    T, A = _check_pair(T, A)
    p = _lp_space(space)
    if space.dim != T.shape[1]:
        space = space.with_dim(T.shape[1])
    codomain = space.with_dim(T.shape[0])
    if not np.any(T):
        return OrthCertificate(Verdict.ORTHOGONAL, "operator", degenerate=True,
                               notes=["T = 0: orthogonal by convention"])
    norm_a = operator_norm(A, space, seed=seed)
    pts, adjacency, anti = _sphere_candidates(T, p, sphere_samples, seed)
    sampled = SampledFunction(pts, pts @ T.T, adjacency, codomain, anti)
    att = attainment_sampled(sampled, eps_att=eps_att, identify_antipodes=anti is not None)
    norm_t = att.sup_norm
    details = {"norm": space.label, "operator_norm": norm_t, "candidates": len(pts),
               "attainment_points": len(att.indices), "components": att.n_components}
    notes = []
    if p in (1, 2, math.inf):
        exact = operator_norm(T, space)
        details["operator_norm_exact"] = exact
        if abs(exact - norm_t) > 1e-9 * exact:
            notes.append("sampled operator norm misses the exact value; increase sphere_samples")
    if norm_a == 0:
        return OrthCertificate(Verdict.ORTHOGONAL, "operator", witness=(pts[att.indices[0]],) * 2,
                               degenerate=True, details=details, notes=notes + ["A = 0"])
    slack = tol * norm_a
    best_plus, best_minus = None, None
    d_plus_max, d_minus_min = -math.inf, math.inf
    for i in att.indices:
        tx, ax = sampled.values[i], A @ pts[i]
        if not np.any(ax):
            dp = dm = 0.0
        else:
            dp = one_sided_derivative(codomain, tx, ax, ConeSide.PLUS)
            dm = one_sided_derivative(codomain, tx, ax, ConeSide.MINUS)
        if dp > d_plus_max:
            d_plus_max, best_plus = dp, i
        if dm < d_minus_min:
            d_minus_min, best_minus = dm, i
    residuals = {"d_plus_max": d_plus_max, "d_minus_min": d_minus_min, "tol_eff": slack}
    if d_plus_max >= -slack and d_minus_min <= slack:
        return OrthCertificate(Verdict.ORTHOGONAL, "operator",
                               witness=(pts[best_plus], pts[best_minus]),
                               residuals=residuals, details=details, notes=notes)
    side = 1 if d_plus_max < -slack else -1
    lam, val = _descent_evidence(lambda M: operator_norm(M, space, seed=seed),
                                 T, A, norm_t, norm_a, side, tol)
    return OrthCertificate(Verdict.NOT_ORTHOGONAL, "operator", lambda_star=lam, min_value=val,
                           residuals=residuals, details=details, notes=notes)
