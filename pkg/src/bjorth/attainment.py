"""Norm-attainment sets.

For a matrix under the spectral norm the attainment set ``M_A`` is the unit
sphere of the top right-singular subspace, computed here from a cyclic Jacobi
eigendecomposition of ``A^T A``.  For a sampled function it is the set of grid
indices whose pointwise norm reaches the sup, split into connected components
of the grid adjacency.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .norms import NormSpec
from .sampled import SampledFunction

DEFAULT_GAP_TOL = 1e-8
DEFAULT_EPS_ATT = 1e-6


def jacobi_eigh(S, tol: float = 1e-15, max_sweeps: int = 64):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and the
    eigenvectors as orthonormal columns.
    """
    a = np.array(S, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.T, rtol=1e-12, atol=1e-14 * max(1.0, np.abs(a).max(initial=0.0))):
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    v = np.eye(n)
    scale = np.sqrt(np.sum(a * a))
    upper = np.triu_indices(n, k=1)
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(a[upper] ** 2))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(1.0, theta)) if theta != 0 else 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


@dataclass(frozen=True)
class TopSingularData:
    sigma_max: float
    basis: np.ndarray  # n x k, orthonormal columns spanning the top right-singular subspace
    gap: float  # sigma_max minus the next smaller singular value (sigma_max if none)
    singular_values: np.ndarray  # descending

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def top_singular(A, gap_tol: float = DEFAULT_GAP_TOL) -> TopSingularData:
    """Largest singular value of ``A`` and its right-singular subspace.

    Singular values within ``gap_tol`` (relative) of the largest are merged
    into the subspace.  ``gap`` is the distance from ``sigma_max`` to the next
    smaller singular value (to 0 when there is none).
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {A.shape}")
    if not np.any(A):
        raise ValueError("top singular subspace of the zero matrix is undefined")
    w, vecs = jacobi_eigh(A.T @ A)
    sv = np.sqrt(np.clip(w[::-1], 0.0, None))
    vecs = vecs[:, ::-1]
    smax = sv[0]
    top = sv >= smax * (1.0 - gap_tol)
    rest = sv[~top]
    gap = smax - (rest[0] if rest.size else 0.0)
    return TopSingularData(float(smax), vecs[:, top], float(gap), sv)


@dataclass(frozen=True)
class AttainmentSet:
    indices: np.ndarray
    components: list
    sup_norm: float
    norms: np.ndarray

    @property
    def n_components(self) -> int:
        return len(self.components)

    def representatives(self, grid) -> list:
        """Grid point of largest norm inside each component."""
        grid = np.asarray(grid)
        reps = []
        for comp in self.components:
            reps.append(grid[comp[np.argmax(self.norms[comp])]])
        return reps


def attainment_sampled(
    f: SampledFunction,
    space: Optional[NormSpec] = None,
    eps_att: float = DEFAULT_EPS_ATT,
    identify_antipodes: bool = False,
) -> AttainmentSet:
    """Grid indices where ``||f(u)|| >= (1 - eps_att) * sup ||f||``, with components."""
    if len(f) == 0:
        raise ValueError("empty sample set")
    if space is not None and space != f.space:
        f = SampledFunction(f.grid, f.values, f.adjacency, space, f.antipodes)
    norms = f.pointwise_norms()
    sup = float(norms.max())
    indices = np.flatnonzero(norms >= (1.0 - eps_att) * sup)
    return AttainmentSet(indices, _components(f, indices, identify_antipodes), sup, norms)


def _components(f: SampledFunction, indices: np.ndarray, identify_antipodes: bool) -> list:
    n = len(f)
    member = np.zeros(n, dtype=bool)
    member[indices] = True
    edges = f.adjacency
    keep = member[edges[:, 0]] & member[edges[:, 1]] if edges.size else np.zeros(0, dtype=bool)
    edges = edges[keep]
    if identify_antipodes:
        if f.antipodes is None:
            raise ValueError("antipodal identification requested but the grid has no antipodes")
        anti = np.stack([indices, f.antipodes[indices]], axis=1)
        edges = np.concatenate([edges, anti[member[anti[:, 1]]]])
    graph = coo_matrix((np.ones(len(edges)), (edges[:, 0], edges[:, 1])), shape=(n, n))
    _, labels = connected_components(graph, directed=False)
    groups: dict = {}
    for i in indices:
        groups.setdefault(labels[i], []).append(i)
    return sorted((np.array(g) for g in groups.values()), key=lambda g: g[0])
