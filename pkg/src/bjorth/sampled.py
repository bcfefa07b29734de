"""Vector-valued functions sampled on a finite grid of a compact domain."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .norms import NormSpec, norm_rows


@dataclass(frozen=True)
class SampledFunction:
    """``f: U -> X`` known on grid points ``grid[i]`` with values ``values[i]``.

    ``adjacency`` is an undirected edge list (shape ``(E, 2)``) that stands in
    for the topology of ``U``.  ``antipodes[i]``, when given, is the index of
    the point opposite ``grid[i]`` on a sphere grid.
    """

    grid: np.ndarray
    values: np.ndarray
    adjacency: np.ndarray
    space: NormSpec
    antipodes: Optional[np.ndarray] = None

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        if grid.ndim == 1:
            grid = grid[:, None]
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        adjacency = np.asarray(self.adjacency, dtype=np.int64).reshape(-1, 2)
        n = grid.shape[0]
        if n < 1:
            raise ValueError("a sampled function needs at least one grid point")
        if values.shape[0] != n:
            raise ValueError(f"{n} grid points but {values.shape[0]} values")
        if values.shape[1] != self.space.dim:
            raise ValueError(f"values have dimension {values.shape[1]}, norm expects {self.space.dim}")
        if adjacency.size and (adjacency.min() < 0 or adjacency.max() >= n):
            raise ValueError("adjacency refers to a grid index out of range")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "adjacency", adjacency)
        if self.antipodes is not None:
            anti = np.asarray(self.antipodes, dtype=np.int64)
            if anti.shape != (n,) or anti.min() < 0 or anti.max() >= n:
                raise ValueError("antipodes must map every grid index to a grid index")
            object.__setattr__(self, "antipodes", anti)

    def __len__(self):
        return self.grid.shape[0]

    def pointwise_norms(self) -> np.ndarray:
        return norm_rows(self.space, self.values)

    def with_values(self, values) -> "SampledFunction":
        """Another function on the same grid and topology."""
        return SampledFunction(self.grid, values, self.adjacency, self.space, self.antipodes)

    def same_grid(self, other: "SampledFunction") -> bool:
        return self.grid.shape == other.grid.shape and np.array_equal(self.grid, other.grid)


def interval_grid(a: float, b: float, n: int):
    """``n`` uniform points of ``[a, b]`` with successor adjacency."""
    grid = np.linspace(a, b, n)
    idx = np.arange(n - 1)
    return grid[:, None], np.stack([idx, idx + 1], axis=1)


def product_grid(axes):
    """Cartesian product of 1-D coordinate arrays, adjacent along each axis."""
    axes = [np.asarray(a, dtype=float) for a in axes]
    shape = tuple(len(a) for a in axes)
    mesh = np.meshgrid(*axes, indexing="ij")
    grid = np.stack([m.ravel() for m in mesh], axis=1)
    ids = np.arange(grid.shape[0]).reshape(shape)
    edges = []
    for k in range(len(axes)):
        lo = np.take(ids, np.arange(shape[k] - 1), axis=k).ravel()
        hi = np.take(ids, np.arange(1, shape[k]), axis=k).ravel()
        edges.append(np.stack([lo, hi], axis=1))
    return grid, np.concatenate(edges) if edges else np.zeros((0, 2), dtype=np.int64)


def circle_grid(n: int):
    """``n`` equally spaced points of the unit circle, cyclic adjacency.

    Returns ``(grid, adjacency, antipodes)``; antipodes exist for even ``n``.
    """
    theta = 2.0 * np.pi * np.arange(n) / n
    grid = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    idx = np.arange(n)
    adjacency = np.stack([idx, (idx + 1) % n], axis=1)
    antipodes = (idx + n // 2) % n if n % 2 == 0 else None
    return grid, adjacency, antipodes


def proximity_adjacency(points, radius: float) -> np.ndarray:
    """Edges between points closer than ``radius`` (Euclidean)."""
    points = np.asarray(points, dtype=float)
    diff = points[:, None, :] - points[None, :, :]
    close = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff)) < radius
    i, j = np.nonzero(np.triu(close, k=1))
    return np.stack([i, j], axis=1)


def match_antipodes(points, tol: float = 1e-9) -> Optional[np.ndarray]:
    """Index of ``-p`` for every point ``p``, or None when some point has no partner."""
    points = np.asarray(points, dtype=float)
    diff = points[:, None, :] + points[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    j = dist.argmin(axis=1)
    if np.any(dist[np.arange(len(points)), j] > tol):
        return None
    return j


def infer_adjacency(grid) -> np.ndarray:
    """Adjacency for a grid given without one.

    1-D grids are joined in sorted order; k-D grids must be full Cartesian
    products, joined along each axis.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim == 1:
        grid = grid[:, None]
    n, d = grid.shape
    if d == 1:
        order = np.argsort(grid[:, 0], kind="stable")
        return np.stack([order[:-1], order[1:]], axis=1)
    axes = [np.unique(grid[:, k]) for k in range(d)]
    if int(np.prod([len(a) for a in axes])) != n:
        raise ValueError("grid is not a Cartesian product; supply an adjacency list")
    lookup = {tuple(p): i for i, p in enumerate(grid)}
    pos = [{v: i for i, v in enumerate(a)} for a in axes]
    edges = []
    for i, p in enumerate(grid):
        for k in range(d):
            r = pos[k][p[k]]
            if r + 1 < len(axes[k]):
                q = list(p)
                q[k] = axes[k][r + 1]
                edges.append((i, lookup[tuple(q)]))
    return np.array(edges, dtype=np.int64).reshape(-1, 2)


def sample(fn, grid, adjacency, space: NormSpec, antipodes=None) -> SampledFunction:
    """Evaluate ``fn`` at every grid point (a 1-D grid passes scalars)."""
    grid = np.asarray(grid, dtype=float)
    pts = grid[:, 0] if grid.ndim == 2 and grid.shape[1] == 1 else grid
    values = np.array([np.atleast_1d(np.asarray(fn(u), dtype=float)) for u in pts])
    return SampledFunction(grid, values, adjacency, space, antipodes)


def on_interval(fn, a: float, b: float, n: int = 2001, space: Optional[NormSpec] = None) -> SampledFunction:
    """Sample ``fn`` on ``n`` uniform points of ``[a, b]``.

    ``fn`` may be vectorised (array in, ``(n,)`` or ``(n, k)`` out); otherwise
    it is called point by point.
    """
    grid, adjacency = interval_grid(a, b, n)
    u = grid[:, 0]
    try:
        values = np.asarray(fn(u), dtype=float)
        if values.shape[0] != n:
            raise ValueError
    except (TypeError, ValueError, IndexError):
        values = np.array([np.atleast_1d(np.asarray(fn(t), dtype=float)) for t in u])
    if values.ndim == 1:
        values = values[:, None]
    if space is None:
        space = NormSpec.euclidean(values.shape[1])
    return SampledFunction(grid, values, adjacency, space)


__all__ = [
    "SampledFunction", "interval_grid", "product_grid", "circle_grid",
    "proximity_adjacency", "match_antipodes", "infer_adjacency", "sample", "on_interval",
    "quasi_random_sphere",
]



def quasi_random_sphere(dim: int, samples: int, seed: int = 0) -> np.ndarray:
    """Low-discrepancy points on the Euclidean unit sphere of R^dim.

    Scrambled Sobol points pushed through the normal quantile, then normalised.
    """
    from scipy.stats import norm as gaussian, qmc

    m = max(1, int(np.ceil(np.log2(max(samples, 2)))))
    u = qmc.Sobol(dim, scramble=True, seed=seed).random_base2(m)[:samples]
    z = gaussian.ppf(np.clip(u, 1e-12, 1 - 1e-12))
    return z / np.linalg.norm(z, axis=1, keepdims=True)
