"""Norms on R^n and the Euclidean inner product.

Every higher-level module evaluates ``||.||`` through :func:`norm` (or the
row-wise :func:`norm_rows`), so a :class:`NormSpec` is the single description
of the normed space ``X`` in play.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

LP = "lp"
EUCLIDEAN = "euclidean"
CUSTOM = "custom"

_VALIDATION_SAMPLES = 100
_VALIDATION_SLACK = 1e-12


class DimensionError(ValueError):
    """Vector length does not match the dimension of the space."""


@dataclass(frozen=True)
class NormSpec:
    kind: str
    dim: int
    p: Optional[float] = None
    evaluator: Optional[Callable[[np.ndarray], float]] = field(default=None, compare=False)

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        if self.kind == LP:
            if self.p is None or not (self.p >= 1):
                raise ValueError(f"lp norm needs p >= 1, got p={self.p!r}")
        elif self.kind == EUCLIDEAN:
            object.__setattr__(self, "p", 2.0)
        elif self.kind == CUSTOM:
            if self.evaluator is None:
                raise ValueError("custom norm needs an evaluator")
        else:
            raise ValueError(f"unknown norm kind {self.kind!r}")

    @classmethod
    def lp(cls, p: float, dim: int) -> "NormSpec":
        return cls(LP, dim, p=float(p))

    @classmethod
    def euclidean(cls, dim: int) -> "NormSpec":
        return cls(EUCLIDEAN, dim)

    @classmethod
    def custom(cls, evaluator, dim: int, validate: bool = True, seed: int = 0) -> "NormSpec":
        """Register a user norm, spot-checking homogeneity and the triangle inequality."""
        spec = cls(CUSTOM, dim, evaluator=evaluator)
        if validate:
            validate_norm(spec, seed=seed)
        return spec

    def with_dim(self, dim: int) -> "NormSpec":
        """Same family of norm on a space of another dimension (not for custom norms)."""
        if self.kind == CUSTOM:
            if dim != self.dim:
                raise ValueError("a custom norm is tied to its dimension")
            return self
        return NormSpec(self.kind, dim, p=self.p)

    @property
    def is_euclidean(self) -> bool:
        return self.kind == EUCLIDEAN

    @property
    def label(self) -> str:
        if self.kind == EUCLIDEAN:
            return "l2"
        if self.kind == CUSTOM:
            return "custom"
        if self.p == math.inf:
            return "linf"
        if self.p == 1:
            return "l1"
        return f"lp:{self.p:g}"


def parse_norm(text: str, dim: int) -> NormSpec:
    """Parse the CLI spelling ``l1 | l2 | linf | lp:<p>``.

    ``l2`` selects the Euclidean fast path; ``lp:2`` the generic one.
    """
    t = text.strip().lower()
    if t == "l1":
        return NormSpec.lp(1.0, dim)
    if t == "l2":
        return NormSpec.euclidean(dim)
    if t in ("linf", "l-inf", "inf"):
        return NormSpec.lp(math.inf, dim)
    m = re.fullmatch(r"lp:(.+)", t)
    if m:
        arg = m.group(1)
        p = math.inf if arg in ("inf", "infinity") else float(arg)
        return NormSpec.lp(p, dim)
    raise ValueError(f"unrecognised norm {text!r}; expected l1, l2, linf or lp:<p>")


def _as_vector(space: NormSpec, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != space.dim:
        raise DimensionError(f"expected a vector of length {space.dim}, got shape {x.shape}")
    return x


def _lp_rows(X: np.ndarray, p: float) -> np.ndarray:
    a = np.abs(X)
    if a.shape[-1] <= 8 and a.ndim > 1 and p in (1, 2, math.inf):
        # numpy reduces a short trailing axis slowly; fold the columns instead
        cols = [a[..., j] for j in range(a.shape[-1])]
        if p == math.inf:
            return functools.reduce(np.maximum, cols)
        if p == 1:
            return functools.reduce(np.add, cols)
        m = functools.reduce(np.maximum, cols)
        safe = np.where(m > 0, m, 1.0)
        return m * np.sqrt(functools.reduce(np.add, [(c / safe) ** 2 for c in cols]))
    if p == math.inf:
        return a.max(axis=-1)
    if p == 1:
        return a.sum(axis=-1)
    # scale by the max modulus so that |x|^p cannot overflow or underflow
    m = a.max(axis=-1)
    safe = np.where(m > 0, m, 1.0)
    return m * np.sum((a / safe[..., None]) ** p, axis=-1) ** (1.0 / p)


def norm(space: NormSpec, x) -> float:
    x = _as_vector(space, x)
    if space.kind == CUSTOM:
        return float(space.evaluator(x))
    return float(_lp_rows(x, space.p))


def norm_rows(space: NormSpec, X) -> np.ndarray:
    """Norm of every row of ``X`` (last axis has length ``space.dim``)."""
    X = np.asarray(X, dtype=float)
    if X.shape[-1] != space.dim:
        raise DimensionError(f"expected rows of length {space.dim}, got shape {X.shape}")
    if space.kind == CUSTOM:
        flat = X.reshape(-1, space.dim)
        out = np.array([float(space.evaluator(r)) for r in flat])
        return out.reshape(X.shape[:-1])
    return _lp_rows(X, space.p)


def inner(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DimensionError(f"inner product of shapes {x.shape} and {y.shape}")
    return float(x @ y)


def validate_norm(space: NormSpec, samples: int = _VALIDATION_SAMPLES, seed: int = 0) -> None:
    """Randomised spot checks of the norm axioms; raises ValueError on failure."""
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x, y = rng.standard_normal((2, space.dim))
        alpha = rng.standard_normal() * 10.0 ** rng.uniform(-3, 3)
        nx, ny = norm(space, x), norm(space, y)
        if not nx > 0:
            raise ValueError(f"custom norm vanishes at non-zero {x}")
        if abs(norm(space, alpha * x) - abs(alpha) * nx) > _VALIDATION_SLACK * abs(alpha) * nx:
            raise ValueError("custom norm is not positively homogeneous")
        if norm(space, x + y) > (nx + ny) * (1 + _VALIDATION_SLACK):
            raise ValueError("custom norm violates the triangle inequality")
    if norm(space, np.zeros(space.dim)) != 0:
        raise ValueError("custom norm is non-zero at the origin")
