"""Real bilinear forms ``T_A(x, y) = <x, A y>`` on Euclidean spaces."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .attainment import DEFAULT_GAP_TOL, TopSingularData, top_singular
from .certificate import OrthCertificate, Verdict
from .matrix_orth import bhatia_semrl_check
from .primitives import DEFAULT_TOL


@dataclass(frozen=True)
class BilinearForm:
    A: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        if A.ndim != 2:
            raise ValueError(f"a bilinear form needs an m x n matrix, got shape {A.shape}")
        object.__setattr__(self, "A", A)

    @property
    def shape(self):
        return self.A.shape

    def __call__(self, x, y) -> float:
        return bilinear_eval(self, x, y)

    def __add__(self, other: "BilinearForm") -> "BilinearForm":
        return BilinearForm(self.A + other.A)

    def __mul__(self, scalar: float) -> "BilinearForm":
        return BilinearForm(scalar * self.A)

    __rmul__ = __mul__


def bilinear_eval(F: BilinearForm, x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m, n = F.A.shape
    if x.shape != (m,) or y.shape != (n,):
        raise ValueError(f"form is {m} x {n}; got x of shape {x.shape} and y of shape {y.shape}")
    return float(x @ (F.A @ y))


def bilinear_norm(F: BilinearForm) -> float:
    """Sup of ``|T_A(x, y)|`` over unit pairs, which is the spectral norm of A."""
    if not np.any(F.A):
        return 0.0
    return top_singular(F.A).sigma_max


@dataclass(frozen=True)
class BilinearAttainment:
    """The pairs ``(+-Ay/||A||, y)`` with ``y`` on the unit sphere of the top subspace."""

    A: np.ndarray
    top: TopSingularData

    def pair(self, coords, sign: int = 1):
        """Member of the attainment set for ``y = basis @ coords`` (coords normalised)."""
        c = np.asarray(coords, dtype=float).reshape(-1)
        y = self.top.basis @ (c / np.linalg.norm(c))
        return sign * (self.A @ y) / self.top.sigma_max, y

    def pairs(self):
        """All members when the top subspace is a line: y = +-v, both signs of x."""
        if self.top.dim != 1:
            raise ValueError("attainment set is infinite (top subspace has dimension > 1)")
        out = []
        for ys in (1, -1):
            for xs in (1, -1):
                x, y = self.pair([ys], xs)
                out.append((x, y))
        return out

    def sample(self, count: int, seed: int = 0):
        rng = np.random.default_rng(seed)
        out = []
        for _ in range(count):
            c = rng.standard_normal(self.top.dim)
            out.append(self.pair(c, 1 if rng.random() < 0.5 else -1))
        return out


def bilinear_attainment(F: BilinearForm, gap_tol: float = DEFAULT_GAP_TOL) -> BilinearAttainment:
    if not np.any(F.A):
        raise ValueError("the zero form attains its norm everywhere; no structure to report")
    return BilinearAttainment(F.A, top_singular(F.A, gap_tol))


def bilinear_orth_check(F: BilinearForm, G: BilinearForm, tol: float = DEFAULT_TOL,
                        gap_tol: float = DEFAULT_GAP_TOL) -> OrthCertificate:
    """``T_A _|_B T_B`` iff ``T_B(x0, y0) = 0`` for some ``(x0, y0)`` in the attainment set of ``T_A``.

    With ``x0 = Ay0/||Ay0||`` this is the matrix criterion on the top singular
    subspace; the matrix witness is lifted to the pair, signed so that
    ``T_A(x0, y0) = +||T_A||``.
    """
    if F.shape != G.shape:
        raise ValueError(f"shape mismatch: {F.shape} vs {G.shape}")
    cert = bhatia_semrl_check(F.A, G.A, tol=tol, gap_tol=gap_tol)
    cert.level = "bilinear"
    if cert.orthogonal and cert.witness is not None:
        y0 = cert.witness
        Ay = F.A @ y0
        x0 = Ay / np.linalg.norm(Ay)
        cert.witness = (x0, y0)
        cert.residuals["form_a"] = bilinear_eval(F, x0, y0)
        cert.residuals["form_b"] = bilinear_eval(G, x0, y0)
    return cert
