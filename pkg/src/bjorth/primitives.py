"""Vector-level Birkhoff-James machinery.

``phi(lam) = ||x + lam*y||`` is convex in ``lam``; everything here leans on
that.  A tolerance ``tol`` is a *normalised slope*: ``y`` is treated as lying
in the cone ``x^+`` when the right derivative ``D+(x, y)`` is at least
``-tol * ||y||``.  The line-search verdict uses the matching penalty
``phi(lam) + tol * ||y|| * |lam|`` so that both routes decide the same
question.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .certificate import OrthCertificate, Verdict
from .norms import NormSpec, _as_vector, inner, norm

DEFAULT_TOL = 1e-8
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
# relative size of a norm drop that is indistinguishable from rounding
NOISE_FLOOR = 64 * np.finfo(float).eps

_FIRST_STEP = 1e-2
_MAX_HALVINGS = 40
_QUOTIENT_STALL = 1e-9
_EXTRAPOLATION_STALL = 1e-10


class ConeSide(str, Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class LineSearchResult:
    lambda_star: float
    min_value: float
    iterations: int


def golden_section(fn, lo: float, hi: float, tol: float, max_iter: int = 200):
    """Minimise a unimodal ``fn`` on ``[lo, hi]``.

    Returns ``(x_best, f_best, iterations)`` where ``x_best`` is the best point
    actually evaluated, so ``fn(x_best) == f_best`` exactly.
    """
    a, b = float(lo), float(hi)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    best_x, best_f = (c, fc) if fc <= fd else (d, fd)
    it = 0
    while b - a > tol and it < max_iter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = fn(c)
            if fc < best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = fn(d)
            if fd < best_f:
                best_x, best_f = d, fd
        it += 1
    return best_x, best_f, it


def bracket_radius(norm_x: float, norm_y: float) -> float:
    """Half-width R with every minimiser of ``||x + lam*y||`` inside ``[-R, R]``.

    For ``|lam| > R``: ``||x + lam*y|| >= |lam|*||y|| - ||x|| > ||x||``.
    """
    return 2.0 * norm_x / norm_y


def min_norm_over_line(space: NormSpec, x, y, tol: float = DEFAULT_TOL) -> LineSearchResult:
    x = _as_vector(space, x)
    y = _as_vector(space, y)
    if tol <= 0:
        raise ValueError("tol must be positive")
    ny = norm(space, y)
    if ny == 0:
        raise ValueError("direction y is zero; the line is a single point")
    nx = norm(space, x)
    if nx == 0:
        return LineSearchResult(0.0, 0.0, 0)
    R = bracket_radius(nx, ny)
    lam, val, it = golden_section(lambda t: norm(space, x + t * y), -R, R, tol)
    if nx <= val:
        lam, val = 0.0, nx
    return LineSearchResult(float(lam), float(val), it)


def _penalised_min(space, x, y, ny, R, tol):
    slope = tol * ny

    def psi(t):
        return norm(space, x + t * y) + slope * abs(t)

    # psi has a kink at 0, so search each half-line separately
    left = golden_section(psi, -R, 0.0, tol)
    right = golden_section(psi, 0.0, R, tol)
    lam, val, _ = left if left[1] <= right[1] else right
    return float(lam), float(val)


def _right_derivative(space, x, y, nx):
    ny = norm(space, y)
    if ny == 0:
        return 0.0
    t = _FIRST_STEP * nx / ny
    q_prev = (norm(space, x + t * y) - nx) / t
    r_prev = None
    r = q_prev
    for _ in range(_MAX_HALVINGS):
        t *= 0.5
        q = (norm(space, x + t * y) - nx) / t
        r = 2.0 * q - q_prev  # removes the O(t) term of a smooth norm
        noise = 8.0 * np.finfo(float).eps * nx / t  # rounding in the quotient
        if abs(q - q_prev) < _QUOTIENT_STALL * ny:
            return r
        if r_prev is not None and abs(r - r_prev) < max(_EXTRAPOLATION_STALL * ny, noise):
            return r
        q_prev, r_prev = q, r
    return r


def one_sided_derivative(space: NormSpec, x, y, side) -> float:
    """``D+(x, y) = lim_{t->0+} (||x+ty|| - ||x||)/t``, or ``D-`` for the minus side.

    The difference quotient of a convex function is monotone in ``t``, so
    successive halvings close in on the limit from one side; a Richardson
    step removes the first-order bias on smooth norms.
    """
    side = ConeSide(side)
    x = _as_vector(space, x)
    y = _as_vector(space, y)
    nx = norm(space, x)
    if nx == 0:
        raise ValueError("one-sided derivative is undefined at x = 0")
    if space.is_euclidean:
        return inner(x, y) / nx
    if side is ConeSide.PLUS:
        return _right_derivative(space, x, y, nx)
    return -_right_derivative(space, x, -y, nx)


def in_cone(space: NormSpec, x, y, side, tol: float = DEFAULT_TOL) -> bool:
    """Membership of ``y`` in ``x^+`` (side plus) or ``x^-`` (side minus)."""
    side = ConeSide(side)
    ny = norm(space, _as_vector(space, y))
    if ny == 0:
        return True
    d = one_sided_derivative(space, x, y, side)
    if side is ConeSide.PLUS:
        return d >= -tol * ny
    return d <= tol * ny


def is_bj_orthogonal(space: NormSpec, x, y, tol: float = DEFAULT_TOL) -> OrthCertificate:
    x = _as_vector(space, x)
    y = _as_vector(space, y)
    nx, ny = norm(space, x), norm(space, y)
    if nx == 0 or ny == 0:
        return OrthCertificate(
            Verdict.ORTHOGONAL, "vector", degenerate=True,
            residuals={"norm_x": nx, "norm_y": ny},
            notes=["zero vector: orthogonal by convention"],
        )
    d_plus = one_sided_derivative(space, x, y, ConeSide.PLUS)
    d_minus = one_sided_derivative(space, x, y, ConeSide.MINUS)
    line = min_norm_over_line(space, x, y, tol)
    R = bracket_radius(nx, ny)
    pen_lam, pen_val = _penalised_min(space, x, y, ny, R, tol)
    drop = nx - pen_val
    residuals = {
        "norm_x": nx,
        "d_plus": d_plus,
        "d_minus": d_minus,
        "penalised_drop": drop,
    }
    if drop <= NOISE_FLOOR * nx:
        return OrthCertificate(Verdict.ORTHOGONAL, "vector", residuals=residuals)
    lam, val = line.lambda_star, line.min_value
    if not val < nx:
        lam, val = pen_lam, norm(space, x + pen_lam * y)
    return OrthCertificate(
        Verdict.NOT_ORTHOGONAL, "vector", lambda_star=lam, min_value=val, residuals=residuals,
    )
