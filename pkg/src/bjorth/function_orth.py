"""Orthogonality in C(U, X) for functions sampled on a grid.

``f _|_B g`` iff some ``u1`` in the attainment set ``M_f`` has ``g(u1)`` in
``f(u1)^+`` and some ``u2`` in ``M_f`` has ``g(u2)`` in ``f(u2)^-``.  On a
connected piece of ``M_f`` that pair of conditions is equivalent to a single
point where ``f(u) _|_B g(u)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .attainment import attainment_sampled
from .certificate import OrthCertificate, Verdict
from .norms import norm
from .primitives import (DEFAULT_TOL, ConeSide, golden_section, is_bj_orthogonal,
                         one_sided_derivative)
from .sampled import SampledFunction

# attainment at the decision level: the grid argmax up to rounding
TIE_EPS = 1e-12


class HypothesisError(ValueError):
    """A theorem's hypothesis (connected attainment set) does not hold."""


def sup_norm(f: SampledFunction) -> float:
    if len(f) == 0:
        raise ValueError("empty sampled function")
    return float(f.pointwise_norms().max())


def _check_grids(f: SampledFunction, g: SampledFunction):
    if not f.same_grid(g):
        raise ValueError("f and g are sampled on different grids")
    if f.space != g.space:
        raise ValueError("f and g take values in different normed spaces")


@dataclass(frozen=True)
class _PointSlopes:
    index: int
    d_plus: float
    d_minus: float


def _slopes(f, g, indices):
    out = []
    for i in indices:
        fx, gx = f.values[i], g.values[i]
        if not np.any(gx):
            out.append(_PointSlopes(int(i), 0.0, 0.0))
            continue
        out.append(_PointSlopes(int(i),
                                one_sided_derivative(f.space, fx, gx, ConeSide.PLUS),
                                one_sided_derivative(f.space, fx, gx, ConeSide.MINUS)))
    return out


def function_orth_check(f: SampledFunction, g: SampledFunction, tol: float = DEFAULT_TOL,
                        eps_att: float = TIE_EPS, identify_antipodes: bool = False) -> OrthCertificate:
    _check_grids(f, g)
    sup_g = sup_norm(g)
    if sup_norm(f) == 0 or sup_g == 0:
        return OrthCertificate(Verdict.ORTHOGONAL, "function", degenerate=True,
                               notes=["zero function: orthogonal by convention"])
    att = attainment_sampled(f, eps_att=eps_att, identify_antipodes=identify_antipodes)
    slack = tol * sup_g
    slopes = _slopes(f, g, att.indices)
    plus = max(slopes, key=lambda s: (s.d_plus, -s.index))
    minus = min(slopes, key=lambda s: (s.d_minus, s.index))
    details = {"sup_norm": att.sup_norm, "attainment_points": len(att.indices),
               "components": att.n_components}
    residuals = {"d_plus_max": plus.d_plus, "d_minus_min": minus.d_minus, "tol_eff": slack}
    if plus.d_plus >= -slack and minus.d_minus <= slack:
        details.update(u1_index=plus.index, u2_index=minus.index)
        return OrthCertificate(Verdict.ORTHOGONAL, "function",
                               witness=(f.grid[plus.index], f.grid[minus.index]),
                               residuals=residuals, details=details)
    lam, val = _descent(f, g, att.sup_norm, sup_g, 1 if plus.d_plus < -slack else -1, tol)
    return OrthCertificate(Verdict.NOT_ORTHOGONAL, "function", lambda_star=lam, min_value=val,
                           residuals=residuals, details=details)


def _descent(f, g, base, sup_g, side, tol):
    R = 2.0 * base / sup_g
    lo, hi = (0.0, R) if side > 0 else (-R, 0.0)
    lam, val, _ = golden_section(lambda t: sup_norm(f.with_values(f.values + t * g.values)),
                                 lo, hi, tol)
    return float(lam), float(val)


def connected_witness(f: SampledFunction, g: SampledFunction, tol: float = DEFAULT_TOL,
                      eps_att: float = TIE_EPS, identify_antipodes: bool = False) -> Optional[np.ndarray]:
    """A grid point ``u0`` of ``M_f`` with ``f(u0) _|_B g(u0)``.

    Requires ``M_f`` to be a single component; returns None when no grid
    point of ``M_f`` is a pointwise witness.  Among witnesses the one with the
    smallest ``|D+| + |D-|`` wins, ties broken by index.
    """
    _check_grids(f, g)
    att = attainment_sampled(f, eps_att=eps_att, identify_antipodes=identify_antipodes)
    if att.n_components != 1:
        raise HypothesisError(
            f"theorem hypothesis violated: attainment set has {att.n_components} components")
    i = _pointwise_witness(f, g, att.indices, tol)
    return None if i is None else f.grid[i]


def _pointwise_witness(f, g, indices, tol):
    best, best_key = None, math.inf
    for s in _slopes(f, g, indices):
        if not is_bj_orthogonal(f.space, f.values[s.index], g.values[s.index], tol).orthogonal:
            continue
        key = abs(s.d_plus) + abs(s.d_minus)
        if key < best_key:
            best, best_key = s.index, key
    return best


@dataclass(frozen=True)
class ComponentReport:
    two_sided_witnesses: bool
    pointwise_witness: bool

    @property
    def consistent(self) -> bool:
        return self.two_sided_witnesses == self.pointwise_witness


def component_equivalence(f: SampledFunction, g: SampledFunction, component,
                          tol: float = DEFAULT_TOL) -> ComponentReport:
    """Evaluate both sides of the component equivalence on one piece of ``M_f``.

    ``two_sided_witnesses``: points of the component in ``f(u)^+`` and in
    ``f(u)^-`` (possibly different points).  ``pointwise_witness``: a single
    point where ``f(u) _|_B g(u)``.
    """
    _check_grids(f, g)
    component = np.unique(np.asarray(component, dtype=np.int64))
    if component.size == 0:
        raise ValueError("empty component")
    if not _is_connected(f, component):
        raise HypothesisError("component is not connected under the grid adjacency")
    two_sided = False
    plus_seen = minus_seen = False
    for s in _slopes(f, g, component):
        ny = norm(f.space, g.values[s.index])
        plus_seen |= s.d_plus >= -tol * ny
        minus_seen |= s.d_minus <= tol * ny
        if plus_seen and minus_seen:
            two_sided = True
            break
    pointwise = _pointwise_witness(f, g, component, tol) is not None
    return ComponentReport(two_sided, pointwise)


def _is_connected(f, component):
    member = set(component.tolist())
    adj: dict = {i: [] for i in member}
    for a, b in f.adjacency:
        if a in member and b in member:
            adj[a].append(b)
            adj[b].append(a)
    if f.antipodes is not None:
        for a in member:
            b = int(f.antipodes[a])
            if b in member:
                adj[a].append(b)
                adj[b].append(a)
    start = next(iter(member))
    seen, stack = {start}, [start]
    while stack:
        for b in adj[stack.pop()]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(member)

