"""Randomised agreement batteries: fast characterisation-based checks against the oracle.

Each ``run_*`` function returns a :class:`BatteryReport`.  The acceptance
tests and ``bjorth verify-all`` both drive these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .attainment import attainment_sampled, top_singular
from .bilinear import BilinearForm, bilinear_eval, bilinear_norm, bilinear_orth_check
from .function_orth import (TIE_EPS, component_equivalence, connected_witness,
                            function_orth_check, HypothesisError)
from .matrix_orth import bhatia_semrl_check, operator_orth_check
from .norms import NormSpec, inner, norm
from .primitives import ConeSide, in_cone, is_bj_orthogonal
from .sampled import interval_grid, SampledFunction

MARGIN_EXCLUSION = 1e-9


@dataclass
class BatteryReport:
    name: str
    cases: int = 0
    excluded: int = 0
    excluded_agreeing: int = 0
    orthogonal: int = 0
    failures: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str):
        self.failures.append(message)

    def summary(self) -> dict:
        return {
            "name": self.name, "passed": self.passed, "cases": self.cases,
            "excluded": self.excluded,
            "excluded_agreeing": self.excluded_agreeing, "orthogonal": self.orthogonal,
            "failures": self.failures[:10], "checks": self.checks,
        }


# ------------------------------------------------------------------ generators

MATRIX_FAMILIES = ("iid", "repeated_top", "orthogonal_b")


def random_matrix_pair(rng, m: int, n: int, family: str):
    """A pair (A, B): iid entries in [-1, 1], A with a doubled top singular
    value, or B engineered so that <Ay, By> = 0 at the top singular vector y."""
    A = rng.uniform(-1, 1, (m, n))
    B = rng.uniform(-1, 1, (m, n))
    if family == "repeated_top" and min(m, n) >= 2:
        U, s, Vt = np.linalg.svd(A, full_matrices=False)
        s = s.copy()
        s[1] = s[0]
        A = (U * s) @ Vt
    elif family == "orthogonal_b":
        U, s, Vt = np.linalg.svd(A)
        y = Vt[0]
        Ay = A @ y
        B = B - (Ay @ (B @ y)) / (Ay @ Ay) * np.outer(Ay, y)
    return A, B


def _trig(rng, u, dim, degree=3):
    k = np.arange(degree + 1)
    a = rng.standard_normal((dim, degree + 1)) / (1 + k)
    b = rng.standard_normal((dim, degree + 1)) / (1 + k)
    ph = np.pi * np.outer(u, k)
    return np.cos(ph) @ a.T + np.sin(ph) @ b.T


FUNCTION_FAMILIES = ("generic", "mirror", "pinned")


def random_function_pair(rng, family: str, dim: int, space: NormSpec, points: int = 1001):
    """Random trigonometric polynomials on [0, 2] sampled on ``points`` points.

    ``mirror``: f(u_{N-1-i}) = -f(u_i) exactly, so the sup is attained at two
    mirrored points.  ``pinned``: g is shifted by a multiple of f so that the
    cones at the argmax of f straddle 0.
    """
    grid, adjacency = interval_grid(0.0, 2.0, points)
    u = grid[:, 0]
    f = _trig(rng, u, dim)
    g = _trig(rng, u, dim)
    if family == "mirror":
        f = f - f[::-1]
    elif family == "pinned":
        from .primitives import one_sided_derivative

        norms_f = np.array([norm(space, r) for r in f])
        i = int(np.argmax(norms_f))
        x, h = f[i], g[i]
        dp = one_sided_derivative(space, x, h, ConeSide.PLUS)
        dm = one_sided_derivative(space, x, h, ConeSide.MINUS)
        g = g - (0.5 * (dp + dm) / norms_f[i]) * f
    F = SampledFunction(grid, f, adjacency, space)
    return F, F.with_values(g)


def random_cone_pair(rng, space: NormSpec, family: str):
    n = space.dim
    x = rng.standard_normal(n)
    y = rng.standard_normal(n)
    if family == "kinked":
        # zero entries (l1) and tied extreme entries (linf) make the norm non-smooth at x
        x[rng.random(n) < 0.4] = 0.0
        if not np.any(x):
            x[0] = 1.0
        j, k = rng.choice(n, 2, replace=False) if n >= 2 else (0, 0)
        x[k] = -x[j] if rng.random() < 0.5 else x[j]
        if x[j] == 0:
            x[j] = x[k] = 1.0
        m = np.abs(x).max()
        x[j], x[k] = m * np.sign(x[j] or 1.0), m * np.sign(x[k] or 1.0)
    elif family == "projected" and n >= 2:
        # remove the component along x measured by the gradient of the norm at x
        q = space.p if space.kind == "lp" and 1 < space.p < math.inf else 2.0
        phi = np.sign(x) * np.abs(x) ** (q - 1)
        y = y - (phi @ y) / (phi @ x) * x
    return x, y


# ------------------------------------------------------------------ batteries

def run_matrix_battery(count: int = 500, seed: int = 0, tol: float = 1e-7) -> BatteryReport:
    """Singular-subspace criterion against the spectral-norm oracle."""
    rep = BatteryReport("bhatia_semrl_vs_oracle")
    rng = np.random.default_rng(seed)
    witness_bad = 0
    for k in range(count):
        n = int(rng.integers(2, 7))
        family = MATRIX_FAMILIES[k % len(MATRIX_FAMILIES)]
        A, B = random_matrix_pair(rng, n, n, family)
        cert = bhatia_semrl_check(A, B, tol=tol)
        o = oracle.oracle_orth(oracle.spectral_line(A, B), np.linalg.norm(A, 2),
                               np.linalg.norm(B, 2), tol=tol)
        rep.cases += 1
        if o.margin < MARGIN_EXCLUSION:
            rep.excluded += 1
            rep.excluded_agreeing += int(cert.orthogonal == o.orthogonal)
            continue
        rep.orthogonal += int(o.orthogonal)
        if cert.orthogonal != o.orthogonal:
            rep.fail(f"case {k} ({family}, n={n}): check={cert.verdict.value} oracle={o.verdict}")
        if cert.orthogonal:
            y0 = cert.witness
            na, nb = np.linalg.norm(A, 2), np.linalg.norm(B, 2)
            if not (np.linalg.norm(A @ y0) >= (1 - 1e-8) * na
                    and abs((A @ y0) @ (B @ y0)) <= 1e-8 * na * nb):
                witness_bad += 1
                rep.fail(f"case {k}: witness residuals out of bounds")
    rep.checks["witness_violations"] = witness_bad
    return rep


def run_sin_example(points: int = 2001, tol: float = 1e-6) -> BatteryReport:
    """sin(pi u) against the constant 1 on [0, 2]."""
    rep = BatteryReport("sin_example")
    grid, adjacency = interval_grid(0.0, 2.0, points)
    space = NormSpec.euclidean(1)
    f = SampledFunction(grid, np.sin(np.pi * grid), adjacency, space)
    g = f.with_values(np.ones_like(grid))
    cert = function_orth_check(f, g, tol=tol)
    rep.cases = 1
    rep.orthogonal = int(cert.orthogonal)
    if not cert.orthogonal:
        rep.fail("verdict is not orthogonal")
    att = attainment_sampled(f)
    reps = sorted(float(r[0]) for r in att.representatives(f.grid))
    rep.checks["components"] = reps
    if len(reps) != 2 or abs(reps[0] - 0.5) > 1e-3 or abs(reps[1] - 1.5) > 1e-3:
        rep.fail(f"attainment components {reps} are not near 0.5 and 1.5")
    pointwise = [int(i) for i in att.indices
                 if is_bj_orthogonal(space, f.values[i], g.values[i], tol).orthogonal]
    rep.checks["pointwise_witnesses"] = pointwise
    if pointwise:
        rep.fail(f"grid points {pointwise} of M_f are pointwise witnesses")
    try:
        connected_witness(f, g, tol=tol)
        rep.fail("connected_witness accepted a disconnected attainment set")
    except HypothesisError:
        rep.checks["connected_witness_refused"] = True
    if cert.orthogonal:
        rep.checks["witnesses"] = [float(cert.witness[0][0]), float(cert.witness[1][0])]
    return rep


def run_bilinear_battery(count: int = 300, seed: int = 1, tol: float = 1e-7) -> BatteryReport:
    rep = BatteryReport("bilinear_vs_oracle")
    rng = np.random.default_rng(seed)
    worst_norm = worst_sum = 0.0
    for k in range(count):
        m, n = int(rng.integers(2, 6)), int(rng.integers(2, 6))
        family = MATRIX_FAMILIES[k % len(MATRIX_FAMILIES)]
        A, B = random_matrix_pair(rng, m, n, family)
        F, G = BilinearForm(A), BilinearForm(B)
        sigma = np.linalg.svd(A, compute_uv=False)[0]
        worst_norm = max(worst_norm, abs(bilinear_norm(F) - sigma) / sigma)
        lam = rng.uniform(-3, 3)
        x, y = rng.standard_normal(m), rng.standard_normal(n)
        lhs = bilinear_eval(F, x, y) + lam * bilinear_eval(G, x, y)
        rhs = bilinear_eval(BilinearForm(A + lam * B), x, y)
        worst_sum = max(worst_sum, abs(lhs - rhs))
        cert = bilinear_orth_check(F, G, tol=tol)
        o = oracle.oracle_orth(oracle.spectral_line(A, B), sigma, np.linalg.norm(B, 2), tol=tol)
        rep.cases += 1
        if o.margin < MARGIN_EXCLUSION:
            rep.excluded += 1
            rep.excluded_agreeing += int(cert.orthogonal == o.orthogonal)
            continue
        rep.orthogonal += int(o.orthogonal)
        if cert.orthogonal != o.orthogonal:
            rep.fail(f"case {k} ({family}, {m}x{n}): check={cert.verdict.value} oracle={o.verdict}")
        if cert.orthogonal:
            x0, y0 = cert.witness
            nb = np.linalg.norm(B, 2)
            if not (abs(np.linalg.norm(x0) - 1) <= 1e-10 and abs(np.linalg.norm(y0) - 1) <= 1e-10
                    and bilinear_eval(F, x0, y0) >= (1 - 1e-8) * sigma
                    and abs(bilinear_eval(G, x0, y0)) <= 1e-8 * sigma * nb):
                rep.fail(f"case {k}: lifted witness out of bounds")
    rep.checks["norm_identity_rel_err"] = worst_norm
    rep.checks["sum_identity_abs_err"] = worst_sum
    if worst_norm > 1e-9:
        rep.fail(f"||T_A|| differs from sigma_max by {worst_norm:.3g} (relative)")
    if worst_sum > 1e-12:
        rep.fail(f"T_A + lam T_B differs from T_(A + lam B) by {worst_sum:.3g}")
    return rep


def run_function_battery(count: int = 200, seed: int = 2, tol: float = 1e-8,
                         points: int = 1001) -> BatteryReport:
    rep = BatteryReport("function_vs_oracle")
    rng = np.random.default_rng(seed)
    labels = ("l1", "l2", "linf")
    components_checked = 0
    for k in range(count):
        dim = int(rng.integers(1, 4))
        label = labels[k % 3]
        space = {"l1": NormSpec.lp(1, dim), "l2": NormSpec.euclidean(dim),
                 "linf": NormSpec.lp(math.inf, dim)}[label]
        family = FUNCTION_FAMILIES[(k // 3) % len(FUNCTION_FAMILIES)]
        f, g = random_function_pair(rng, family, dim, space, points)
        cert = function_orth_check(f, g, tol=tol)
        sup_f = float(f.pointwise_norms().max())
        sup_g = float(g.pointwise_norms().max())
        o = oracle.oracle_orth(oracle.function_line(f.values, g.values, space), sup_f, sup_g, tol=tol)
        att = attainment_sampled(f, eps_att=TIE_EPS)
        for comp in att.components:
            report = component_equivalence(f, g, comp, tol=tol)
            components_checked += 1
            if not report.consistent:
                rep.fail(f"case {k} ({family}, {label}, dim={dim}): component {comp.tolist()} "
                         f"gives {report}")
        rep.cases += 1
        if o.margin < MARGIN_EXCLUSION:
            rep.excluded += 1
            rep.excluded_agreeing += int(cert.orthogonal == o.orthogonal)
            continue
        rep.orthogonal += int(o.orthogonal)
        if cert.orthogonal != o.orthogonal:
            rep.fail(f"case {k} ({family}, {label}, dim={dim}): check={cert.verdict.value} "
                     f"oracle={o.verdict} margin={o.margin:.3g}")
    rep.checks["components_checked"] = components_checked
    return rep


CONE_FAMILIES = ("iid", "kinked", "projected")


def cone_spaces(dim: int):
    return {
        "l1": NormSpec.lp(1, dim),
        "l2": NormSpec.euclidean(dim),
        "linf": NormSpec.lp(math.inf, dim),
        "lp:2": NormSpec.lp(2, dim),
        "lp:3": NormSpec.lp(3, dim),
    }


def run_cone_battery(count: int = 1000, seed: int = 3, tol: float = 1e-8) -> BatteryReport:
    rep = BatteryReport("cone_calculus")
    rng = np.random.default_rng(seed)
    tallies = {}
    for label in cone_spaces(2):
        orth = 0
        for k in range(count):
            dim = int(rng.integers(1, 7))
            space = cone_spaces(dim)[label]
            family = CONE_FAMILIES[k % len(CONE_FAMILIES)]
            x, y = random_cone_pair(rng, space, family)
            plus = in_cone(space, x, y, ConeSide.PLUS, tol)
            minus = in_cone(space, x, y, ConeSide.MINUS, tol)
            verdict = is_bj_orthogonal(space, x, y, tol).orthogonal
            orth += int(verdict)
            rep.cases += 1
            if not (plus or minus):
                rep.fail(f"{label} case {k}: y in neither cone")
            if verdict != (plus and minus):
                rep.fail(f"{label} case {k} ({family}): orthogonal={verdict} plus={plus} minus={minus}")
            if label == "l2":
                generic = NormSpec.lp(2, dim)
                for side in ConeSide:
                    fast = in_cone(space, x, y, side, tol)
                    slow = in_cone(generic, x, y, side, tol)
                    slack = tol * np.linalg.norm(x) * np.linalg.norm(y)
                    s = inner(x, y)
                    sign_test = s >= -slack if side is ConeSide.PLUS else s <= slack
                    if not (fast == slow == sign_test):
                        rep.fail(f"l2 case {k} side {side.value}: fast={fast} generic={slow} "
                                 f"sign={sign_test}")
        tallies[label] = orth
        rep.orthogonal += orth
    rep.checks["orthogonal_by_norm"] = tallies
    return rep


def _dyadic(rng, shape):
    return rng.integers(-64, 65, shape) / 64.0


def random_operator_pair(rng, n: int, p: float, family: str):
    """Square pairs for l1/linf operator checks: iid, tied attaining columns/rows,
    or a zero entry in the attaining column/row with A shifted to straddle 0."""
    if family == "iid":
        return rng.uniform(-1, 1, (n, n)), rng.uniform(-1, 1, (n, n))
    T = _dyadic(rng, (n, n))
    A = _dyadic(rng, (n, n))
    M = T if p == 1 else T.T  # work on columns of M = rows of T for linf
    sums = np.abs(M).sum(axis=0)
    j = int(np.argmax(sums))
    if family == "tied":
        i = (j + 1) % n
        M[:, i] = rng.permutation(M[:, j]) * rng.choice([-1.0, 1.0], n)
        others = [c for c in range(n) if c not in (i, j)]
        M[:, others] *= 0.5
    elif family == "kinked":
        M[int(rng.integers(n)), j] = 0.0
        others = [c for c in range(n) if c != j]
        M[:, others] *= 0.5
        if not np.any(M[:, j]):
            M[0, j] = 1.0
    T = M if p == 1 else M.T
    return T, A


def run_operator_battery(count_l2: int = 200, count_lp: int = 100, seed: int = 4,
                         tol: float = 1e-7) -> BatteryReport:
    rep = BatteryReport("operator_consistency")
    rng = np.random.default_rng(seed)
    for k in range(count_l2):
        n = int(rng.integers(2, 7))
        family = ("iid", "orthogonal_b")[k % 2]
        T, A = random_matrix_pair(rng, n, n, family)
        c1 = operator_orth_check(T, A, NormSpec.euclidean(n), tol=tol)
        c2 = bhatia_semrl_check(T, A, tol=tol)
        rep.cases += 1
        rep.orthogonal += int(c2.orthogonal)
        if c1.orthogonal != c2.orthogonal:
            rep.fail(f"l2 case {k} ({family}, n={n}): operator={c1.verdict.value} "
                     f"spectral={c2.verdict.value}")
    for k in range(count_lp):
        n = int(rng.integers(2, 6))
        p = (1.0, math.inf)[k % 2]
        family = ("iid", "tied", "kinked")[(k // 2) % 3]
        T, A = random_operator_pair(rng, n, p, family)
        space = NormSpec.lp(p, n)
        cert = operator_orth_check(T, A, space, tol=tol)
        o = oracle.oracle_orth(oracle.operator_line(T, A, p), oracle.operator_norm_exact(T, p),
                               oracle.operator_norm_exact(A, p), tol=tol)
        rep.cases += 1
        if o.margin < MARGIN_EXCLUSION:
            rep.excluded += 1
            rep.excluded_agreeing += int(cert.orthogonal == o.orthogonal)
            continue
        rep.orthogonal += int(o.orthogonal)
        if cert.orthogonal != o.orthogonal:
            rep.fail(f"{space.label} case {k} ({family}, n={n}): operator={cert.verdict.value} "
                     f"oracle={o.verdict}")
    return rep


BATTERIES = {
    "bhatia_semrl": run_matrix_battery,
    "sin_example": run_sin_example,
    "bilinear": run_bilinear_battery,
    "functions": run_function_battery,
    "cones": run_cone_battery,
    "operators": run_operator_battery,
}
