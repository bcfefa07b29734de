import math

import numpy as np
import pytest

from bjorth import oracle
from bjorth.attainment import attainment_sampled
from bjorth.function_orth import (HypothesisError, component_equivalence, connected_witness,
                                  function_orth_check, sup_norm)
from bjorth.norms import NormSpec
from bjorth.primitives import is_bj_orthogonal
from bjorth.sampled import SampledFunction, circle_grid, interval_grid, on_interval
from bjorth.selfcheck import random_function_pair


@pytest.fixture
def sin_pair():
    f = on_interval(lambda u: np.sin(np.pi * u), 0.0, 2.0, 2001)
    return f, f.with_values(np.ones_like(f.values))


@pytest.fixture
def rotating():
    fn = lambda u: np.stack([np.cos(u), np.sin(u)], axis=-1)
    f = on_interval(fn, 0.0, np.pi, 301)
    gv = np.stack([-np.sin(f.grid[:, 0]), np.cos(f.grid[:, 0])], axis=1)
    return f, f.with_values(gv)


def test_sup_norm_examples(sin_pair):
    f, g = sin_pair
    assert abs(sup_norm(f) - 1) < 1e-6
    assert sup_norm(g) == 1.0
    assert sup_norm(f.with_values(np.zeros_like(f.values))) == 0.0


def test_sin_example(sin_pair):
    f, g = sin_pair
    c = function_orth_check(f, g, tol=1e-6)
    assert c.orthogonal
    u1, u2 = c.witness
    assert abs(u1[0] - 0.5) < 1e-3 and abs(u2[0] - 1.5) < 1e-3
    with pytest.raises(HypothesisError):
        connected_witness(f, g, tol=1e-6)
    for comp in attainment_sampled(f).components:
        r = component_equivalence(f, g, comp, tol=1e-6)
        assert (r.two_sided_witnesses, r.pointwise_witness) == (False, False)


def test_self_is_not_orthogonal(sin_pair):
    f, _ = sin_pair
    c = function_orth_check(f, f)
    assert not c.orthogonal
    assert abs(c.lambda_star + 1) < 1e-6 and c.min_value < 1e-6


def test_rotating_frame(rotating):
    f, g = rotating
    assert function_orth_check(f, g).orthogonal
    assert len(attainment_sampled(f).indices) == len(f)
    u0 = connected_witness(f, g)
    assert u0 is not None
    comp = attainment_sampled(f).components[0]
    r = component_equivalence(f, g, comp)
    assert r.two_sided_witnesses and r.pointwise_witness


def test_linf_plateau_witness():
    fn = lambda u: np.stack([np.ones_like(u), u * (1 - u)], axis=-1)
    f = on_interval(fn, 0.0, 1.0, 201, space=NormSpec.lp(math.inf, 2))
    g = f.with_values(np.tile([0.0, 1.0], (len(f), 1)))
    u0 = connected_witness(f, g)
    assert u0 is not None
    i = int(np.argmin(np.abs(f.grid[:, 0] - u0[0])))
    assert is_bj_orthogonal(f.space, f.values[i], g.values[i]).orthogonal
    o = oracle.oracle_orth(oracle.function_line(f.values, g.values, f.space), 1.0, 1.0)
    assert o.orthogonal


def test_engineered_single_component():
    # M_f is a whole arc; g turns from the plus cone to the minus cone along it
    fn = lambda u: np.stack([np.cos(u), np.sin(u)], axis=-1)
    f = on_interval(fn, 0.0, 1.0, 201)
    u = f.grid[:, 0]
    g = f.with_values(np.stack([np.cos(u) * (u - 0.37), np.sin(u) * (u - 0.37)], axis=1) + 0.2 * np.stack([-np.sin(u), np.cos(u)], axis=1))
    comp = attainment_sampled(f, eps_att=1e-6).components[0]
    r = component_equivalence(f, g, comp)
    assert r.two_sided_witnesses and r.pointwise_witness


def test_errors(sin_pair):
    f, g = sin_pair
    other = on_interval(lambda u: u, 0.0, 1.0, 11)
    with pytest.raises(ValueError):
        function_orth_check(f, other)
    with pytest.raises(HypothesisError):
        component_equivalence(f, g, [10, 20])
    zero = f.with_values(np.zeros_like(f.values))
    c = function_orth_check(zero, g)
    assert c.orthogonal and c.degenerate


def test_circle_domain_with_antipodes():
    grid, adj, anti = circle_grid(360)
    f = SampledFunction(grid, grid.copy(), adj, NormSpec.euclidean(2), anti)
    g = f.with_values(np.tile([1.0, 0.0], (len(f), 1)))
    assert function_orth_check(f, g, identify_antipodes=True).orthogonal
    assert attainment_sampled(f, identify_antipodes=True).n_components == 1


def test_sufficiency_and_refinement(rng):
    # a pointwise witness in M_f forces orthogonality; verdicts survive a doubled grid
    labels = ("l1", "l2", "linf")
    for k in range(18):
        dim = 1 + k % 3
        space = {"l1": NormSpec.lp(1, dim), "l2": NormSpec.euclidean(dim),
                 "linf": NormSpec.lp(math.inf, dim)}[labels[k % 3]]
        seed = int(rng.integers(1 << 30))
        family = ("generic", "mirror", "pinned")[k % 3]
        f, g = random_function_pair(np.random.default_rng(seed), family, dim, space, 401)
        f2, g2 = random_function_pair(np.random.default_rng(seed), family, dim, space, 801)
        att = attainment_sampled(f, eps_att=1e-12)
        if any(is_bj_orthogonal(space, f.values[i], g.values[i]).orthogonal for i in att.indices):
            o = oracle.oracle_orth(oracle.function_line(f.values, g.values, space),
                                   sup_norm(f), sup_norm(g))
            assert o.orthogonal
        if family == "generic":
            margins = [oracle.oracle_orth(oracle.function_line(a.values, b.values, space),
                                          sup_norm(a), sup_norm(b)).margin for a, b in ((f, g), (f2, g2))]
            if min(margins) > 1e-6:
                assert function_orth_check(f, g).orthogonal == function_orth_check(f2, g2).orthogonal
