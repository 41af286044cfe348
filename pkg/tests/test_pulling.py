import random
import warnings
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricpull.cartier import support_from_heights
from toricpull.exactq import dot
from toricpull.fans import ConeError, Fan, cone_from_rays, fan_equal, refines
from toricpull.pulling import admissible_hyperplane, build_config, pull, pull_rays

from conftest import N1, N2, N3, N4, N5, random_pair


def test_admissible_hyperplane(sigma, tau, orthant2):
    assert admissible_hyperplane(sigma, tau) == ((1, 1, 1), 1)
    assert admissible_hyperplane(orthant2, orthant2) == ((1, 1), 1)


def test_tau_outside_sigma_rejected(sigma):
    with pytest.raises(ConeError):
        admissible_hyperplane(sigma, cone_from_rays([(1, -1, 0)]))
    with pytest.raises(ConeError):
        pull(sigma, cone_from_rays([(-1, 0, 0), (0, 1, 0)]))


def test_bad_hyperplanes_rejected(sigma, tau):
    with pytest.raises(ConeError):
        pull(sigma, tau, ((1, 1, 1), 0))
    with pytest.raises(ConeError):
        pull(sigma, tau, ((1, -1, 1), 1))
    with pytest.raises(ConeError):
        pull(sigma, tau, ((1, 1), 1))


def test_sigma_must_be_full_dimensional(tau):
    with pytest.raises(ConeError):
        pull(tau, tau)


def test_example_config(sigma, tau):
    cfg = build_config(sigma, tau, ((1, 1, 1), 1))
    third = F(1, 3)
    assert cfg.points == (
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (2 * third, third, 0),
        (0, third, 2 * third),
    )
    assert cfg.heights == (0, 0, 0, 1, 1)
    a, c = cfg.hyperplane
    assert all(dot(a, p) == c for p in cfg.points)


def test_tau_equal_sigma_config(sigma):
    cfg = build_config(sigma, sigma)
    assert cfg.heights == (1, 1, 1)
    assert len(cfg.points) == 3


def test_2d_config(orthant2):
    cfg = build_config(orthant2, cone_from_rays([(1, 1)]))
    assert cfg.points == ((1, 0), (0, 1), (F(1, 2), F(1, 2)))
    assert cfg.heights == (0, 0, 1)


def test_example_pull(example):
    assert {frozenset(c.rays) for c in example.fan.cones} == {
        frozenset({N2, N4, N5}),
        frozenset({N1, N3, N4, N5}),
    }
    assert example.ray_heights == {N1: 0, N2: 0, N3: 0, N4: 3, N5: 3}


def test_trapezoid_kept_whole(example):
    assert sorted(len(c.rays) for c in example.fan.cones) == [3, 4]


def test_2d_pull(orthant2):
    sub = pull(orthant2, cone_from_rays([(1, 1)]))
    assert {c.rays for c in sub.fan.cones} == {((1, 1), (1, 0)), ((1, 1), (0, 1))}
    assert sub.ray_heights == {(1, 0): 0, (0, 1): 0, (1, 1): 2}


def test_trivial_pull(sigma):
    sub = pull(sigma, sigma)
    assert sub.fan.cones == (sigma,)
    a, c = sub.config.hyperplane
    assert all(sub.height(r) == F(dot(a, r), c) for r in sigma.rays)


def test_pull_rays_wrapper(example):
    assert fan_equal(pull_rays([N1, N2, N3], [N4, N5], ((1, 1, 1), 1)).fan, example.fan)


def test_pull_deterministic(sigma, tau):
    a, b = pull(sigma, tau), pull(sigma, tau)
    assert a.fan == b.fan and a.ray_heights == b.ray_heights and a.config == b.config


def test_hyperplane_dependence_is_informational(sigma, tau, example):
    """Compare the Example's fan across admissible hyperplanes; differences only warn."""
    differing = []
    for h in [((1, 2, 1), 1), ((2, 1, 1), 1), ((1, 1, 3), 2), ((1, 5, 1), 3)]:
        sub = pull(sigma, tau, h)
        assert refines(sub.fan, Fan.from_cones([sigma]))
        if not fan_equal(sub.fan, example.fan):
            differing.append(h)
    if differing:
        warnings.warn(f"pulling fan differs from the H=(1,1,1) fan for hyperplanes {differing}")


def check_pulling_invariants(sigma, tau, sub):
    delta = Fan.from_cones([sigma])
    assert refines(sub.fan, delta)
    assert sub.fan.is_valid()
    assert set(sub.fan.rays) == set(sigma.rays) | set(tau.rays)
    # tau's rays lie in the fan, and a cone containing a relative-interior point of tau contains tau
    centre = tuple(sum(r[i] for r in tau.rays) for i in range(sigma.ambient))
    for c in sub.fan.containing(centre):
        if all(dot(f, centre) > 0 for f in c.facet_normals):
            assert c.contains_cone(tau)
    # heights are linear on each cone and the PL function is the minimum of the pieces
    sf = support_from_heights(sub)
    for c, u in zip(sub.fan.cones, sf.functionals):
        assert all(dot(u, r) == sub.height(r) for r in c.rays)
        for r in sub.fan.rays:
            if r in c:
                assert dot(u, r) == sub.height(r)
            else:
                assert dot(u, r) > sub.height(r)


def test_example_invariants(sigma, tau, example):
    check_pulling_invariants(sigma, tau, example)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_random_pulling_invariants(seed, n):
    sigma, tau = random_pair(random.Random(seed), n)
    sub = pull(sigma, tau)
    check_pulling_invariants(sigma, tau, sub)
