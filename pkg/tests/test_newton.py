import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricpull.cartier import MonomialIdealData, ideal_from_cartier, integralize, support_from_heights
from toricpull.exactq import ExactError
from toricpull.fans import ConeError, Fan, cone_from_rays, fan_equal, refines, star_subdivision
from toricpull.newton import integral_closure_generators, newton, normal_fan, verify_blowup
from toricpull.pulling import pull

from conftest import N1, N2, N3, N4, N5, random_pair
from oracles import closure_oracle


EXAMPLE_GENS = ((3, 0, 3), (0, 6, 0))


@pytest.fixture(scope="module")
def example_ideal(sigma):
    return MonomialIdealData(sigma, EXAMPLE_GENS)


def test_example_newton(example_ideal, sigma):
    np = newton(example_ideal)
    assert np.vertices == ((0, 6, 0), (3, 0, 3))
    assert np.recession == sigma
    assert (2, 2, 2) in np
    assert (1, 2, 2) not in np
    assert np.vertices[0] in np


def test_example_normal_fan(example_ideal, example):
    assert fan_equal(normal_fan(newton(example_ideal)), example.fan)


def test_principal_ideal(sigma):
    ideal = MonomialIdealData(sigma, ((1, 2, 0),))
    np = newton(ideal)
    assert np.vertices == ((1, 2, 0),)
    assert normal_fan(np).cones == (sigma,)
    assert integral_closure_generators(ideal) == [(1, 2, 0)]


def test_interior_generator_is_not_a_vertex(orthant2):
    np = newton(MonomialIdealData(orthant2, ((2, 0), (1, 1), (0, 2))))
    assert np.vertices == ((0, 2), (2, 0))


def test_2d_normal_fan_is_star(orthant2):
    np = newton(MonomialIdealData(orthant2, ((2, 0), (0, 2))))
    star = star_subdivision(Fan.from_cones([orthant2]), (1, 1))
    assert fan_equal(normal_fan(np), star)


def test_empty_generators_rejected(sigma):
    with pytest.raises(ExactError):
        newton(MonomialIdealData(sigma, ()))


def test_example_closure(example_ideal, sigma):
    got = integral_closure_generators(example_ideal)
    assert got == [(0, 6, 0), (1, 4, 1), (2, 2, 2), (3, 0, 3)]
    assert got == closure_oracle(EXAMPLE_GENS, sigma, [(0, 3), (0, 6), (0, 3)])


def test_2d_closure(orthant2):
    assert integral_closure_generators(MonomialIdealData(orthant2, ((2, 0), (0, 2)))) == [
        (0, 2),
        (1, 1),
        (2, 0),
    ]


def test_closure_over_non_orthant_smooth_cone():
    tau = cone_from_rays([(1, 0), (1, 1)])
    gens = ((0, 3), (3, -3))
    got = integral_closure_generators(MonomialIdealData(tau, gens))
    assert got == closure_oracle(gens, tau, [(0, 3), (-3, 3)])


def test_closure_requires_smooth_cone():
    tau = cone_from_rays([(1, 0), (1, 2)])
    with pytest.raises(ConeError):
        integral_closure_generators(MonomialIdealData(tau, ((1, 0),)))


def test_verify_blowup_examples(example, delta, example_ideal, orthant2):
    assert verify_blowup(example.fan, delta, [(delta.cones[0], example_ideal)])
    principal = MonomialIdealData(delta.cones[0], ((1, 1, 1),))
    assert not verify_blowup(example.fan, delta, [(delta.cones[0], principal)])
    D = Fan.from_cones([orthant2])
    star = star_subdivision(D, (1, 1))
    assert verify_blowup(star, D, [(orthant2, MonomialIdealData(orthant2, ((2, 0), (0, 2))))])
    assert not verify_blowup(star, D, [])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 3)), min_size=1, max_size=4))
def test_closure_against_oracle_and_properties(sigma, gens):
    ideal = MonomialIdealData(sigma, tuple(sorted(set(gens))))
    np = newton(ideal)
    closure = integral_closure_generators(ideal)
    box = [(0, max(v[i] for v in np.vertices)) for i in range(3)]
    assert closure == closure_oracle(np.vertices, sigma, box)
    # minimality: one step down in any direction leaves the polyhedron
    for m in closure:
        for i in range(3):
            step = tuple(x - int(i == j) for j, x in enumerate(m))
            assert step not in np
    # the normal fan depends only on the polyhedron
    fan = normal_fan(np)
    closed = normal_fan(newton(MonomialIdealData(sigma, tuple(closure))))
    assert fan_equal(fan, closed)
    assert refines(fan, Fan.from_cones([sigma]))
    assert fan.is_valid()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_random_blowup_round_trip(seed):
    rng = random.Random(seed)
    sigma, tau = random_pair(rng, rng.choice([2, 3]))
    sub = pull(sigma, tau)
    delta = Fan.from_cones([sigma])
    ideals = ideal_from_cartier(integralize(support_from_heights(sub)), delta)
    assert verify_blowup(sub.fan, delta, ideals)


def test_example_fan_rays(example):
    assert set(example.fan.rays) == {N1, N2, N3, N4, N5}
