import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from effcone.cone import (
    ConeDesc,
    canonical,
    dd_convert,
    extremality_check,
    facets_of,
    member,
    tight_inequalities,
)
from effcone.errors import ConeError, DimensionMismatchError, RayNotInConeError
from effcone.kernel import dot, nonneg_combination, rank_q

from oracles import brute_force_facets

OCTANT = ConeDesc.from_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
EFF_X2_RAYS = [(0, -1, 0), (0, 0, -1), (1, 1, 0), (1, 0, 1)]


def test_octant_facets():
    assert facets_of(OCTANT) == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_octant_from_inequalities():
    c = dd_convert(ConeDesc.from_inequalities([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
    assert c.rays == canonical([(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_redundant_ray_dropped():
    c = dd_convert(ConeDesc.from_rays([(1, 0), (0, 1), (1, 1), (2, 0)]))
    assert c.rays == ((0, 1), (1, 0))


def test_redundant_inequality_dropped():
    c = dd_convert(ConeDesc.from_inequalities([(1, 0), (0, 1), (1, 1)]))
    assert c.inequalities == ((0, 1), (1, 0))


def test_square_cone():
    rays = [(1, 1, 1), (1, -1, 1), (1, 1, -1), (1, -1, -1)]
    c = dd_convert(ConeDesc.from_rays(rays))
    assert list(c.inequalities) == brute_force_facets(rays)
    assert len(c.inequalities) == 4


def test_eff_x2_against_brute_force():
    c = dd_convert(ConeDesc.from_rays(EFF_X2_RAYS))
    assert list(c.inequalities) == brute_force_facets(EFF_X2_RAYS)


def test_one_dimensional():
    c = dd_convert(ConeDesc.from_rays([(3,)]))
    assert c.rays == ((1,),)
    assert c.inequalities == ((1,),)


def test_not_full_dimensional_rejected():
    with pytest.raises(ConeError):
        dd_convert(ConeDesc.from_rays([(1, 0, 0), (0, 1, 0)]))


def test_not_pointed_rejected():
    with pytest.raises(ConeError):
        dd_convert(ConeDesc.from_inequalities([(1, 0, 0), (0, 1, 0)]))


def test_member():
    assert member(OCTANT, (1, 2, 0))
    assert not member(OCTANT, (1, -1, 0))
    with pytest.raises(DimensionMismatchError):
        member(OCTANT, (1, 2))


def test_extremality_check():
    assert extremality_check(OCTANT, (1, 0, 0), [(0, 1, 0), (0, 0, 1)])
    # one hyperplane does not pin a ray in dimension 3
    assert not extremality_check(OCTANT, (1, 0, 0), [(0, 1, 0)])
    # a hyperplane not through the ray
    assert not extremality_check(OCTANT, (1, 0, 0), [(1, 0, 0), (0, 1, 0)])
    # interior of a 2-face is not pinned by its facet
    assert not extremality_check(OCTANT, (1, 1, 0), [(0, 0, 1)])


def test_extremality_check_outside():
    with pytest.raises(RayNotInConeError):
        extremality_check(OCTANT, (-1, 0, 0), [(0, 1, 0), (0, 0, 1)])


def test_tight_inequalities():
    assert tight_inequalities([(1, 0, 0), (0, 1, 0), (0, 0, 1)], (1, 0, 2)) == [1]


def test_json_round_trip():
    c = dd_convert(OCTANT)
    assert ConeDesc.from_json(c.to_json()) == c
    assert c.to_dict() == {"dim": 3, "rays": [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
                           "inequalities": [[0, 0, 1], [0, 1, 0], [1, 0, 0]]}


small = st.integers(-3, 3)


@st.composite
def spanning_ray_sets(draw):
    n = draw(st.integers(2, 5))
    # a pointed full cone: random rays in the open half-space x_0 > 0 plus a basis
    base = [tuple(1 if j == 0 else (1 if j == i else 0) for j in range(n)) for i in range(n)]
    base[0] = tuple([1] + [-1] * (n - 1))
    extra = draw(st.lists(st.tuples(st.integers(1, 4), *[small] * (n - 1)), max_size=4))
    return base + [tuple(r) for r in extra]


@given(spanning_ray_sets())
@settings(max_examples=60, deadline=None)
def test_round_trip_and_duality(rays):
    c = dd_convert(ConeDesc.from_rays(rays))
    again = dd_convert(ConeDesc.from_inequalities(c.inequalities))
    assert again.rays == c.rays and again.inequalities == c.inequalities
    assert dd_convert(c) == c
    for phi in c.inequalities:
        assert all(dot(phi, r) >= 0 for r in c.rays)
        tight = [r for r in c.rays if dot(phi, r) == 0]
        assert rank_q(tight) == c.dim - 1
    assert list(c.inequalities) == brute_force_facets(rays)


@given(spanning_ray_sets(), st.data())
@settings(max_examples=60, deadline=None)
def test_member_agrees_with_conic_feasibility(rays, data):
    c = dd_convert(ConeDesc.from_rays(rays))
    x = data.draw(st.tuples(*[st.integers(-5, 5)] * c.dim))
    assert member(c, x) == nonneg_combination(x, rays).feasible
