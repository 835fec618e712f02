"""
Finite simplicial sets and the higher Hochschild differential
"""

import pytest
from hypothesis import given, settings, strategies as st

from holonomy2 import fixtures
from holonomy2.errors import StructuralError, UnsupportedStructureError
from holonomy2.hochschild import HochChain, hochschild_d
from holonomy2.simplicial import (
    FinSimpSet,
    chain_space_dimensions,
    circle_identification,
    circle_model,
    compose_maps,
    euler_characteristics,
    higher_d,
    higher_degree,
    induced_map,
    point_model,
    push_forward,
    torus_model,
    validate_simplicial,
)

SEEDS = st.integers(min_value=0, max_value=100_000)
MODELS = {"circle": circle_model, "torus": torus_model, "point": point_model}


@pytest.mark.parametrize("name", sorted(MODELS))
@pytest.mark.parametrize("cutoff", [1, 3, 5])
def test_models_satisfy_identities(name, cutoff):
    assert validate_simplicial(MODELS[name](cutoff)) == []


def test_model_sizes():
    assert circle_model(5).sizes == (1, 2, 3, 4, 5, 6)
    assert torus_model(3).sizes == (1, 4, 9, 16)
    assert point_model(2).sizes == (1, 1, 1)


def test_swapped_faces_are_reported():
    circle = circle_model(3)
    faces = list(circle.faces)
    faces[2] = (faces[2][1], faces[2][0], faces[2][2])
    broken = FinSimpSet(circle.sizes, tuple(faces), circle.degeneracies, "broken")
    assert validate_simplicial(broken)


def test_missing_face_is_structural():
    circle = circle_model(2)
    faces = list(circle.faces)
    faces[2] = faces[2][:2]
    with pytest.raises(StructuralError):
        validate_simplicial(FinSimpSet(circle.sizes, tuple(faces), circle.degeneracies))


def test_cutoff_must_be_positive():
    with pytest.raises(StructuralError):
        circle_model(0)


@pytest.mark.parametrize("builder", [circle_model, torus_model], ids=["circle", "torus"])
@given(seed=SEEDS)
@settings(max_examples=25, deadline=None)
def test_higher_d_squares_to_zero(builder, seed):
    simp = builder(4)
    algebra = fixtures.commutative_xy()
    rng = fixtures.rng_for(seed)
    for _ in range(4):
        chain = fixtures.random_higher_chain(rng, simp, algebra)
        assert higher_d(higher_d(chain, simp, algebra), simp, algebra).is_zero


@given(seed=SEEDS)
@settings(max_examples=40, deadline=None)
def test_circle_model_recovers_hochschild(seed):
    algebra = fixtures.commutative_xy()
    circle = circle_model(5)
    chain = fixtures.random_chain(fixtures.rng_for(seed), algebra, max_length=4)
    lhs = higher_d(circle_identification(chain, algebra), circle, algebra)
    rhs = circle_identification(hochschild_d(chain, algebra), algebra)
    assert lhs == rhs


def test_point_model_alternates_faces():
    algebra = fixtures.exterior_one()
    point = point_model(3)
    # (-1)^0 + ... + (-1)^k faces all land on the same word
    assert higher_d(HochChain.word(2, (0,)), point, algebra) == HochChain.word(1, (0,))
    assert higher_d(HochChain.word(1, (0,)), point, algebra).is_zero


def test_higher_d_raises_degree():
    algebra = fixtures.commutative_xy()
    key = (2, (0, 1, 1))
    image = higher_d(HochChain.word(*key), circle_model(3), algebra)
    assert not image.is_zero
    assert {higher_degree(k, algebra) for k, _ in image.terms} == {higher_degree(key, algebra) + 1}


def test_induced_map_koszul_sign():
    algebra = fixtures.exterior_one()
    assert induced_map((0, 1, 0), (0, 1, 1), algebra, 2) == {(1, 1): -1}
    assert induced_map((0, 0, 1), (0, 1, 1), algebra, 2) == {(1, 1): 1}


def test_induced_map_needs_basepoint():
    with pytest.raises(StructuralError):
        induced_map((1, 0), (0, 0), fixtures.exterior_one(), 2)


def test_word_must_fit_level():
    with pytest.raises(StructuralError):
        higher_d(HochChain.word(2, (0, 1)), circle_model(3), fixtures.commutative_xy())


def test_non_commutative_algebra_is_refused():
    with pytest.raises(UnsupportedStructureError):
        higher_d(HochChain.word(0, (0,)), circle_model(2), fixtures.truncated_polynomial(4))


def test_chain_space_dimensions_count_words():
    algebra = fixtures.commutative_xy()
    dimensions = chain_space_dimensions(circle_model(3), algebra)
    for level, counts in dimensions.items():
        assert sum(counts.values()) == algebra.dim ** (level + 1)
    assert dimensions[0] == {0: 1, 1: 1, 2: 1, 3: 1}


def test_euler_characteristic_of_the_point():
    # Lambda[x] on a point: words 1 and x at every level
    totals = euler_characteristics(point_model(2), fixtures.exterior_one())
    assert totals == {-2: 1, -1: -2, 0: 2, 1: -1}


def _unit_heavy_word(rng, algebra, length):
    return (rng.randrange(algebra.dim),) + tuple(
        rng.choice((0, 0, 0, 1, 2, 3)) for _ in range(length - 1)
    )


@given(seed=SEEDS)
@settings(max_examples=60, deadline=None)
def test_induced_maps_compose(seed):
    algebra = fixtures.commutative_xy()
    rng = fixtures.rng_for(seed)
    inner = fixtures.random_pointed_map(rng, 6, 4)
    outer = fixtures.random_pointed_map(rng, 4, 3)
    terms = {_unit_heavy_word(rng, algebra, 6): 1, _unit_heavy_word(rng, algebra, 6): -2}
    direct = push_forward(compose_maps(outer, inner), terms, algebra, 3)
    staged = push_forward(outer, push_forward(inner, terms, algebra, 4), algebra, 3)
    assert direct == staged


@pytest.mark.parametrize("i", range(4))
@pytest.mark.parametrize("j", range(3))
def test_torus_faces_push_forward_functorially(i, j):
    algebra = fixtures.commutative_xy()
    torus = torus_model(3)
    rng = fixtures.rng_for(10 * i + j)
    inner, outer = torus.face(3, i), torus.face(2, j)
    for _ in range(5):
        terms = {_unit_heavy_word(rng, algebra, torus.sizes[3]): 1}
        direct = push_forward(compose_maps(outer, inner), terms, algebra, torus.sizes[1])
        staged = push_forward(
            outer, push_forward(inner, terms, algebra, torus.sizes[2]), algebra, torus.sizes[1]
        )
        assert direct == staged


def test_random_pointed_map_keeps_the_basepoint():
    rng = fixtures.rng_for(3)
    for _ in range(10):
        mapping = fixtures.random_pointed_map(rng, 5, 2)
        assert mapping[0] == 0
        assert len(mapping) == 5
        assert all(0 <= x < 2 for x in mapping)
