"""
Hochschild chains, the shuffle product and the Maurer-Cartan cycle P(A)
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from holonomy2 import fixtures
from holonomy2.errors import StructuralError, UnsupportedStructureError
from holonomy2.hochschild import (
    FinDGA,
    HochChain,
    cycle_components,
    element_of,
    hochschild_d,
    hochschild_of_hochschild_d,
    is_mc_element,
    mc_residual,
    p_chain,
    shifted_degree,
    shuffle,
    slot_chain,
    validate_dga,
)

DGAS = {
    "t4": lambda: fixtures.truncated_polynomial(4),
    "t6": lambda: fixtures.truncated_polynomial(6),
    "exterior": fixtures.exterior_one,
    "xy": fixtures.commutative_xy,
    "three": fixtures.three_element,
    "t3": lambda: fixtures.truncated_polynomial(3),
    "wedge3": fixtures.exterior_three,
    "uv": fixtures.derivation_uv,
    "upper": fixtures.upper_triangular,
}


@pytest.mark.parametrize("name", sorted(DGAS))
def test_fixture_algebras_are_valid(name):
    assert validate_dga(DGAS[name]()) == []


def test_differential_must_raise_degree():
    broken = FinDGA(("1", "x"), (0, 1), {}, {1: {1: 1}}, 0, True)
    assert {v.axiom for v in validate_dga(broken)} >= {"differential-degree"}


def test_truncated_polynomial_is_not_commutative():
    algebra = fixtures.truncated_polynomial(4)
    flagged = FinDGA(
        algebra.names, algebra.degrees,
        dict(algebra.products),
        algebra.differential_table, 0, True,
    )
    assert any(v.axiom == "commutativity" for v in validate_dga(flagged))


def test_index_out_of_range():
    with pytest.raises(StructuralError):
        FinDGA(("1", "x"), (0, 1), {(1, 1): {2: 1}}, {}, 0, False)


@given(seed=st.integers(min_value=0, max_value=100_000), name=st.sampled_from(sorted(DGAS)))
@settings(max_examples=40, deadline=None)
def test_differential_squares_to_zero(seed, name):
    algebra = DGAS[name]()
    chain = fixtures.random_chain(fixtures.rng_for(seed), algebra, max_length=4)
    assert hochschild_d(hochschild_d(chain, algebra), algebra).is_zero


def test_single_letter_differential():
    algebra = fixtures.commutative_xy()
    # D(x[x]) = -y[x] - x[y]
    expected = HochChain.from_dict({(2, 1): -1, (1, 2): -1})
    assert hochschild_d(HochChain.word(1, 1), algebra) == expected


def _homogeneous_words(rng, algebra, count):
    words = []
    for _ in range(count):
        length = rng.randint(0, 2)
        words.append(tuple(rng.randrange(algebra.dim) for _ in range(length + 1)))
    return words


@given(seed=st.integers(min_value=0, max_value=100_000))
@settings(max_examples=40, deadline=None)
def test_shuffle_is_a_derivation(seed):
    algebra = fixtures.commutative_xy()
    first, second = _homogeneous_words(fixtures.rng_for(seed), algebra, 2)
    a, b = HochChain.word(*first), HochChain.word(*second)
    sign = -1 if shifted_degree(first, algebra) % 2 else 1
    lhs = hochschild_d(shuffle(a, b, algebra), algebra)
    rhs = shuffle(hochschild_d(a, algebra), b, algebra) + shuffle(
        a, hochschild_d(b, algebra), algebra
    ).scale(sign)
    assert lhs == rhs


def test_shuffle_needs_commutative_algebra():
    algebra = fixtures.truncated_polynomial(4)
    with pytest.raises(UnsupportedStructureError):
        shuffle(HochChain.word(0, 1), HochChain.word(0, 1), algebra)


def test_unit_word_is_shuffle_unit():
    algebra = fixtures.commutative_xy()
    chain = HochChain.from_dict({(1, 1): 2, (3,): -1, (0, 2, 1): Fraction(1, 2)})
    assert shuffle(HochChain.word(0), chain, algebra) == chain


def test_chains_of_chains_square_to_zero():
    algebra = fixtures.commutative_xy()
    chain = HochChain.from_dict({
        ((0,), (1,), (0, 1)): 1,
        ((1,), (0, 2)): -2,
        ((0, 1), (1, 1), (2,)): 3,
    })
    once = hochschild_of_hochschild_d(chain, algebra)
    assert hochschild_of_hochschild_d(once, algebra).is_zero


@pytest.mark.parametrize(
    "name,algebra,element,expected", fixtures.mc_cases(), ids=[c[0] for c in fixtures.mc_cases()]
)
def test_p_is_a_cycle_exactly_for_mc_elements(name, algebra, element, expected):
    del name
    assert is_mc_element(element, algebra) == expected
    components = cycle_components(element, 7, algebra)
    assert all(part.is_zero for part in components) == expected


def test_first_failing_component_carries_the_residual():
    # 2x in Q[x]/(x^4): dA + A A = -2 x2 + 4 x2 = 2 x2
    algebra = fixtures.truncated_polynomial(4)
    components = cycle_components({1: Fraction(2)}, 3, algebra)
    assert components[0].is_zero
    assert components[1] == HochChain.word(0, 2, coefficient=2)


def test_p_chain_layers():
    algebra = fixtures.truncated_polynomial(4)
    chain = p_chain({1: Fraction(1), 3: Fraction(2)}, 2, algebra)
    assert chain.as_dict() == {
        (0,): 1, (0, 1): 1, (0, 3): 2,
        (0, 1, 1): 1, (0, 1, 3): 2, (0, 3, 1): 2, (0, 3, 3): 4,
    }


def test_even_element_is_refused():
    algebra = fixtures.truncated_polynomial(4)
    with pytest.raises(StructuralError):
        p_chain({2: Fraction(1)}, 3, algebra)
    with pytest.raises(StructuralError):
        is_mc_element({1: Fraction(1), 2: Fraction(1)}, algebra)


def test_element_by_name():
    algebra = fixtures.truncated_polynomial(4)
    assert element_of({"x": "1/2", "x3": 0}, algebra) == {1: Fraction(1, 2)}
    with pytest.raises(StructuralError):
        element_of({"z": 1}, algebra)


def test_chain_arithmetic():
    chain = HochChain.from_dict({(0, 1): 3, (1,): "1/3"})
    assert (chain - chain).is_zero
    assert chain.scale(3).as_dict() == {(0, 1): 9, (1,): 1}


def test_mc_cases_cover_ten_algebras():
    shapes = {case[1].names + case[1].degrees for case in fixtures.mc_cases()}
    assert len(shapes) >= 10


def test_exterior_three_signs():
    algebra = fixtures.exterior_three()
    x, y, z = (algebra.index(n) for n in "xyz")
    assert algebra.multiply(x, y) == {algebra.index("xy"): 1}
    assert algebra.multiply(y, x) == {algebra.index("xy"): -1}
    assert algebra.multiply(algebra.index("xz"), y) == {algebra.index("xyz"): -1}
    assert algebra.multiply(x, x) == {}


@given(seed=st.integers(min_value=0, max_value=100_000))
@settings(max_examples=40, deadline=None)
def test_shuffle_is_associative(seed):
    algebra = fixtures.commutative_xy()
    first, second, third = (
        HochChain.word(*w) for w in _homogeneous_words(fixtures.rng_for(seed), algebra, 3)
    )
    lhs = shuffle(shuffle(first, second, algebra), third, algebra)
    rhs = shuffle(first, shuffle(second, third, algebra), algebra)
    assert lhs == rhs


@given(seed=st.integers(min_value=0, max_value=100_000))
@settings(max_examples=40, deadline=None)
def test_shuffle_is_graded_commutative(seed):
    algebra = fixtures.commutative_xy()
    first, second = _homogeneous_words(fixtures.rng_for(seed), algebra, 2)
    sign = -1 if shifted_degree(first, algebra) * shifted_degree(second, algebra) % 2 else 1
    a, b = HochChain.word(*first), HochChain.word(*second)
    assert shuffle(a, b, algebra) == shuffle(b, a, algebra).scale(sign)


@given(seed=st.integers(min_value=0, max_value=100_000))
@settings(max_examples=30, deadline=None)
def test_random_chains_of_chains_square_to_zero(seed):
    algebra = fixtures.commutative_xy()
    chain = fixtures.random_chain_of_chains(fixtures.rng_for(seed), algebra)
    once = hochschild_of_hochschild_d(chain, algebra)
    assert hochschild_of_hochschild_d(once, algebra).is_zero


@pytest.mark.parametrize(
    "name,algebra,element,expected", fixtures.mc_cases(), ids=[c[0] for c in fixtures.mc_cases()]
)
def test_components_are_slot_sums_of_the_residual(name, algebra, element, expected):
    del name, expected
    components = cycle_components(element, 6, algebra)
    residual = mc_residual(element, algebra)
    assert components[0].is_zero
    for length in range(1, 6):
        assert components[length] == slot_chain(element, residual, length, algebra)


def test_slot_chain_of_the_residual_in_t4():
    # A = 2x in Q[x]/(x^4) has r = 2 x2; one word per slot
    algebra = fixtures.truncated_polynomial(4)
    chain = slot_chain({1: Fraction(2)}, {2: Fraction(2)}, 2, algebra)
    assert chain.as_dict() == {(0, 2, 1): 4, (0, 1, 2): 4}


def test_cycle_components_need_two_layers():
    algebra = fixtures.truncated_polynomial(4)
    with pytest.raises(StructuralError):
        cycle_components({1: Fraction(1)}, 1, algebra)
    assert len(cycle_components({1: Fraction(1)}, 2, algebra)) == 2


def test_p_chain_of_zero_is_the_unit_word():
    assert p_chain({}, 4, fixtures.truncated_polynomial(4)) == HochChain.word(0)
