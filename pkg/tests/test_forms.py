"""
Polynomial forms and the Maurer-Cartan equations of a pair (A, B)
"""

import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from holonomy2 import fixtures
from holonomy2.crossed import skeletal_model, splice_crossed_module
from holonomy2.errors import StructuralError
from holonomy2.forms import (
    MCPair,
    PolyForm,
    coordinates,
    d,
    fake_curvature,
    is_maurer_cartan,
    l3_cube,
    three_curvature,
    wedge_l2,
)
from holonomy2.linf import from_crossed, from_skeletal


def constant_frame(linf):
    """
    A = sum_i dx_i (x) e_i on a chart of the same dimension as L0
    """
    n = linf.l0.dim
    rows = [[[0] * n, [i], i, 1] for i in range(n)]
    return PolyForm.from_json_terms(n, 1, 0, n, rows)


def genuine_l3():
    ses, alpha = fixtures.abelian_nonzero_class_ses()
    return from_skeletal(skeletal_model(splice_crossed_module(ses, alpha)))


def test_gl1_pair_is_maurer_cartan():
    flag, residuals = is_maurer_cartan(fixtures.gl1_pair(2, 3))
    assert flag
    assert residuals.fake_curvature.is_zero


def test_non_mc_pair_has_fake_curvature():
    flag, residuals = is_maurer_cartan(fixtures.non_mc_pair())
    assert not flag
    # dA + l1 B = dx ^ dy since l1 = 0
    expected = sympy.Poly(1, *coordinates(2), domain="QQ")
    assert residuals.fake_curvature.components == {((0, 1), 0): expected}


def test_three_curvature_vanishes_on_a_surface():
    assert three_curvature(fixtures.non_mc_pair()).is_zero


@pytest.mark.parametrize("normalization,factor", [("displayed", 6), ("factorial", 1)])
def test_l3_cube_normalizations(normalization, factor):
    linf = genuine_l3()
    gamma = linf.l3_value(0, 1, 2)[0]
    assert gamma != 0
    cube = l3_cube(constant_frame(linf), linf, normalization)
    expected = sympy.Poly(factor * gamma, *coordinates(3), domain="QQ")
    assert cube.components == {((0, 1, 2), 0): expected}


def test_genuine_l3_obstructs_constant_frame():
    linf = genuine_l3()
    pair = MCPair(constant_frame(linf), PolyForm.zero(3, 2, -1, linf.lm1_dim), linf)
    assert not three_curvature(pair, "factorial").is_zero


def test_unknown_normalization():
    linf = genuine_l3()
    with pytest.raises(StructuralError):
        l3_cube(constant_frame(linf), linf, "halved")


def test_d_squares_to_zero():
    x, y, z = coordinates(3)
    form = PolyForm.from_dict(3, 1, 0, 1, {((2,), 0): x**2 * y, ((1,), 0): x * z})
    assert not d(form).is_zero
    assert d(d(form)).is_zero


def test_d_of_monomial():
    x, y, _ = coordinates(3)
    form = PolyForm.from_dict(3, 1, 0, 1, {((2,), 0): x * y})
    gens = coordinates(3)
    assert d(form).components == {
        ((0, 2), 0): sympy.Poly(y, *gens, domain="QQ"),
        ((1, 2), 0): sympy.Poly(x, *gens, domain="QQ"),
    }


def test_bracket_with_two_form_sorts_indices():
    linf = fixtures.gl1_on_line()
    a_form = PolyForm.from_json_terms(3, 1, 0, 1, [[[0, 0, 0], [2], 0, 1]])
    b_form = PolyForm.from_json_terms(3, 2, -1, 1, [[[0, 0, 0], [0, 1], 0, 1]])
    assert wedge_l2(a_form, b_form, linf).components == {
        ((0, 1, 2), 0): sympy.Poly(1, *coordinates(3), domain="QQ")
    }


def test_relabel_commutes_with_curvature():
    pair = fixtures.non_mc_pair()
    swapped = pair.relabel([1, 0])
    assert fake_curvature(swapped) == fake_curvature(pair).relabel([1, 0])
    assert is_maurer_cartan(fixtures.gl1_pair(1, 1).relabel([1, 0]))[0]


def test_numeric_two_form_is_alternating():
    evaluate = fixtures.gl1_pair(1, "5/2").b_form.numeric()
    assert evaluate((0.3, 0.4), (1, 0), (0, 1))[0] == pytest.approx(2.5)
    assert evaluate((0.3, 0.4), (0, 1), (1, 0))[0] == pytest.approx(-2.5)


def test_repeated_indices_are_refused():
    with pytest.raises(StructuralError):
        PolyForm.from_json_terms(2, 2, -1, 1, [[[0, 0], [1, 1], 0, 1]])


def test_pair_needs_matching_values():
    linf = fixtures.gl1_on_line()
    with pytest.raises(StructuralError):
        MCPair(
            PolyForm.zero(2, 1, 0, 2),
            PolyForm.zero(2, 2, -1, 1),
            linf,
        )


def random_form(rng, degree, grade, chart_dim=3, value_dim=3):
    index_tuples = list(itertools.combinations(range(chart_dim), degree))
    rows = [
        [
            [rng.randint(0, 1) for _ in range(chart_dim)],
            list(rng.choice(index_tuples)),
            rng.randrange(value_dim),
            rng.randint(-3, 3),
        ]
        for _ in range(3)
    ]
    return PolyForm.from_json_terms(chart_dim, degree, grade, value_dim, rows)


@given(
    seed=st.integers(min_value=0, max_value=100_000),
    grades=st.sampled_from([(0, 0), (0, -1), (-1, 0)]),
)
@settings(max_examples=40, deadline=None)
def test_wedge_l2_is_graded_antisymmetric(seed, grades):
    linf = from_crossed(fixtures.identity_crossed(fixtures.sl2()))
    rng = fixtures.rng_for(seed)
    p, q = rng.randint(0, 2), rng.randint(0, 2)
    first, second = random_form(rng, p, grades[0]), random_form(rng, q, grades[1])
    sign = -1 if (p + grades[0]) * (q + grades[1]) % 2 else 1
    assert wedge_l2(second, first, linf) == wedge_l2(first, second, linf).scale(-sign)
