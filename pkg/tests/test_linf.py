"""
Two-term L-infinity algebras and their crossed module counterparts
"""

import pytest
import sympy

from holonomy2 import fixtures
from holonomy2.algebra_core import LieAlgebra, cochain_from_values
from holonomy2.crossed import same_structure, skeletal_model, splice_crossed_module
from holonomy2.errors import StructuralError
from holonomy2.linf import (
    TwoTermLinf,
    from_crossed,
    from_lie_algebra,
    from_skeletal,
    is_skeletal,
    is_strict,
    to_crossed,
    validate_linf,
)


def zero_l3(n0, n1):
    return [[[(0,) * n1 for _ in range(n0)] for _ in range(n0)] for _ in range(n0)]


@pytest.mark.parametrize("name", sorted(fixtures.crossed_catalogue()))
def test_crossed_modules_give_strict_algebras(catalogue, name):
    linf = from_crossed(catalogue[name])
    assert validate_linf(linf) == []
    assert is_strict(linf)
    assert same_structure(to_crossed(linf), catalogue[name])


@pytest.mark.parametrize("name", sorted(fixtures.crossed_catalogue()))
def test_skeletal_models_give_skeletal_algebras(catalogue, name):
    linf = from_skeletal(skeletal_model(catalogue[name]))
    assert validate_linf(linf) == []
    assert is_skeletal(linf)


def test_lie_algebra_is_a_two_term_algebra(sl2):
    linf = from_lie_algebra(sl2)
    assert validate_linf(linf) == []
    assert linf.lm1_dim == 0


def test_nonzero_class_gives_genuine_l3():
    ses, alpha = fixtures.abelian_nonzero_class_ses()
    linf = from_skeletal(skeletal_model(splice_crossed_module(ses, alpha)))
    assert validate_linf(linf) == []
    assert not is_strict(linf)
    with pytest.raises(StructuralError):
        to_crossed(linf)


def test_l3_from_cochain_is_alternating():
    cochain = cochain_from_values(3, 1, 3, {(0, 1, 2): [4]})
    linf = TwoTermLinf.from_l3_cochain(
        LieAlgebra.abelian(3), 1, sympy.zeros(3, 1), [sympy.zeros(1, 1)] * 3, cochain
    )
    assert linf.l3_value(0, 1, 2)[0] == 4
    assert linf.l3_value(1, 0, 2)[0] == -4
    assert linf.l3_value(2, 0, 1)[0] == 4
    assert validate_linf(linf) == []


def test_one_sided_l3_breaks_antisymmetry():
    tensor = zero_l3(3, 1)
    tensor[0][1][2] = (1,)
    linf = TwoTermLinf(
        LieAlgebra.abelian(3), 1, sympy.zeros(3, 1), [sympy.zeros(1, 1)] * 3, tensor
    )
    assert any(v.axiom == "l3-antisymmetry" for v in validate_linf(linf))


def test_differential_must_be_equivariant():
    linf = TwoTermLinf(LieAlgebra.abelian(1), 1, [[1]], ([[1]],), zero_l3(1, 1))
    axioms = {v.axiom for v in validate_linf(linf)}
    assert "chain-map" in axioms
    assert "symmetric-action" in axioms


def test_non_representation_breaks_mixed_jacobi(sl2):
    h, e, f = fixtures.STANDARD_SL2
    linf = TwoTermLinf(sl2, 2, sympy.zeros(3, 2), (h, f, e), zero_l3(3, 2))
    assert {v.axiom for v in validate_linf(linf)} == {"mixed-jacobi"}


def test_l3_must_have_full_shape():
    with pytest.raises(StructuralError):
        TwoTermLinf(LieAlgebra.abelian(2), 1, sympy.zeros(2, 1), [sympy.zeros(1, 1)] * 2, [])
