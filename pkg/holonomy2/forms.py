"""
Differential forms on a coordinate chart with polynomial coefficients and
values in a two-term L-infinity algebra, and the Maurer-Cartan equations

    fake curvature     dA + 1/2 [A, A] + l1(B) = 0
    3-curvature        dB + [A, B] + l3(A, A, A) = 0

for a pair (A, B) of a degree-0-valued 1-form and a degree-(-1)-valued 2-form.
Everything here is exact: coefficients are sympy polynomials over QQ.
"""

# pylint: disable=R0913,R0914

from dataclasses import dataclass
from itertools import product

import numpy as np
import sympy
from loguru import logger

from holonomy2.algebra_core import LieAlgebra, permutation_sign, rational
from holonomy2.config import DEFAULT_SETTINGS, L3_NORMALIZATIONS
from holonomy2.errors import StructuralError
from holonomy2.linf import TwoTermLinf, from_lie_algebra

GRADES = (0, -1)


def coordinates(chart_dim):
    """
    Coordinate symbols of a chart: x, y, z for small charts, x1..xn otherwise
    """
    if chart_dim < 1:
        raise StructuralError("a chart needs at least one coordinate")
    if chart_dim <= 3:
        return sympy.symbols("x y z")[:chart_dim]
    return sympy.symbols(f"x1:{chart_dim + 1}")


def _sort_indices(indices):
    if len(set(indices)) < len(indices):
        return None, 0
    return tuple(sorted(indices)), permutation_sign(indices)


@dataclass(frozen=True)
class PolyForm:
    """
    Homogeneous form of the given degree: terms are ((indices, value index), Poly)
    pairs with strictly increasing index tuples and no zero coefficients
    """

    chart_dim: int
    degree: int
    grade: int
    value_dim: int
    terms: tuple

    def __post_init__(self):
        if self.grade not in GRADES:
            raise StructuralError(f"grade must be one of {GRADES}")
        if not 0 <= self.degree:
            raise StructuralError("form degree must be non-negative")
        gens = coordinates(self.chart_dim)
        merged = {}
        for (indices, value), coefficient in self.terms:
            indices = tuple(indices)
            if len(indices) != self.degree:
                raise StructuralError(f"term {indices} does not have degree {self.degree}")
            if any(i < 0 or i >= self.chart_dim for i in indices):
                raise StructuralError(f"index out of chart in {indices}")
            if list(indices) != sorted(set(indices)):
                raise StructuralError(f"index tuple {indices} is not strictly increasing")
            if not 0 <= value < self.value_dim:
                raise StructuralError(f"value index {value} out of range")
            poly = sympy.Poly(coefficient, *gens, domain="QQ")
            key = (indices, value)
            merged[key] = merged[key] + poly if key in merged else poly
        canonical = tuple(
            (key, merged[key]) for key in sorted(merged) if not merged[key].is_zero
        )
        object.__setattr__(self, "terms", canonical)

    @classmethod
    def zero(cls, chart_dim, degree, grade, value_dim):
        """
        The zero form
        """
        return cls(chart_dim, degree, grade, value_dim, ())

    @classmethod
    def from_dict(cls, chart_dim, degree, grade, value_dim, components):
        """
        Build from {(indices, value index): sympy expression}
        """
        return cls(chart_dim, degree, grade, value_dim, tuple(components.items()))

    @classmethod
    def from_json_terms(cls, chart_dim, degree, grade, value_dim, rows):
        """
        Rows of [monomial exponents, index tuple, value index, coefficient]
        """
        gens = coordinates(chart_dim)
        terms = []
        for exponents, indices, value, coefficient in rows:
            if len(exponents) != chart_dim:
                raise StructuralError("monomial exponents must have chart_dim entries")
            monomial = sympy.Integer(1)
            for symbol, power in zip(gens, exponents):
                monomial *= symbol ** int(power)
            terms.append(((tuple(indices), int(value)), rational(coefficient) * monomial))
        return cls(chart_dim, degree, grade, value_dim, tuple(terms))

    @property
    def components(self):
        """
        Terms as a dict
        """
        return dict(self.terms)

    @property
    def is_zero(self):
        """
        No nonzero coefficients
        """
        return not self.terms

    def _like(self, terms, degree=None, grade=None, value_dim=None):
        return PolyForm(
            self.chart_dim,
            self.degree if degree is None else degree,
            self.grade if grade is None else grade,
            self.value_dim if value_dim is None else value_dim,
            tuple(terms),
        )

    def _check_same_space(self, other):
        if (self.chart_dim, self.degree, self.grade, self.value_dim) != (
            other.chart_dim, other.degree, other.grade, other.value_dim
        ):
            raise StructuralError("forms live in different spaces")

    def __add__(self, other):
        self._check_same_space(other)
        return self._like(self.terms + other.terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        """
        Multiply every coefficient by a rational
        """
        factor = rational(factor)
        return self._like((key, poly * factor) for key, poly in self.terms)

    def relabel(self, permutation):
        """
        Rename coordinate k to permutation[k], moving both x_k and dx_k
        """
        if sorted(permutation) != list(range(self.chart_dim)):
            raise StructuralError("relabel needs a permutation of the chart coordinates")
        gens = coordinates(self.chart_dim)
        substitution = {gens[k]: gens[permutation[k]] for k in range(self.chart_dim)}
        terms = []
        for (indices, value), poly in self.terms:
            moved, sign = _sort_indices(tuple(permutation[i] for i in indices))
            expr = poly.as_expr().subs(substitution, simultaneous=True)
            terms.append(((moved, value), sign * expr))
        return self._like(terms)

    def numeric(self):
        """
        Numeric evaluator (point, *tangents) -> value vector, compiled with lambdify
        """
        gens = coordinates(self.chart_dim)
        compiled = [
            (indices, value, sympy.lambdify(gens, poly.as_expr(), modules="numpy"))
            for (indices, value), poly in self.terms
        ]
        degree, value_dim = self.degree, self.value_dim

        def evaluate(point, *tangents):
            if len(tangents) != degree:
                raise StructuralError(f"a {degree}-form takes {degree} tangent vectors")
            point = np.asarray(point, dtype=float)
            frame = np.array([np.asarray(t, dtype=float) for t in tangents])
            result = np.zeros(value_dim)
            for indices, value, function in compiled:
                weight = np.linalg.det(frame[:, list(indices)]) if degree else 1.0
                result[value] += float(function(*point)) * weight
            return result

        return evaluate


def d(form):
    """
    Exterior derivative, coefficientwise
    """
    gens = coordinates(form.chart_dim)
    terms = []
    for (indices, value), poly in form.terms:
        for k in range(form.chart_dim):
            if k in indices:
                continue
            derivative = poly.diff(gens[k])
            if derivative.is_zero:
                continue
            shift = sum(1 for i in indices if i < k)
            sign = -1 if shift % 2 else 1
            terms.append(((tuple(sorted(indices + (k,))), value), sign * derivative))
    return form._like(terms, degree=form.degree + 1)


def as_linf(target):
    """
    Accept a TwoTermLinf or a LieAlgebra as value space
    """
    if isinstance(target, TwoTermLinf):
        return target
    if isinstance(target, LieAlgebra):
        return from_lie_algebra(target)
    raise StructuralError("forms take values in a TwoTermLinf or a LieAlgebra")


def _l2_table(linf, grade_a, grade_b):
    """
    (value a, value b) -> coefficient list of l2(e_a, e_b) and its grade
    """
    if grade_a == 0 and grade_b == 0:
        constants = linf.l0.structure_constants
        return (lambda a, b: constants[a][b]), 0
    if grade_a == 0 and grade_b == -1:
        return (lambda a, b: list(linf.action[a][:, b])), -1
    if grade_a == -1 and grade_b == 0:
        return (lambda a, b: [-v for v in linf.action[b][:, a]]), -1
    raise StructuralError("l2 of two degree -1 elements lands outside a two-term algebra")


def _value_dim(linf, grade):
    return linf.l0.dim if grade == 0 else linf.lm1_dim


def wedge_l2(first, second, target):
    """
    [w (x) x, e (x) y] = (-1)^{|x| deg e} (w ^ e) (x) l2(x, y)
    """
    linf = as_linf(target)
    if first.chart_dim != second.chart_dim:
        raise StructuralError("forms live on different charts")
    for form in (first, second):
        if form.value_dim != _value_dim(linf, form.grade):
            raise StructuralError("form values do not match the target algebra")
    table, grade = _l2_table(linf, first.grade, second.grade)
    koszul = -1 if (first.grade * second.degree) % 2 else 1
    terms = []
    for (indices_a, value_a), poly_a in first.terms:
        for (indices_b, value_b), poly_b in second.terms:
            indices, sign = _sort_indices(indices_a + indices_b)
            if indices is None:
                continue
            coefficients = table(value_a, value_b)
            product_poly = poly_a * poly_b
            for c, coef in enumerate(coefficients):
                if coef:
                    terms.append(((indices, c), koszul * sign * coef * product_poly))
    return PolyForm(
        first.chart_dim,
        first.degree + second.degree,
        grade,
        _value_dim(linf, grade),
        tuple(terms),
    )


def apply_l1(form, target):
    """
    l1 applied pointwise to a degree -1 valued form
    """
    linf = as_linf(target)
    if form.grade != -1:
        raise StructuralError("l1 acts on degree -1 valued forms")
    terms = []
    for (indices, value), poly in form.terms:
        for row in range(linf.l0.dim):
            coef = linf.l1[row, value]
            if coef:
                terms.append(((indices, row), coef * poly))
    return form._like(terms, grade=0, value_dim=linf.l0.dim)


def l3_cube(form, target, normalization=None):
    """
    l3(A, A, A) expanded over ordered triples of terms; "displayed" keeps the
    plain sum, "factorial" divides it by 3!
    """
    linf = as_linf(target)
    normalization = normalization or DEFAULT_SETTINGS.l3_normalization
    if normalization not in L3_NORMALIZATIONS:
        raise StructuralError(f"unknown l3 normalization {normalization!r}")
    if form.degree != 1 or form.grade != 0:
        raise StructuralError("l3(A, A, A) needs a degree-0 valued 1-form")
    factor = sympy.Rational(1, 6) if normalization == "factorial" else sympy.Integer(1)
    terms = []
    for triple in product(form.terms, repeat=3):
        indices, sign = _sort_indices(tuple(key[0][0] for key, _ in triple))
        if indices is None:
            continue
        (a, b, c) = (key[1] for key, _ in triple)
        value = linf.l3[a][b][c]
        if not any(value):
            continue
        coefficient = triple[0][1] * triple[1][1] * triple[2][1]
        for row, coef in enumerate(value):
            if coef:
                terms.append(((indices, row), factor * sign * coef * coefficient))
    return PolyForm(form.chart_dim, 3, -1, linf.lm1_dim, tuple(terms))


@dataclass(frozen=True)
class MCPair:
    """
    A in degree-0 valued 1-forms, B in degree-(-1) valued 2-forms, over one algebra
    """

    a_form: PolyForm
    b_form: PolyForm
    target: TwoTermLinf

    def __post_init__(self):
        linf = as_linf(self.target)
        object.__setattr__(self, "target", linf)
        if self.a_form.degree != 1 or self.a_form.grade != 0:
            raise StructuralError("A must be a degree-0 valued 1-form")
        if self.b_form.degree != 2 or self.b_form.grade != -1:
            raise StructuralError("B must be a degree-(-1) valued 2-form")
        if self.a_form.chart_dim != self.b_form.chart_dim:
            raise StructuralError("A and B live on different charts")
        if self.a_form.value_dim != linf.l0.dim or self.b_form.value_dim != linf.lm1_dim:
            raise StructuralError("A and B values do not match the target algebra")

    @property
    def chart_dim(self):
        """
        Dimension of the chart
        """
        return self.a_form.chart_dim

    def relabel(self, permutation):
        """
        Both forms with coordinates renamed
        """
        return MCPair(
            self.a_form.relabel(permutation), self.b_form.relabel(permutation), self.target
        )


def fake_curvature(pair):
    """
    dA + 1/2 [A, A] + l1(B)
    """
    a_form, linf = pair.a_form, pair.target
    return (
        d(a_form)
        + wedge_l2(a_form, a_form, linf).scale(sympy.Rational(1, 2))
        + apply_l1(pair.b_form, linf)
    )


def three_curvature(pair, normalization=None):
    """
    dB + [A, B] + l3(A, A, A)
    """
    a_form, b_form, linf = pair.a_form, pair.b_form, pair.target
    return (
        d(b_form)
        + wedge_l2(a_form, b_form, linf)
        + l3_cube(a_form, linf, normalization)
    )


@dataclass(frozen=True)
class MCResiduals:
    """
    Both sides of the Maurer-Cartan equations
    """

    fake_curvature: PolyForm
    three_curvature: PolyForm

    @property
    def vanishes(self):
        """
        True iff both residuals are identically zero
        """
        return self.fake_curvature.is_zero and self.three_curvature.is_zero


def mc_functional(pair, normalization=None):
    """
    Residual forms of the two Maurer-Cartan equations
    """
    return MCResiduals(fake_curvature(pair), three_curvature(pair, normalization))


def is_maurer_cartan(pair, normalization=None):
    """
    (flag, residuals); the flag is an exact polynomial identity check
    """
    residuals = mc_functional(pair, normalization)
    logger.debug(
        "MC check: fake curvature has {} terms, 3-curvature has {}",
        len(residuals.fake_curvature.terms), len(residuals.three_curvature.terms),
    )
    return residuals.vanishes, residuals
