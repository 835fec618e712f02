"""
Two-term L-infinity algebras in cohomological degrees 0 and -1.

Degree 0 carries a bracket l2(x, y), degree -1 is acted on by l2(x, h), the
differential l1 maps degree -1 to degree 0 and l3 is an alternating map on
degree 0 with values in degree -1. The identities checked by validate_linf,
for x, y, z, w in degree 0 and h, h' in degree -1:

    chain-map          l1(x.h) = [x, l1 h]
    symmetric-action   (l1 h).h' + (l1 h').h = 0
    jacobi             [x,[y,z]] + [y,[z,x]] + [z,[x,y]] + l1 l3(x,y,z) = 0
    mixed-jacobi       x.(y.h) - y.(x.h) - [x,y].h + l3(x, y, l1 h) = 0
    l3-coherence       (d l3)(x, y, z, w) = 0, d the Chevalley-Eilenberg
                       formula with the (possibly non-representation) action

Identities with five or more inputs vanish for degree reasons.
"""

# pylint: disable=R0913,R0914

from dataclasses import dataclass

import sympy
from loguru import logger

from holonomy2.algebra_core import (
    LieAlgebra,
    as_matrix,
    ce_differential,
    cochain_length,
    rational,
    validate_lie_algebra,
    wedge_basis,
)
from holonomy2.crossed import (
    CrossedModule,
    act_with,
    require_crossed_module,
)
from holonomy2.errors import StructuralError, ValidationError, Violation


def _nonzero(matrix):
    return any(x != 0 for x in matrix)


@dataclass(frozen=True)
class TwoTermLinf:
    """
    l2 on degree 0 is stored as a LieAlgebra (not validated), l3 as a full
    tensor l3[i][j][k] of length lm1_dim tuples
    """

    l0: LieAlgebra
    lm1_dim: int
    l1: sympy.ImmutableMatrix
    action: tuple
    l3: tuple

    def __post_init__(self):
        n0, n1 = self.l0.dim, self.lm1_dim
        object.__setattr__(self, "l1", as_matrix(self.l1, n0, n1))
        if len(self.action) != n0:
            raise StructuralError("need one action matrix per degree-0 basis vector")
        object.__setattr__(self, "action", tuple(as_matrix(m, n1, n1) for m in self.action))
        tensor = self.l3
        if len(tensor) != n0 or any(len(plane) != n0 for plane in tensor) or any(
            len(row) != n0 for plane in tensor for row in plane
        ) or any(len(value) != n1 for plane in tensor for row in plane for value in row):
            raise StructuralError("l3 must have shape (dim L0)^3 x dim L-1")
        object.__setattr__(
            self,
            "l3",
            tuple(
                tuple(tuple(tuple(rational(v) for v in value) for value in row) for row in plane)
                for plane in tensor
            ),
        )

    @classmethod
    def from_l3_cochain(cls, l0, lm1_dim, l1, action, cochain):
        """
        Build with l3 given as a 3-cochain vector in the wedge basis
        """
        return cls(l0, lm1_dim, l1, action, l3_tensor(l0.dim, lm1_dim, cochain))

    def l3_value(self, i, j, k):
        """
        l3(e_i, e_j, e_k) as a column
        """
        return sympy.ImmutableMatrix(self.lm1_dim, 1, list(self.l3[i][j][k]))

    def l3_cochain(self):
        """
        l3 restricted to increasing index triples, as a cochain vector
        """
        combos, _ = wedge_basis(self.l0.dim, 3)
        values = []
        for i, j, k in combos:
            values.extend(self.l3[i][j][k])
        return sympy.ImmutableMatrix(len(values), 1, values)

    def act(self, x):
        """
        Action matrix of a degree-0 coordinate column
        """
        if not self.action:
            return sympy.ImmutableMatrix.zeros(self.lm1_dim, self.lm1_dim)
        return act_with(self.action, x)


def l3_tensor(n0, n1, cochain):
    """
    Totally antisymmetric tensor from a cochain vector
    """
    cochain = as_matrix(cochain, cochain_length(n0, n1, 3), 1)
    _, index = wedge_basis(n0, 3)
    tensor = [[[(0,) * n1 for _ in range(n0)] for _ in range(n0)] for _ in range(n0)]
    for (i, j, k), block in index.items():
        value = tuple(cochain[block * n1 + a, 0] for a in range(n1))
        negated = tuple(-v for v in value)
        for (a, b, c), sign in (
            ((i, j, k), 1), ((j, k, i), 1), ((k, i, j), 1),
            ((j, i, k), -1), ((i, k, j), -1), ((k, j, i), -1),
        ):
            tensor[a][b][c] = value if sign == 1 else negated
    return tensor


def _zero_l3(n0, n1):
    return [[[(0,) * n1 for _ in range(n0)] for _ in range(n0)] for _ in range(n0)]


def validate_linf(linf):
    """
    Every failed generalized Jacobi identity on basis tuples, with residuals
    """
    if not isinstance(linf, TwoTermLinf):
        raise StructuralError("expected a TwoTermLinf")
    l0 = linf.l0
    n0, n1 = l0.dim, linf.lm1_dim
    violations = [
        v for v in validate_lie_algebra(l0) if v.axiom == "antisymmetry"
    ]
    for i in range(n0):
        for j in range(n0):
            for k in range(n0):
                value = linf.l3_value(i, j, k)
                if len({i, j, k}) < 3:
                    if _nonzero(value):
                        violations.append(Violation("l3-antisymmetry", (i, j, k), value))
                    continue
                for (a, b, c), sign in (((j, i, k), -1), ((i, k, j), -1), ((j, k, i), 1)):
                    residual = linf.l3_value(a, b, c) - sign * value
                    if _nonzero(residual):
                        violations.append(Violation("l3-antisymmetry", (i, j, k), residual))
                        break
    for x in range(n0):
        ex = l0.basis_vector(x)
        for a in range(n1):
            residual = linf.l1 * linf.action[x][:, a] - l0.bracket(ex, linf.l1[:, a])
            if _nonzero(residual):
                violations.append(Violation("chain-map", (x, a), residual))
    for a in range(n1):
        moved_a = linf.act(linf.l1[:, a])
        for b in range(a, n1):
            moved_b = linf.act(linf.l1[:, b])
            residual = moved_a[:, b] + moved_b[:, a]
            if _nonzero(residual):
                violations.append(Violation("symmetric-action", (a, b), residual))
    for i in range(n0):
        for j in range(i + 1, n0):
            for k in range(j + 1, n0):
                ei, ej, ek = l0.basis_vector(i), l0.basis_vector(j), l0.basis_vector(k)
                jacobiator = (
                    l0.bracket(ei, l0.bracket(ej, ek))
                    + l0.bracket(ej, l0.bracket(ek, ei))
                    + l0.bracket(ek, l0.bracket(ei, ej))
                )
                residual = jacobiator + linf.l1 * linf.l3_value(i, j, k)
                if _nonzero(residual):
                    violations.append(Violation("jacobi", (i, j, k), residual))
    for i in range(n0):
        for j in range(i + 1, n0):
            ei, ej = l0.basis_vector(i), l0.basis_vector(j)
            failure = (
                linf.action[i] * linf.action[j]
                - linf.action[j] * linf.action[i]
                - linf.act(l0.bracket(ei, ej))
            )
            for a in range(n1):
                correction = sympy.zeros(n1, 1)
                for k in range(n0):
                    if linf.l1[k, a]:
                        correction += linf.l1[k, a] * linf.l3_value(i, j, k)
                residual = failure[:, a] + correction
                if _nonzero(residual):
                    violations.append(Violation("mixed-jacobi", (i, j, a), residual))
    image = ce_differential(l0, n1, linf.action, 3) * linf.l3_cochain()
    combos, _ = wedge_basis(n0, 4)
    for block, quadruple in enumerate(combos):
        residual = image[block * n1:(block + 1) * n1, 0]
        if _nonzero(residual):
            violations.append(Violation("l3-coherence", quadruple, residual))
    logger.debug("two-term L-infinity check found {} violations", len(violations))
    return violations


def from_crossed(crossed):
    """
    Differential graded Lie algebra of a crossed module: l1 = mu, l3 = 0
    """
    require_crossed_module(crossed)
    n0, n1 = crossed.g.dim, crossed.h.dim
    return TwoTermLinf(crossed.g, n1, crossed.mu, crossed.action, _zero_l3(n0, n1))


def from_skeletal(model):
    """
    Skeletal algebra of a skeletal model: l1 = 0, l3 = gamma
    """
    triplet = model.triplet
    n0, n1 = triplet.gbar.dim, triplet.module.dim
    return TwoTermLinf.from_l3_cochain(
        triplet.gbar,
        n1,
        sympy.zeros(n0, n1),
        triplet.module.action,
        triplet.gamma,
    )


def from_lie_algebra(algebra):
    """
    A Lie algebra seen as a two-term algebra with zero degree -1 part
    """
    return TwoTermLinf(
        algebra, 0, sympy.zeros(algebra.dim, 0),
        tuple(sympy.zeros(0, 0) for _ in range(algebra.dim)),
        _zero_l3(algebra.dim, 0),
    )


def is_skeletal(linf):
    """
    True iff l1 vanishes
    """
    return not _nonzero(linf.l1)


def is_strict(linf):
    """
    True iff l3 vanishes
    """
    return not _nonzero(linf.l3_cochain())


def to_crossed(linf):
    """
    Crossed module of a strict two-term algebra, [h, h'] := (l1 h).h'
    """
    if not is_strict(linf):
        raise StructuralError("only algebras with l3 = 0 correspond to crossed modules")
    violations = validate_linf(linf)
    if violations:
        raise ValidationError("not a two-term L-infinity algebra", violations)
    n1 = linf.lm1_dim
    table = [[[0] * n1 for _ in range(n1)] for _ in range(n1)]
    for a in range(n1):
        moved = linf.act(linf.l1[:, a])
        for b in range(n1):
            for c in range(n1):
                table[a][b][c] = moved[c, b]
    h = LieAlgebra(n1, (), table)
    crossed = CrossedModule(h, linf.l0, linf.l1, linf.action)
    require_crossed_module(crossed)
    return crossed
