"""
Crossed modules of Lie algebras, their strict Lie 2-algebras, skeletal
models with the classifying triplet, and the splice construction.
"""

# pylint: disable=R0913,R0914,C0103

from dataclasses import dataclass

import sympy
from loguru import logger

from holonomy2.algebra_core import (
    LieAlgebra,
    LieModule,
    as_matrix,
    ce_differential,
    cochain_length,
    columns_matrix,
    connecting_map,
    is_cocycle,
    kernel_basis,
    left_inverse,
    map_coefficients,
    matrix_rank,
    pivot_columns,
    same_class,
    solve_injective,
    validate_lie_algebra,
    validate_ses,
    wedge_basis,
)
from holonomy2.errors import (
    BasisError,
    CocycleError,
    ConsistencyError,
    SectionError,
    StructuralError,
    ValidationError,
    Violation,
)


def _nonzero(matrix):
    return any(x != 0 for x in matrix)


def _prefixed(prefix, violations):
    return [Violation(f"{prefix}{v.axiom}", v.indices, v.residual) for v in violations]


def act_with(actions, x):
    """
    Linear combination sum_i x_i actions[i] for a coordinate column x
    """
    size = actions[0].rows if actions else 0
    result = sympy.zeros(size, size)
    for i, matrix in enumerate(actions):
        if x[i]:
            result += x[i] * matrix
    return sympy.ImmutableMatrix(result)


@dataclass(frozen=True)
class CrossedModule:
    """
    mu: h -> g with g acting on h by the matrices in action
    """

    h: LieAlgebra
    g: LieAlgebra
    mu: sympy.ImmutableMatrix
    action: tuple

    def __post_init__(self):
        object.__setattr__(self, "mu", as_matrix(self.mu, self.g.dim, self.h.dim))
        if len(self.action) != self.g.dim:
            raise StructuralError("need one action matrix per basis vector of g")
        object.__setattr__(
            self,
            "action",
            tuple(as_matrix(m, self.h.dim, self.h.dim) for m in self.action),
        )

    def act(self, x):
        """
        Matrix by which the g-vector x acts on h
        """
        if self.g.dim == 0:
            return sympy.ImmutableMatrix.zeros(self.h.dim, self.h.dim)
        return act_with(self.action, x)

    def change_basis(self, h_change, g_change):
        """
        Same crossed module in new bases given by the columns of h_change and g_change
        """
        h_change = as_matrix(h_change, self.h.dim, self.h.dim)
        g_change = as_matrix(g_change, self.g.dim, self.g.dim)
        h_inverse = h_change.inv()
        action = tuple(
            h_inverse * self.act(g_change[:, j]) * h_change for j in range(self.g.dim)
        )
        return CrossedModule(
            self.h.change_basis(h_change),
            self.g.change_basis(g_change),
            g_change.inv() * self.mu * h_change,
            action,
        )

    def direct_sum(self, other):
        """
        Componentwise direct sum, self first in both bases
        """
        mu = sympy.zeros(self.g.dim + other.g.dim, self.h.dim + other.h.dim)
        mu[:self.g.dim, :self.h.dim] = self.mu
        mu[self.g.dim:, self.h.dim:] = other.mu
        zeros_self = sympy.zeros(self.h.dim, self.h.dim)
        zeros_other = sympy.zeros(other.h.dim, other.h.dim)
        action = [_block(m, zeros_other) for m in self.action]
        action += [_block(zeros_self, m) for m in other.action]
        return CrossedModule(
            self.h.direct_sum(other.h), self.g.direct_sum(other.g), mu, tuple(action)
        )


def _block(first, second):
    size = first.rows + second.rows
    result = sympy.zeros(size, size)
    result[:first.rows, :first.rows] = first
    result[first.rows:, first.rows:] = second
    return result


def same_structure(crossed, other):
    """
    Equal structure constants, mu and action, ignoring basis names
    """
    return (
        crossed.h.structure_constants == other.h.structure_constants
        and crossed.g.structure_constants == other.g.structure_constants
        and crossed.mu == other.mu
        and crossed.action == other.action
    )


def validate_crossed_module(crossed):
    """
    Every failure of the algebra axioms, the representation property, the
    derivation property, equivariance and Peiffer; empty iff crossed is valid
    """
    if not isinstance(crossed, CrossedModule):
        raise StructuralError("expected a CrossedModule")
    h, g = crossed.h, crossed.g
    violations = _prefixed("h.", validate_lie_algebra(h))
    violations += _prefixed("g.", validate_lie_algebra(g))
    for a in range(g.dim):
        for b in range(a + 1, g.dim):
            residual = (
                crossed.action[a] * crossed.action[b]
                - crossed.action[b] * crossed.action[a]
                - crossed.act(g.bracket(g.basis_vector(a), g.basis_vector(b)))
            )
            if _nonzero(residual):
                violations.append(Violation("representation", (a, b), residual))
    for x in range(g.dim):
        rho = crossed.action[x]
        for i in range(h.dim):
            hi = h.basis_vector(i)
            for j in range(i + 1, h.dim):
                hj = h.basis_vector(j)
                residual = (
                    rho * h.bracket(hi, hj)
                    - h.bracket(rho * hi, hj)
                    - h.bracket(hi, rho * hj)
                )
                if _nonzero(residual):
                    violations.append(Violation("derivation", (x, i, j), residual))
            residual = crossed.mu * (rho * hi) - g.bracket(g.basis_vector(x), crossed.mu * hi)
            if _nonzero(residual):
                violations.append(Violation("equivariance", (x, i), residual))
    for i in range(h.dim):
        hi = h.basis_vector(i)
        moved = crossed.act(crossed.mu * hi)
        for j in range(h.dim):
            hj = h.basis_vector(j)
            residual = moved * hj - h.bracket(hi, hj)
            if _nonzero(residual):
                violations.append(Violation("peiffer", (i, j), residual))
    logger.debug("crossed module check found {} violations", len(violations))
    return violations


def require_crossed_module(crossed):
    """
    Raise ValidationError listing the violations of an invalid crossed module
    """
    violations = validate_crossed_module(crossed)
    if violations:
        raise ValidationError(
            f"not a crossed module: {len(violations)} violations, first {violations[0].axiom}",
            violations,
        )


@dataclass(frozen=True)
class StrictLie2:
    """
    Arrows g_minus1 over objects g_0 with source, target and identity maps
    """

    g_minus1: LieAlgebra
    g_0: LieAlgebra
    s: sympy.ImmutableMatrix
    t: sympy.ImmutableMatrix
    i: sympy.ImmutableMatrix

    def __post_init__(self):
        arrows, objects = self.g_minus1.dim, self.g_0.dim
        object.__setattr__(self, "s", as_matrix(self.s, objects, arrows))
        object.__setattr__(self, "t", as_matrix(self.t, objects, arrows))
        object.__setattr__(self, "i", as_matrix(self.i, arrows, objects))

    def change_arrow_basis(self, change):
        """
        Same structure with arrows expressed in the basis given by the columns of change
        """
        change = as_matrix(change, self.g_minus1.dim, self.g_minus1.dim)
        return StrictLie2(
            self.g_minus1.change_basis(change),
            self.g_0,
            self.s * change,
            self.t * change,
            change.inv() * self.i,
        )


def lie_morphism_violations(source, target, matrix, name):
    """
    Basis pairs on which matrix fails to preserve brackets
    """
    violations = []
    for a in range(source.dim):
        ea = source.basis_vector(a)
        for b in range(a + 1, source.dim):
            eb = source.basis_vector(b)
            residual = matrix * source.bracket(ea, eb) - target.bracket(matrix * ea, matrix * eb)
            if _nonzero(residual):
                violations.append(Violation(f"{name}-morphism", (a, b), residual))
    return violations


def validate_strict_lie2(strict):
    """
    Morphism, unit and [ker s, ker t] = 0 failures of a strict Lie 2-algebra
    """
    arrows, objects = strict.g_minus1, strict.g_0
    violations = _prefixed("arrows.", validate_lie_algebra(arrows))
    violations += _prefixed("objects.", validate_lie_algebra(objects))
    violations += lie_morphism_violations(arrows, objects, strict.s, "s")
    violations += lie_morphism_violations(arrows, objects, strict.t, "t")
    violations += lie_morphism_violations(objects, arrows, strict.i, "i")
    identity = sympy.eye(objects.dim)
    if strict.s * strict.i != identity:
        violations.append(Violation("s-unit", (), strict.s * strict.i - identity))
    if strict.t * strict.i != identity:
        violations.append(Violation("t-unit", (), strict.t * strict.i - identity))
    ker_s, ker_t = kernel_basis(strict.s), kernel_basis(strict.t)
    for a in range(ker_s.cols):
        for b in range(ker_t.cols):
            residual = arrows.bracket(ker_s[:, a], ker_t[:, b])
            if _nonzero(residual):
                violations.append(Violation("kernels-commute", (a, b), residual))
    return violations


def to_strict_lie2(crossed):
    """
    Semidirect product h x| g as arrows; the h-bracket is rebuilt from the
    action through mu, never read from h itself
    """
    require_crossed_module(crossed)
    m, n = crossed.h.dim, crossed.g.dim
    g = crossed.g
    table = [[[0] * (m + n) for _ in range(m + n)] for _ in range(m + n)]

    def store(a, b, h_part, g_part):
        for k in range(m):
            table[a][b][k] = h_part[k]
        for k in range(n):
            table[a][b][m + k] = g_part[k]

    zero_g = sympy.zeros(n, 1)
    zero_h = sympy.zeros(m, 1)
    for a in range(m):
        moved = crossed.act(crossed.mu[:, a])
        for b in range(m):
            store(a, b, moved[:, b], zero_g)
        for b in range(n):
            store(a, m + b, -crossed.action[b][:, a], zero_g)
            store(m + b, a, crossed.action[b][:, a], zero_g)
    for a in range(n):
        for b in range(n):
            store(m + a, m + b, zero_h, g.bracket(g.basis_vector(a), g.basis_vector(b)))
    arrows = LieAlgebra(
        m + n, crossed.h.basis_names + crossed.g.basis_names, table
    )
    s = sympy.Matrix.hstack(sympy.zeros(n, m), sympy.eye(n))
    t = sympy.Matrix.hstack(sympy.Matrix(crossed.mu), sympy.eye(n))
    i = sympy.Matrix.vstack(sympy.zeros(m, n), sympy.eye(n))
    logger.debug("built strict Lie 2-algebra with {} arrows over {} objects", m + n, n)
    return StrictLie2(arrows, g, s, t, i)


def from_strict_lie2(strict):
    """
    h = ker s, mu = t on ker s, g acting through brackets with identities
    """
    if strict.s * strict.i != sympy.eye(strict.g_0.dim):
        raise BasisError("s o i is not the identity, s is not split by i")
    violations = validate_strict_lie2(strict)
    if violations:
        raise ValidationError("not a strict Lie 2-algebra", violations)
    arrows = strict.g_minus1
    kernel = kernel_basis(strict.s)
    k = kernel.cols
    table = [[[0] * k for _ in range(k)] for _ in range(k)]
    for a in range(k):
        for b in range(k):
            coords = solve_injective(kernel, arrows.bracket(kernel[:, a], kernel[:, b]))
            for c in range(k):
                table[a][b][c] = coords[c]
    action = []
    for x in range(strict.g_0.dim):
        unit = strict.i[:, x]
        columns = [
            solve_injective(kernel, arrows.bracket(unit, kernel[:, b])) for b in range(k)
        ]
        action.append(columns_matrix(columns, k))
    h = LieAlgebra(k, (), table)
    return CrossedModule(h, strict.g_0, strict.t * kernel, tuple(action))


def compose_arrows(strict, first, second):
    """
    second o first for arrows with t(first) = s(second)
    """
    first = as_matrix(first, strict.g_minus1.dim, 1)
    second = as_matrix(second, strict.g_minus1.dim, 1)
    if strict.t * first != strict.s * second:
        raise ConsistencyError("arrows are not composable")
    return sympy.ImmutableMatrix(first + second - strict.i * (strict.s * second))


def arrow_part(strict, arrow):
    """
    The arrow minus the identity at its source
    """
    arrow = as_matrix(arrow, strict.g_minus1.dim, 1)
    return sympy.ImmutableMatrix(arrow - strict.i * (strict.s * arrow))


@dataclass(frozen=True)
class Cokernel:
    """
    g/im mu with its projection, coset representatives and section
    """

    gbar: LieAlgebra
    projection: sympy.ImmutableMatrix
    section: sympy.ImmutableMatrix
    representatives: tuple


def cokernel(crossed):
    """
    Quotient Lie algebra of g by the ideal im mu
    """
    n = crossed.g.dim
    image = columns_matrix(
        [crossed.mu[:, c] for c in pivot_columns(crossed.mu)], n
    )
    representatives = []
    current, rank = image, image.cols
    for j in range(n):
        joined = sympy.ImmutableMatrix(
            sympy.Matrix.hstack(current, crossed.g.basis_vector(j))
        )
        if matrix_rank(joined) > rank:
            representatives.append(j)
            current, rank = joined, rank + 1
    q = len(representatives)
    section = columns_matrix([crossed.g.basis_vector(j) for j in representatives], n)
    if n:
        inverse = sympy.Matrix.hstack(sympy.Matrix(image), sympy.Matrix(section)).inv()
        projection = sympy.ImmutableMatrix(inverse[image.cols:, :])
    else:
        projection = sympy.ImmutableMatrix.zeros(0, 0)
    table = [[[0] * q for _ in range(q)] for _ in range(q)]
    for a in range(q):
        for b in range(q):
            value = projection * crossed.g.bracket(section[:, a], section[:, b])
            for c in range(q):
                table[a][b][c] = value[c]
    names = tuple(crossed.g.basis_names[j] for j in representatives)
    logger.debug("cokernel representatives {}", representatives)
    return Cokernel(LieAlgebra(q, names, table), projection, section, tuple(representatives))


def kernel(crossed, section=None):
    """
    ker mu with its canonical basis, as a module over the cokernel
    """
    quotient = cokernel(crossed)
    if section is None:
        section = quotient.section
    basis = kernel_basis(crossed.mu)
    inverse = left_inverse(basis)
    action = []
    for j in range(quotient.gbar.dim):
        moved = crossed.act(section[:, j]) * basis
        restricted = inverse * moved
        if basis * restricted != moved:
            raise ConsistencyError("ker mu is not preserved by the action")
        action.append(restricted)
    return basis, LieModule(quotient.gbar, basis.cols, tuple(action))


@dataclass(frozen=True)
class OuterAction:
    """
    Derivations of h indexed by the cokernel basis, and whether they form a representation
    """

    derivations: tuple
    genuine: bool
    gbar: LieAlgebra
    section: sympy.ImmutableMatrix


def outer_action(crossed, section=None):
    """
    s(x) = rho(section(x)) for a basis of the cokernel
    """
    require_crossed_module(crossed)
    quotient = cokernel(crossed)
    q = quotient.gbar.dim
    if section is None:
        section = quotient.section
    else:
        section = as_matrix(section, crossed.g.dim, q)
        if quotient.projection * section != sympy.eye(q):
            raise SectionError("supplied matrix is not a section of g -> coker mu")
    derivations = tuple(crossed.act(section[:, j]) for j in range(q))
    genuine = True
    gbar = quotient.gbar
    for a in range(q):
        for b in range(a + 1, q):
            commutator = derivations[a] * derivations[b] - derivations[b] * derivations[a]
            bracket = gbar.bracket(gbar.basis_vector(a), gbar.basis_vector(b))
            if commutator != act_with(derivations, bracket):
                genuine = False
    return OuterAction(derivations, genuine, gbar, section)


@dataclass(frozen=True)
class Triplet:
    """
    Cokernel, kernel module and a closed 3-cochain: the classifying data
    """

    gbar: LieAlgebra
    module: LieModule
    gamma: sympy.ImmutableMatrix

    def __post_init__(self):
        length = cochain_length(self.gbar.dim, self.module.dim, 3)
        object.__setattr__(self, "gamma", as_matrix(self.gamma, length, 1))
        if not is_cocycle(self.gbar, self.module.dim, self.module.action, 3, self.gamma):
            raise CocycleError("gamma is not closed")


@dataclass(frozen=True)
class SkeletalModel:
    """
    Triplet together with the bilinear phi2 (an h-valued 2-cochain of the
    cokernel), the kernel basis of mu and the section used
    """

    triplet: Triplet
    phi2: sympy.ImmutableMatrix
    kernel_basis: sympy.ImmutableMatrix
    section: sympy.ImmutableMatrix
    h_dim: int

    @property
    def phi2_tensor(self):
        """
        phi2 as nested tuples [x][y][k], antisymmetric in x, y
        """
        q = self.triplet.gbar.dim
        combos, index = wedge_basis(q, 2)
        del combos
        result = [[[0] * self.h_dim for _ in range(q)] for _ in range(q)]
        for (x, y), block in index.items():
            for k in range(self.h_dim):
                value = self.phi2[block * self.h_dim + k, 0]
                result[x][y][k] = value
                result[y][x][k] = -value
        return tuple(tuple(tuple(row) for row in plane) for plane in result)


def skeletal_model(crossed, section=None):
    """
    Triplet of a crossed module: phi2 solves mu phi2(x, y) = sigma[x, y] - [sigma x, sigma y]
    through the pivot-column complement of ker mu, gamma is d_CE phi2
    """
    require_crossed_module(crossed)
    quotient = cokernel(crossed)
    gbar, q = quotient.gbar, quotient.gbar.dim
    if section is None:
        section = quotient.section
    else:
        section = as_matrix(section, crossed.g.dim, q)
        if quotient.projection * section != sympy.eye(q):
            raise SectionError("supplied matrix is not a section of g -> coker mu")
    basis, module = kernel(crossed, section)
    m = crossed.h.dim
    pivots = pivot_columns(crossed.mu)
    complement = columns_matrix([crossed.mu[:, c] for c in pivots], crossed.g.dim)
    combos, _ = wedge_basis(q, 2)
    phi2 = []
    for x, y in combos:
        ex, ey = gbar.basis_vector(x), gbar.basis_vector(y)
        default = section * gbar.bracket(ex, ey) - crossed.g.bracket(
            section * ex, section * ey
        )
        try:
            coords = solve_injective(complement, default)
        except ConsistencyError as err:
            raise ConsistencyError(
                f"default of the section at ({x}, {y}) is not in im mu"
            ) from err
        value = sympy.zeros(m, 1)
        for row, pivot in enumerate(pivots):
            value[pivot, 0] = coords[row]
        phi2.extend(value)
    phi2 = sympy.ImmutableMatrix(len(phi2), 1, phi2)
    h_action = tuple(crossed.act(section[:, j]) for j in range(q))
    gamma_h = ce_differential(gbar, m, h_action, 2) * phi2
    if _nonzero(map_coefficients(gamma_h, q, 3, crossed.mu)):
        raise ConsistencyError("d phi2 does not take values in ker mu")
    gamma = map_coefficients(gamma_h, q, 3, left_inverse(basis))
    if map_coefficients(gamma, q, 3, basis) != gamma_h:
        raise ConsistencyError("d phi2 is not expressible in the kernel basis")
    logger.debug("skeletal model: cokernel dim {}, kernel dim {}", q, basis.cols)
    return SkeletalModel(Triplet(gbar, module, gamma), phi2, basis, section, m)


def extract_triplet(crossed):
    """
    Classifying triplet of a crossed module
    """
    return skeletal_model(crossed).triplet


def splice_crossed_module(ses, alpha):
    """
    mu: I -> Q x_alpha gbar, mu(x) = (proj x, 0), with I abelian and acted on
    through gbar; the extension bracket is (x1.q2 - x2.q1 - alpha(x1, x2), [x1, x2])
    """
    validate_ses(ses)
    gbar = ses.algebra
    quotient = ses.quotient
    p, q = gbar.dim, quotient.dim
    alpha = as_matrix(alpha, cochain_length(p, q, 2), 1)
    if not is_cocycle(gbar, q, quotient.action, 2, alpha):
        raise CocycleError("alpha is not a cocycle")
    _, index = wedge_basis(p, 2)
    size = q + p
    table = [[[0] * size for _ in range(size)] for _ in range(size)]
    for a in range(q):
        for j in range(p):
            column = quotient.action[j][:, a]
            for k in range(q):
                table[a][q + j][k] = -column[k]
                table[q + j][a][k] = column[k]
    for i in range(p):
        for j in range(i + 1, p):
            block = index[(i, j)]
            bracket = gbar.bracket(gbar.basis_vector(i), gbar.basis_vector(j))
            for k in range(q):
                table[q + i][q + j][k] = -alpha[block * q + k, 0]
                table[q + j][q + i][k] = alpha[block * q + k, 0]
            for k in range(p):
                table[q + i][q + j][q + k] = bracket[k]
                table[q + j][q + i][q + k] = -bracket[k]
    names = tuple(f"q{a}" for a in range(q)) + gbar.basis_names
    extension = LieAlgebra(size, names, table)
    middle = ses.middle
    mu = sympy.zeros(size, middle.dim)
    if q and middle.dim:
        mu[:q, :] = ses.proj
    zero = sympy.zeros(middle.dim, middle.dim)
    action = tuple([zero] * q) + tuple(middle.action)
    spliced = CrossedModule(LieAlgebra.abelian(middle.dim), extension, mu, action)
    logger.debug("spliced crossed module with g of dim {}", size)
    return spliced


def gamma_in_submodule(model, ses):
    """
    Skeletal gamma of a spliced crossed module rewritten in the basis of the
    submodule of the sequence
    """
    change = solve_columns(ses.incl, model.kernel_basis)
    return map_coefficients(model.triplet.gamma, model.triplet.gbar.dim, 3, change)


def solve_columns(matrix, targets):
    """
    X with matrix * X = targets, column by column
    """
    return columns_matrix(
        [solve_injective(matrix, targets[:, c]) for c in range(targets.cols)], matrix.cols
    )


def splice_connecting_class(ses, alpha):
    """
    Connecting cochain of alpha together with the skeletal gamma of the splice,
    both in the submodule basis
    """
    model = skeletal_model(splice_crossed_module(ses, alpha))
    return connecting_map(ses, alpha), gamma_in_submodule(model, ses)


@dataclass(frozen=True)
class ElementaryEquivalence:
    """
    phi: h -> h' and psi: g -> g'
    """

    phi: sympy.ImmutableMatrix
    psi: sympy.ImmutableMatrix


def crossed_morphism_violations(source, target, phi, psi):
    """
    Failures of (phi, psi) to be a morphism of crossed modules
    """
    violations = lie_morphism_violations(source.h, target.h, phi, "phi")
    violations += lie_morphism_violations(source.g, target.g, psi, "psi")
    residual = target.mu * phi - psi * source.mu
    for i in range(source.h.dim):
        if _nonzero(residual[:, i]):
            violations.append(Violation("mu-compatibility", (i,), residual[:, i]))
    for x in range(source.g.dim):
        moved = target.act(psi[:, x])
        for i in range(source.h.dim):
            residual = phi * source.action[x][:, i] - moved * phi[:, i]
            if _nonzero(residual):
                violations.append(Violation("action-compatibility", (x, i), residual))
    return violations


def check_elementary_equivalence(source, target, equivalence):
    """
    Morphism conditions plus identity on kernels and on cokernels; empty when
    the maps form an elementary equivalence
    """
    phi = as_matrix(equivalence.phi, target.h.dim, source.h.dim)
    psi = as_matrix(equivalence.psi, target.g.dim, source.g.dim)
    violations = crossed_morphism_violations(source, target, phi, psi)
    ker_source, ker_target = kernel_basis(source.mu), kernel_basis(target.mu)
    if ker_source.cols != ker_target.cols:
        violations.append(Violation("kernel-identity", (ker_source.cols, ker_target.cols)))
    else:
        try:
            induced = solve_columns(ker_target, phi * ker_source)
        except ConsistencyError:
            violations.append(Violation("kernel-identity", ()))
        else:
            if induced != sympy.eye(ker_source.cols):
                violations.append(Violation("kernel-identity", (), induced))
    coker_source, coker_target = cokernel(source), cokernel(target)
    q_source, q_target = coker_source.gbar.dim, coker_target.gbar.dim
    if q_source != q_target:
        violations.append(Violation("cokernel-identity", (q_source, q_target)))
    else:
        induced = coker_target.projection * psi * coker_source.section
        if induced != sympy.eye(q_source):
            violations.append(Violation("cokernel-identity", (), induced))
    logger.debug("elementary equivalence check: {} failures", len(violations))
    return violations


def gamma_classes_agree(triplet, other):
    """
    Two triplets over the same cokernel and kernel module have cohomologous gammas
    """
    if triplet.gbar != other.gbar or triplet.module != other.module:
        raise StructuralError("triplets live over different data")
    return same_class(triplet.module, 3, triplet.gamma, other.gamma)


def inner_derivation_span(crossed):
    """
    Columns spanning ad(h) inside gl(h), each matrix flattened row-major
    """
    h = crossed.h
    flats = []
    for i in range(h.dim):
        flats.append(sympy.ImmutableMatrix(list(h.ad(i))))
    return columns_matrix(flats, h.dim * h.dim)
