"""
Exact linear algebra over the rationals: Lie algebras given by structure
constants, their modules, and Chevalley-Eilenberg cochains and cohomology.

Cochains of degree p with values in an m-dimensional module are column
vectors in the basis of Lambda^p g* (x) V ordered lexicographically by the
increasing index tuple, module index fastest.
"""

# pylint: disable=R0913,R0914

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import sympy
from loguru import logger

from holonomy2.errors import (
    CocycleError,
    ConsistencyError,
    ExactnessError,
    RepresentationError,
    SectionError,
    StructuralError,
    Violation,
)


def rational(value):
    """
    Coerce ints, Fractions, sympy numbers and "p/q" strings to sympy.Rational
    """
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, str):
        return sympy.Rational(value.strip())
    if isinstance(value, float):
        raise StructuralError(f"refusing float {value!r} in exact arithmetic")
    return sympy.Rational(value)


def as_matrix(rows, nrows=None, ncols=None):
    """
    Immutable rational matrix from nested lists or a sympy matrix
    """
    if isinstance(rows, sympy.MatrixBase):
        result = sympy.ImmutableMatrix(rows.applyfunc(rational))
    else:
        rows = [list(row) for row in rows]
        if nrows is not None and not rows:
            result = sympy.ImmutableMatrix.zeros(nrows, ncols or 0)
        else:
            width = len(rows[0]) if rows else 0
            if any(len(row) != width for row in rows):
                raise StructuralError("ragged matrix rows")
            result = sympy.ImmutableMatrix(
                len(rows), width, [rational(x) for row in rows for x in row]
            )
    if nrows is not None and result.rows != nrows:
        raise StructuralError(f"expected {nrows} rows, got {result.rows}")
    if ncols is not None and result.cols != ncols:
        raise StructuralError(f"expected {ncols} columns, got {result.cols}")
    return result


def zero_vector(length):
    """
    Zero column of the given length
    """
    return sympy.ImmutableMatrix.zeros(length, 1)


def columns_matrix(vectors, nrows):
    """
    Stack column vectors side by side; empty input gives an nrows x 0 matrix
    """
    if not vectors:
        return sympy.ImmutableMatrix.zeros(nrows, 0)
    return sympy.ImmutableMatrix(sympy.Matrix.hstack(*vectors))


def matrix_rank(matrix):
    """
    Exact rank, zero for empty matrices
    """
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return sympy.Matrix(matrix).rank()


def kernel_basis(matrix):
    """
    Columns spanning the null space, in sympy's free-variable order
    """
    ncols = matrix.cols
    if ncols == 0:
        return sympy.ImmutableMatrix.zeros(0, 0)
    if matrix.rows == 0:
        return sympy.ImmutableMatrix.eye(ncols)
    return columns_matrix(sympy.Matrix(matrix).nullspace(), ncols)


def pivot_columns(matrix):
    """
    Pivot columns of the reduced row echelon form
    """
    if matrix.rows == 0 or matrix.cols == 0:
        return ()
    return tuple(sympy.Matrix(matrix).rref()[1])


def in_column_space(span, vector):
    """
    Exact membership of vector in the column space of span, by rank comparison
    """
    if all(x == 0 for x in vector):
        return True
    if span.cols == 0:
        return False
    joined = sympy.Matrix.hstack(sympy.Matrix(span), sympy.Matrix(vector))
    return matrix_rank(joined) == matrix_rank(span)


def solve_injective(matrix, vector):
    """
    Unique x with matrix * x = vector for a matrix of full column rank
    """
    if matrix.cols == 0:
        if any(x != 0 for x in vector):
            raise ConsistencyError("nonzero vector outside the zero subspace")
        return sympy.ImmutableMatrix.zeros(0, 1)
    gram = matrix.T * matrix
    solution = gram.inv() * (matrix.T * vector)
    if matrix * solution != vector:
        raise ConsistencyError("vector is not in the image of the map")
    return sympy.ImmutableMatrix(solution)


def left_inverse(matrix):
    """
    Left inverse of a matrix with full column rank
    """
    if matrix.cols == 0:
        return sympy.ImmutableMatrix.zeros(0, matrix.rows)
    return sympy.ImmutableMatrix((matrix.T * matrix).inv() * matrix.T)


def pivot_section(surjection):
    """
    Right inverse of a surjection built on its pivot columns
    """
    target, source = surjection.shape
    pivots = pivot_columns(surjection)
    if len(pivots) != target:
        raise SectionError("map is not surjective, no section exists")
    section = sympy.zeros(source, target)
    if target:
        block = sympy.Matrix(surjection)[:, list(pivots)].inv()
        for row, pivot in enumerate(pivots):
            section[pivot, :] = block[row, :]
    return sympy.ImmutableMatrix(section)


def permutation_sign(sequence):
    """
    Sign of the permutation sorting a sequence of distinct items
    """
    sign = 1
    items = list(sequence)
    for i, item in enumerate(items):
        for other in items[i + 1:]:
            if other < item:
                sign = -sign
    return sign


@lru_cache(maxsize=None)
def wedge_basis(dim, degree):
    """
    Increasing index tuples of length degree, with their positions
    """
    combos = tuple(combinations(range(dim), degree))
    return combos, {combo: i for i, combo in enumerate(combos)}


def cochain_length(dim, module_dim, degree):
    """
    Dimension of Lambda^degree g* (x) V
    """
    return len(wedge_basis(dim, degree)[0]) * module_dim


@dataclass(frozen=True)
class LieAlgebra:
    """
    Finite-dimensional Lie algebra over Q: [e_i, e_j] = sum_k c[i][j][k] e_k
    """

    dim: int
    basis_names: tuple
    structure_constants: tuple

    def __post_init__(self):
        names = tuple(self.basis_names) if self.basis_names else tuple(
            f"e{i}" for i in range(self.dim)
        )
        if len(names) != self.dim:
            raise StructuralError("basis_names must have dim entries")
        raw = self.structure_constants
        if len(raw) != self.dim or any(len(row) != self.dim for row in raw):
            raise StructuralError("structure constants must have shape dim^3")
        if any(len(entry) != self.dim for row in raw for entry in row):
            raise StructuralError("structure constants must have shape dim^3")
        constants = tuple(
            tuple(tuple(rational(x) for x in entry) for entry in row) for row in raw
        )
        object.__setattr__(self, "basis_names", names)
        object.__setattr__(self, "structure_constants", constants)

    @classmethod
    def from_brackets(cls, names, brackets):
        """
        Build from {(i, j): {k: coefficient}} for i < j, filling antisymmetry
        """
        dim = len(names)
        table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in brackets.items():
            for k, coef in value.items():
                table[i][j][k] = rational(coef)
                table[j][i][k] = -rational(coef)
        return cls(dim, tuple(names), table)

    @classmethod
    def abelian(cls, dim, names=None):
        """
        Zero bracket
        """
        zeros = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
        return cls(dim, tuple(names) if names else (), zeros)

    @property
    def is_abelian(self):
        """
        True when every structure constant vanishes
        """
        return all(x == 0 for row in self.structure_constants for e in row for x in e)

    def basis_vector(self, i):
        """
        Column vector of e_i
        """
        vector = sympy.zeros(self.dim, 1)
        vector[i, 0] = 1
        return sympy.ImmutableMatrix(vector)

    def bracket(self, x, y):
        """
        Bracket of two coordinate columns
        """
        result = sympy.zeros(self.dim, 1)
        for i in range(self.dim):
            if x[i] == 0:
                continue
            for j in range(self.dim):
                if y[j] == 0:
                    continue
                coef = x[i] * y[j]
                for k, c_ijk in enumerate(self.structure_constants[i][j]):
                    if c_ijk:
                        result[k, 0] += coef * c_ijk
        return sympy.ImmutableMatrix(result)

    def ad(self, i):
        """
        Matrix of ad(e_i)
        """
        return sympy.ImmutableMatrix(
            self.dim, self.dim, lambda k, j: self.structure_constants[i][j][k]
        )

    def ad_vector(self, x):
        """
        Matrix of ad(x) for a coordinate column x
        """
        result = sympy.zeros(self.dim, self.dim)
        for i in range(self.dim):
            if x[i]:
                result += x[i] * self.ad(i)
        return sympy.ImmutableMatrix(result)

    def change_basis(self, change):
        """
        Same algebra in the basis given by the columns of an invertible matrix
        """
        change = as_matrix(change, self.dim, self.dim)
        inverse = change.inv()
        columns = [change[:, j] for j in range(self.dim)]
        table = [[[0] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for j in range(self.dim):
            for k in range(self.dim):
                value = inverse * self.bracket(columns[j], columns[k])
                for m in range(self.dim):
                    table[j][k][m] = value[m]
        return LieAlgebra(self.dim, (), table)

    def direct_sum(self, other):
        """
        Block direct sum, self first
        """
        dim = self.dim + other.dim
        table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    table[i][j][k] = self.structure_constants[i][j][k]
        offset = self.dim
        for i in range(other.dim):
            for j in range(other.dim):
                for k in range(other.dim):
                    table[offset + i][offset + j][offset + k] = (
                        other.structure_constants[i][j][k]
                    )
        return LieAlgebra(dim, self.basis_names + other.basis_names, table)


def validate_lie_algebra(algebra):
    """
    Every antisymmetry or Jacobi failure with its residual; empty when valid
    """
    if not isinstance(algebra, LieAlgebra):
        raise StructuralError("expected a LieAlgebra")
    dim = algebra.dim
    c = algebra.structure_constants
    violations = []
    for i in range(dim):
        for j in range(i, dim):
            for k in range(dim):
                residual = c[i][j][k] + c[j][i][k]
                if residual != 0:
                    violations.append(Violation("antisymmetry", (i, j, k), residual))
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                for l in range(dim):
                    residual = sum(
                        c[i][j][m] * c[m][k][l]
                        + c[j][k][m] * c[m][i][l]
                        + c[k][i][m] * c[m][j][l]
                        for m in range(dim)
                    )
                    if residual != 0:
                        violations.append(Violation("jacobi", (i, j, k, l), residual))
    logger.debug("Lie algebra of dim {} has {} violations", dim, len(violations))
    return violations


@dataclass(frozen=True)
class LieModule:
    """
    Module over a Lie algebra: one dim x dim matrix rho(e_i) per basis vector
    """

    algebra: LieAlgebra
    dim: int
    action: tuple

    def __post_init__(self):
        if len(self.action) != self.algebra.dim:
            raise StructuralError("need one action matrix per algebra basis vector")
        matrices = tuple(as_matrix(m, self.dim, self.dim) for m in self.action)
        object.__setattr__(self, "action", matrices)

    @classmethod
    def trivial(cls, algebra, dim):
        """
        Every basis vector acts by zero
        """
        zero = sympy.ImmutableMatrix.zeros(dim, dim)
        return cls(algebra, dim, tuple(zero for _ in range(algebra.dim)))

    @classmethod
    def adjoint(cls, algebra):
        """
        The algebra acting on itself
        """
        return cls(algebra, algebra.dim, tuple(algebra.ad(i) for i in range(algebra.dim)))

    def act(self, x):
        """
        Matrix of the action of a coordinate column x
        """
        result = sympy.zeros(self.dim, self.dim)
        for i in range(self.algebra.dim):
            if x[i]:
                result += x[i] * self.action[i]
        return sympy.ImmutableMatrix(result)


def validate_module(module):
    """
    Representation-property failures rho(e_i)rho(e_j) - rho(e_j)rho(e_i) - rho([e_i,e_j])
    """
    violations = []
    algebra = module.algebra
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            commutator = (
                module.action[i] * module.action[j] - module.action[j] * module.action[i]
            )
            residual = commutator - module.act(algebra.bracket(
                algebra.basis_vector(i), algebra.basis_vector(j)))
            if any(x != 0 for x in residual):
                violations.append(Violation("representation", (i, j), residual))
    return violations


def _require_module(module):
    violations = validate_module(module)
    if violations:
        raise RepresentationError(
            f"action fails the representation property at {violations[0].indices}"
        )


def ce_differential(algebra, module_dim, action, degree):
    """
    Matrix of d: C^degree -> C^(degree+1) for any action matrices; no
    representation check, so it also serves as the formal differential
    """
    dim = algebra.dim
    src, src_index = wedge_basis(dim, degree)
    dst, _ = wedge_basis(dim, degree + 1)
    m = module_dim
    result = sympy.zeros(len(dst) * m, len(src) * m)
    c = algebra.structure_constants
    for row_block, word in enumerate(dst):
        for pos, letter in enumerate(word):
            rest = word[:pos] + word[pos + 1:]
            col_block = src_index[rest]
            sign = -1 if pos % 2 else 1
            matrix = action[letter]
            for b in range(m):
                for a in range(m):
                    if matrix[b, a]:
                        result[row_block * m + b, col_block * m + a] += sign * matrix[b, a]
        for first in range(len(word)):
            for second in range(first + 1, len(word)):
                rest = word[:first] + word[first + 1:second] + word[second + 1:]
                sign = -1 if (first + second) % 2 else 1
                for top, coef in enumerate(c[word[first]][word[second]]):
                    if coef == 0 or top in rest:
                        continue
                    shift = sum(1 for r in rest if r < top)
                    target = tuple(sorted((top,) + rest))
                    col_block = src_index[target]
                    value = sign * coef * (-1 if shift % 2 else 1)
                    for a in range(m):
                        result[row_block * m + a, col_block * m + a] += value
    return sympy.ImmutableMatrix(result)


def module_differential(module, degree):
    """
    d_CE on cochains of a genuine module
    """
    _require_module(module)
    return ce_differential(module.algebra, module.dim, module.action, degree)


def evaluate_cochain(vector, dim, module_dim, degree, indices):
    """
    Value of a cochain on basis vectors e_indices (any order), as a column
    """
    if len(set(indices)) < len(indices):
        return zero_vector(module_dim)
    _, index = wedge_basis(dim, degree)
    block = index[tuple(sorted(indices))]
    sign = permutation_sign(indices)
    values = vector[block * module_dim:(block + 1) * module_dim, 0]
    return sympy.ImmutableMatrix(values * sign)


def cochain_from_values(dim, module_dim, degree, values):
    """
    Cochain vector from {increasing index tuple: value column or list}
    """
    combos, index = wedge_basis(dim, degree)
    vector = sympy.zeros(len(combos) * module_dim, 1)
    for indices, value in values.items():
        key = tuple(indices)
        if key not in index:
            raise StructuralError(f"{key} is not an increasing index tuple")
        for a in range(module_dim):
            vector[index[key] * module_dim + a, 0] = rational(value[a])
    return sympy.ImmutableMatrix(vector)


def map_coefficients(vector, dim, degree, matrix):
    """
    Apply a linear map of coefficient spaces to every block of a cochain
    """
    blocks = len(wedge_basis(dim, degree)[0])
    source = matrix.cols
    result = []
    for block in range(blocks):
        result.extend(matrix * vector[block * source:(block + 1) * source, 0])
    return sympy.ImmutableMatrix(len(result), 1, result)


@dataclass(frozen=True)
class CohomologyResult:
    """
    Basis of cocycles representing H^degree and the Betti number
    """

    degree: int
    betti: int
    basis: tuple
    cocycle_dim: int
    coboundary_dim: int


def ce_cohomology(algebra, module, degree):
    """
    H^degree(algebra, module) by exact rank computations
    """
    if degree < 0:
        raise StructuralError("degree must be non-negative")
    _require_module(module)
    upper = ce_differential(algebra, module.dim, module.action, degree)
    cocycles = kernel_basis(upper)
    length = cochain_length(algebra.dim, module.dim, degree)
    if degree == 0:
        boundaries = sympy.ImmutableMatrix.zeros(length, 0)
    else:
        boundaries = ce_differential(algebra, module.dim, module.action, degree - 1)
    boundary_rank = matrix_rank(boundaries)
    chosen = []
    current = boundaries
    current_rank = boundary_rank
    for col in range(cocycles.cols):
        candidate = cocycles[:, col]
        joined = sympy.ImmutableMatrix(sympy.Matrix.hstack(current, candidate))
        rank = matrix_rank(joined)
        if rank > current_rank:
            chosen.append(sympy.ImmutableMatrix(candidate))
            current, current_rank = joined, rank
    logger.debug(
        "H^{}: {} cocycles, boundary rank {}, betti {}",
        degree, cocycles.cols, boundary_rank, len(chosen),
    )
    return CohomologyResult(degree, len(chosen), tuple(chosen), cocycles.cols, boundary_rank)


def is_cocycle(algebra, module_dim, action, degree, vector):
    """
    d_CE(vector) == 0 exactly
    """
    image = ce_differential(algebra, module_dim, action, degree) * vector
    return all(x == 0 for x in image)


def is_coboundary(module, degree, vector):
    """
    vector lies in the image of d_CE from the degree below
    """
    if degree == 0:
        return all(x == 0 for x in vector)
    lower = ce_differential(module.algebra, module.dim, module.action, degree - 1)
    return in_column_space(lower, vector)


def same_class(module, degree, first, second):
    """
    Two cocycles differ by a coboundary
    """
    return is_coboundary(module, degree, sympy.ImmutableMatrix(first - second))


@dataclass(frozen=True)
class ShortExactSequence:
    """
    0 -> sub --incl--> middle --proj--> quotient -> 0 of modules over one algebra
    """

    sub: LieModule
    middle: LieModule
    quotient: LieModule
    incl: sympy.ImmutableMatrix
    proj: sympy.ImmutableMatrix

    def __post_init__(self):
        object.__setattr__(self, "incl", as_matrix(self.incl, self.middle.dim, self.sub.dim))
        object.__setattr__(
            self, "proj", as_matrix(self.proj, self.quotient.dim, self.middle.dim)
        )

    @property
    def algebra(self):
        """
        The common acting algebra
        """
        return self.middle.algebra


def validate_ses(ses):
    """
    Raise unless the sequence is a short exact sequence of module maps
    """
    algebra = ses.middle.algebra
    if ses.sub.algebra != algebra or ses.quotient.algebra != algebra:
        raise StructuralError("modules of a sequence must share the algebra")
    for module in (ses.sub, ses.middle, ses.quotient):
        _require_module(module)
    if any(x != 0 for x in ses.proj * ses.incl):
        raise ExactnessError("proj o incl is not zero")
    if matrix_rank(ses.incl) != ses.sub.dim:
        raise ExactnessError("incl is not injective")
    if matrix_rank(ses.proj) != ses.quotient.dim:
        raise ExactnessError("proj is not surjective")
    if ses.middle.dim != ses.sub.dim + ses.quotient.dim:
        raise ExactnessError("dimensions do not add up, sequence is not exact")
    for i in range(algebra.dim):
        if ses.middle.action[i] * ses.incl != ses.incl * ses.sub.action[i]:
            raise ExactnessError(f"incl is not equivariant for basis vector {i}")
        if ses.proj * ses.middle.action[i] != ses.quotient.action[i] * ses.proj:
            raise ExactnessError(f"proj is not equivariant for basis vector {i}")


def connecting_map(ses, alpha, section=None, degree=2):
    """
    Connecting homomorphism H^degree(L, Q) -> H^(degree+1)(L, V) on a cocycle:
    lift alpha through a section of proj, apply d_CE, read off in V
    """
    validate_ses(ses)
    algebra = ses.algebra
    alpha = as_matrix(alpha, cochain_length(algebra.dim, ses.quotient.dim, degree), 1)
    quotient = ses.quotient
    if not is_cocycle(algebra, quotient.dim, quotient.action, degree, alpha):
        raise CocycleError("alpha is not a cocycle")
    if section is None:
        section = pivot_section(ses.proj)
    else:
        section = as_matrix(section, ses.middle.dim, ses.quotient.dim)
        if ses.proj * section != sympy.eye(ses.quotient.dim):
            raise SectionError("supplied matrix is not a section of proj")
    lifted = map_coefficients(alpha, algebra.dim, degree, section)
    image = module_differential(ses.middle, degree) * lifted
    result = map_coefficients(image, algebra.dim, degree + 1, left_inverse(ses.incl))
    if map_coefficients(result, algebra.dim, degree + 1, ses.incl) != image:
        raise ConsistencyError("d of the lift does not land in the submodule")
    logger.debug("connecting map produced a cochain of length {}", result.rows)
    return result
