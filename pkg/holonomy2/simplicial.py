"""
Finite pointed simplicial sets and the higher Hochschild complex.

A chain of the complex attached to Y is a combination of keys (k, word)
where word has one letter per element of Y_k; the basepoint (index 0 at
every level) is the module slot. On such a key

    D = sum_i (-1)^(k + E_i) (d on letter i) + sum_i (-1)^i (d_i)_*

with E_i the sum of the degrees of the letters before slot i, and f_*
multiplying the letters of each fibre in increasing order with the Koszul
sign of the reordering.
"""

# pylint: disable=R0913,R0914

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from holonomy2.errors import StructuralError, UnsupportedStructureError, Violation
from holonomy2.hochschild import HochChain


@dataclass(frozen=True)
class FinSimpSet:
    """
    Levels 0..cutoff: sizes, faces[k][i] (Y_k -> Y_{k-1}, k >= 1) and
    degeneracies[k][j] (Y_k -> Y_{k+1}, k < cutoff) as index tables
    """

    sizes: tuple
    faces: tuple
    degeneracies: tuple
    name: str = ""

    @property
    def cutoff(self):
        """
        Highest level
        """
        return len(self.sizes) - 1

    def face(self, level, i):
        """
        Table of d_i on the given level
        """
        return self.faces[level][i]

    def degeneracy(self, level, j):
        """
        Table of s_j on the given level
        """
        return self.degeneracies[level][j]


def compose_maps(outer, inner):
    """
    Table of outer after inner
    """
    return tuple(outer[x] for x in inner)


def _shape_violations(simp):
    violations = []
    cutoff = simp.cutoff
    if len(simp.faces) != cutoff + 1 or len(simp.degeneracies) != cutoff + 1:
        raise StructuralError("need face and degeneracy tables for every level")
    for k in range(cutoff + 1):
        expected_faces = k + 1 if k else 0
        if len(simp.faces[k]) != expected_faces:
            raise StructuralError(f"level {k} needs {expected_faces} face maps")
        expected_degeneracies = k + 1 if k < cutoff else 0
        if len(simp.degeneracies[k]) != expected_degeneracies:
            raise StructuralError(f"level {k} needs {expected_degeneracies} degeneracies")
        for i, table in enumerate(simp.faces[k]):
            if len(table) != simp.sizes[k] or any(
                not 0 <= x < simp.sizes[k - 1] for x in table
            ):
                raise StructuralError(f"face d_{i} on level {k} is not a map of levels")
            if table[0] != 0:
                violations.append(Violation("basepoint", (k, "d", i)))
        for j, table in enumerate(simp.degeneracies[k]):
            if len(table) != simp.sizes[k] or any(
                not 0 <= x < simp.sizes[k + 1] for x in table
            ):
                raise StructuralError(f"degeneracy s_{j} on level {k} is not a map of levels")
            if table[0] != 0:
                violations.append(Violation("basepoint", (k, "s", j)))
    return violations


def validate_simplicial(simp):
    """
    Every violated simplicial identity, named by (rule, level, i, j)
    """
    violations = _shape_violations(simp)
    cutoff = simp.cutoff
    for k in range(2, cutoff + 1):
        for j in range(k + 1):
            for i in range(j):
                lhs = compose_maps(simp.face(k - 1, i), simp.face(k, j))
                rhs = compose_maps(simp.face(k - 1, j - 1), simp.face(k, i))
                if lhs != rhs:
                    violations.append(Violation("face-face", (k, i, j)))
    for k in range(cutoff):
        identity = tuple(range(simp.sizes[k]))
        for j in range(k + 1):
            degeneracy = simp.degeneracy(k, j)
            for i in range(k + 2):
                lhs = compose_maps(simp.face(k + 1, i), degeneracy)
                if i < j:
                    rhs = compose_maps(simp.degeneracy(k - 1, j - 1), simp.face(k, i))
                elif i in (j, j + 1):
                    rhs = identity
                else:
                    rhs = compose_maps(simp.degeneracy(k - 1, j), simp.face(k, i - 1))
                if lhs != rhs:
                    violations.append(Violation("face-degeneracy", (k, i, j)))
    for k in range(cutoff - 1):
        for j in range(k + 1):
            for i in range(j + 1):
                lhs = compose_maps(simp.degeneracy(k + 1, i), simp.degeneracy(k, j))
                rhs = compose_maps(simp.degeneracy(k + 1, j + 1), simp.degeneracy(k, i))
                if lhs != rhs:
                    violations.append(Violation("degeneracy-degeneracy", (k, i, j)))
    logger.debug("simplicial set {!r}: {} violations", simp.name, len(violations))
    return violations


def circle_model(cutoff):
    """
    Delta[1] with its boundary collapsed: element j of level k stands for the
    sequence of j zeros followed by ones, and both constant sequences are the
    basepoint 0
    """
    if cutoff < 1:
        raise StructuralError("the circle model needs cutoff >= 1")
    sizes = tuple(k + 1 for k in range(cutoff + 1))

    def collapse(zeros, length):
        return 0 if zeros in (0, length) else zeros

    faces, degeneracies = [], []
    for k in range(cutoff + 1):
        level_faces = []
        if k:
            for i in range(k + 1):
                table = [0]
                for j in range(1, k + 1):
                    table.append(collapse(j - 1 if i < j else j, k))
                level_faces.append(tuple(table))
        faces.append(tuple(level_faces))
        level_degeneracies = []
        if k < cutoff:
            for i in range(k + 1):
                table = [0]
                for j in range(1, k + 1):
                    table.append(j + 1 if i < j else j)
                level_degeneracies.append(tuple(table))
        degeneracies.append(tuple(level_degeneracies))
    return FinSimpSet(sizes, tuple(faces), tuple(degeneracies), "circle")


def point_model(cutoff):
    """
    One element on every level
    """
    sizes = (1,) * (cutoff + 1)
    faces = tuple(tuple((0,) for _ in range(k + 1)) if k else () for k in range(cutoff + 1))
    degeneracies = tuple(
        tuple((0,) for _ in range(k + 1)) if k < cutoff else () for k in range(cutoff + 1)
    )
    return FinSimpSet(sizes, faces, degeneracies, "point")


def product_model(first, second):
    """
    Levelwise product; the pair (y, z) has index y * |Z_k| + z
    """
    if first.cutoff != second.cutoff:
        raise StructuralError("product needs equal cutoffs")

    def pair_table(table_y, table_z, target_size_z):
        return tuple(
            table_y[y] * target_size_z + table_z[z]
            for y in range(len(table_y))
            for z in range(len(table_z))
        )

    faces, degeneracies = [], []
    for k in range(first.cutoff + 1):
        faces.append(tuple(
            pair_table(first.face(k, i), second.face(k, i), second.sizes[k - 1])
            for i in range(len(first.faces[k]))
        ))
        degeneracies.append(tuple(
            pair_table(first.degeneracy(k, j), second.degeneracy(k, j), second.sizes[k + 1])
            for j in range(len(first.degeneracies[k]))
        ))
    sizes = tuple(a * b for a, b in zip(first.sizes, second.sizes))
    return FinSimpSet(
        sizes, tuple(faces), tuple(degeneracies), f"{first.name}x{second.name}"
    )


def torus_model(cutoff):
    """
    Product of two circles
    """
    circle = circle_model(cutoff)
    return product_model(circle, circle)


def induced_map(mapping, word, algebra, target_size):
    """
    f_* of a word: each target slot gets the product of its fibre, taken in
    increasing source order, with the Koszul sign of gathering the fibres
    """
    if len(mapping) != len(word):
        raise StructuralError("word length must match the source level")
    if mapping and mapping[0] != 0:
        raise StructuralError("map does not preserve the basepoint")
    degrees = [algebra.degree(letter) for letter in word]
    sign = 1
    for i in range(len(word)):
        for later in range(i + 1, len(word)):
            if mapping[later] < mapping[i] and degrees[i] * degrees[later] % 2:
                sign = -sign
    fibres = [[] for _ in range(target_size)]
    for source, target in enumerate(mapping):
        fibres[target].append(word[source])
    partial = {(): Fraction(sign)}
    for fibre in fibres:
        product = {algebra.unit_key(): Fraction(1)}
        for letter in fibre:
            grown = defaultdict(Fraction)
            for key, coef in product.items():
                for result, value in algebra.multiply(key, letter).items():
                    grown[result] += coef * value
            product = grown
        extended = defaultdict(Fraction)
        for prefix, coef in partial.items():
            for letter, value in product.items():
                if coef * value:
                    extended[prefix + (letter,)] += coef * value
        partial = extended
    return {w: c for w, c in partial.items() if c}


def push_forward(mapping, terms, algebra, target_size):
    """
    induced_map extended linearly to {word: coefficient}
    """
    result = defaultdict(Fraction)
    for word, coef in terms.items():
        for image, value in induced_map(mapping, word, algebra, target_size).items():
            result[image] += coef * value
    return {w: c for w, c in result.items() if c}


def _require_commutative(algebra):
    if not getattr(algebra, "commutative", False):
        raise UnsupportedStructureError("higher Hochschild chains need a commutative algebra")


def higher_d(chain, simp, algebra):
    """
    D on a chain of keys (k, word)
    """
    _require_commutative(algebra)
    result = defaultdict(Fraction)
    for (level, word), coef in chain.terms:
        if level > simp.cutoff or len(word) != simp.sizes[level]:
            raise StructuralError(f"word of length {len(word)} does not fit level {level}")
        before = 0
        for slot, letter in enumerate(word):
            sign = -1 if (level + before) % 2 else 1
            for image, value in algebra.differential(letter).items():
                result[(level, word[:slot] + (image,) + word[slot + 1:])] += sign * coef * value
            before += algebra.degree(letter)
        if level == 0:
            continue
        for i in range(level + 1):
            sign = -1 if i % 2 else 1
            pushed = induced_map(
                simp.face(level, i), word, algebra, simp.sizes[level - 1]
            )
            for image, value in pushed.items():
                result[(level - 1, image)] += sign * coef * value
    return HochChain.from_dict(result)


def circle_identification(chain, algebra):
    """
    Hochschild word a0[a1|...|ak] to the circle-model key (k, word), twisted
    by (-1)^{sum_i (k + 1 + i)|a_i|}; this intertwines hochschild_d with higher_d
    """
    result = {}
    for word, coef in chain.terms:
        k = len(word) - 1
        exponent = sum((k + 1 + i) * algebra.degree(a) for i, a in enumerate(word))
        result[(k, word)] = coef * (-1 if exponent % 2 else 1)
    return HochChain.from_dict(result)


def higher_degree(key, algebra):
    """
    Internal degree minus simplicial degree; D raises it by one
    """
    level, word = key
    return sum(algebra.degree(a) for a in word) - level


def chain_space_dimensions(simp, algebra):
    """
    {level: {internal degree: number of words}}, from the degree generating
    function of the algebra raised to |Y_k|
    """
    single = defaultdict(int)
    for key in range(algebra.dim):
        single[algebra.degree(key)] += 1
    dimensions = {}
    for level, size in enumerate(simp.sizes):
        counts = {0: 1}
        for _ in range(size):
            grown = defaultdict(int)
            for degree, count in counts.items():
                for extra, number in single.items():
                    grown[degree + extra] += count * number
            counts = grown
        dimensions[level] = dict(sorted(counts.items()))
    return dimensions


def euler_characteristics(simp, algebra):
    """
    Per total degree n - k, the alternating count over the truncation
    """
    totals = defaultdict(int)
    for level, counts in chain_space_dimensions(simp, algebra).items():
        for degree, count in counts.items():
            total = degree - level
            totals[total] += -count if total % 2 else count
    return dict(sorted(totals.items()))
