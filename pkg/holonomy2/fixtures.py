"""
Example objects shared by the self-test and the test suite
"""

# pylint: disable=C0103

import itertools
import random
from fractions import Fraction

import numpy as np
import sympy

from holonomy2.algebra_core import (
    LieAlgebra,
    LieModule,
    ShortExactSequence,
    as_matrix,
    cochain_from_values,
    columns_matrix,
    permutation_sign,
    solve_injective,
)
from holonomy2.crossed import CrossedModule
from holonomy2.forms import MCPair, PolyForm
from holonomy2.hochschild import FinDGA, HochChain
from holonomy2.linf import TwoTermLinf
from holonomy2.loopspace import SampledSurface


def sl2():
    """
    h, e, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h
    """
    return LieAlgebra.from_brackets(
        ("h", "e", "f"), {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}
    )


def gl2():
    """
    sl2 plus the central c
    """
    return LieAlgebra.from_brackets(
        ("h", "e", "f", "c"), {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}
    )


def aff2():
    """
    [a, b] = b
    """
    return LieAlgebra.from_brackets(("a", "b"), {(0, 1): {1: 1}})


def heisenberg():
    """
    [x, y] = z
    """
    return LieAlgebra.from_brackets(("x", "y", "z"), {(0, 1): {2: 1}})


STANDARD_SL2 = ([[1, 0], [0, -1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]])


def sl2_standard():
    """
    sl2 on Q^2
    """
    return LieModule(sl2(), 2, STANDARD_SL2)


def gl2_standard():
    """
    gl2 on Q^2
    """
    return LieModule(gl2(), 2, STANDARD_SL2 + ([[1, 0], [0, 1]],))


def identity_crossed(algebra):
    """
    id: g -> g with the adjoint action
    """
    return CrossedModule(
        algebra,
        algebra,
        sympy.eye(algebra.dim),
        tuple(algebra.ad(i) for i in range(algebra.dim)),
    )


def ideal_crossed(algebra, columns):
    """
    Inclusion of the ideal spanned by the given columns, acted on by ad
    """
    basis = as_matrix(columns)
    k = basis.cols
    table = [[[0] * k for _ in range(k)] for _ in range(k)]
    for a in range(k):
        for b in range(k):
            value = solve_injective(basis, algebra.bracket(basis[:, a], basis[:, b]))
            for c in range(k):
                table[a][b][c] = value[c]
    action = []
    for x in range(algebra.dim):
        moved = algebra.ad(x) * basis
        action.append(
            columns_matrix([solve_injective(basis, moved[:, b]) for b in range(k)], k)
        )
    return CrossedModule(LieAlgebra(k, (), table), algebra, basis, tuple(action))


def zero_map_crossed(module):
    """
    mu = 0 onto an abelian h carrying a module structure
    """
    return CrossedModule(
        LieAlgebra.abelian(module.dim),
        module.algebra,
        sympy.zeros(module.algebra.dim, module.dim),
        module.action,
    )


def heisenberg_crossed():
    """
    h = Q^2 abelian onto the center of the Heisenberg algebra, x moving e1 to e2
    """
    return CrossedModule(
        LieAlgebra.abelian(2),
        heisenberg(),
        [[0, 0], [0, 0], [1, 0]],
        ([[0, 0], [1, 0]], [[0, 0], [0, 0]], [[0, 0], [0, 0]]),
    )


def crossed_catalogue():
    """
    Named valid crossed modules with dim h, dim g <= 4
    """
    aff_line = LieModule(aff2(), 1, ([[1]], [[0]]))
    return {
        "identity-sl2": identity_crossed(sl2()),
        "identity-aff2": identity_crossed(aff2()),
        "aff2-ideal": ideal_crossed(aff2(), [[0], [1]]),
        "heisenberg-center": ideal_crossed(heisenberg(), [[0], [0], [1]]),
        "gl2-sl2": ideal_crossed(gl2(), [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]]),
        "gl2-center": ideal_crossed(gl2(), [[0], [0], [0], [1]]),
        "sl2-standard-zero": zero_map_crossed(sl2_standard()),
        "gl2-standard-zero": zero_map_crossed(gl2_standard()),
        "aff2-line-zero": zero_map_crossed(aff_line),
        "heisenberg-plane": heisenberg_crossed(),
    }


def random_invertible(rng, size, spread=2):
    """
    Random integer matrix with nonzero determinant
    """
    while True:
        matrix = sympy.Matrix(
            size, size, lambda i, j: rng.randint(-spread, spread)
        )
        if size == 0 or matrix.det() != 0:
            return sympy.ImmutableMatrix(matrix)


def random_crossed_module(rng, max_h=4, max_g=4):
    """
    Catalogue entry, maybe summed with a second one, in random bases
    """
    catalogue = list(crossed_catalogue().values())
    crossed = rng.choice(catalogue)
    partner = rng.choice(catalogue)
    if (
        rng.random() < 0.3
        and crossed.h.dim + partner.h.dim <= max_h
        and crossed.g.dim + partner.g.dim <= max_g
    ):
        crossed = crossed.direct_sum(partner)
    return crossed.change_basis(
        random_invertible(rng, crossed.h.dim), random_invertible(rng, crossed.g.dim)
    )


def abelian_nonzero_class_ses():
    """
    Abelian Q^3 with I = Q^2 where e1 acts nilpotently; alpha = e2* ^ e3*
    lifts to a 3-cocycle with a nonzero class in H^3(Q^3, Q)
    """
    algebra = LieAlgebra.abelian(3)
    zero1, zero2 = [[0]], [[0, 0], [0, 0]]
    ses = ShortExactSequence(
        LieModule(algebra, 1, (zero1, zero1, zero1)),
        LieModule(algebra, 2, ([[0, 1], [0, 0]], zero2, zero2)),
        LieModule(algebra, 1, (zero1, zero1, zero1)),
        [[1], [0]],
        [[0, 1]],
    )
    alpha = cochain_from_values(3, 1, 2, {(1, 2): [1]})
    return ses, alpha


def split_ses(module_v, module_q):
    """
    V -> V + Q -> Q
    """
    algebra = module_v.algebra
    p, q = module_v.dim, module_q.dim
    action = []
    for x in range(algebra.dim):
        block = sympy.zeros(p + q, p + q)
        block[:p, :p] = module_v.action[x]
        block[p:, p:] = module_q.action[x]
        action.append(block)
    incl = sympy.zeros(p + q, p)
    incl[:p, :] = sympy.eye(p)
    proj = sympy.zeros(q, p + q)
    proj[:, p:] = sympy.eye(q)
    return ShortExactSequence(
        module_v, LieModule(algebra, p + q, tuple(action)), module_q, incl, proj
    )


def splice_fixtures():
    """
    (name, sequence, alpha) triples; the first has a nonzero connecting class
    """
    fixtures = [("abelian-nonzero",) + abelian_nonzero_class_ses()]
    plane = LieAlgebra.abelian(2)
    trivial_plane = LieModule.trivial(plane, 1)
    fixtures.append((
        "heisenberg-extension",
        ShortExactSequence(
            trivial_plane,
            LieModule.trivial(plane, 2),
            trivial_plane,
            [[1], [0]],
            [[0, 1]],
        ),
        cochain_from_values(2, 1, 2, {(0, 1): [1]}),
    ))
    fixtures.append((
        "sl2-split-zero",
        split_ses(sl2_standard(), LieModule.trivial(sl2(), 1)),
        cochain_from_values(3, 1, 2, {}),
    ))
    empty = LieModule.trivial(sl2(), 0)
    fixtures.append((
        "sl2-quotient-zero",
        ShortExactSequence(sl2_standard(), sl2_standard(), empty, sympy.eye(2), sympy.zeros(0, 2)),
        cochain_from_values(3, 0, 2, {}),
    ))
    abelian3 = LieAlgebra.abelian(3)
    fixtures.append((
        "abelian-split-nonzero",
        split_ses(LieModule.trivial(abelian3, 1), LieModule.trivial(abelian3, 1)),
        cochain_from_values(3, 1, 2, {(0, 1): [1], (1, 2): [2]}),
    ))
    return fixtures


def truncated_polynomial(k):
    """
    Q[x]/(x^k), |x| = 1, d x^n = -x^(n+1) for odd n; not graded commutative
    """
    names = tuple("1" if n == 0 else ("x" if n == 1 else f"x{n}") for n in range(k))
    products = {
        (a, b): {a + b: 1} for a in range(k) for b in range(k) if a + b < k
    }
    differential = {n: {n + 1: -1} for n in range(1, k - 1, 2)}
    return FinDGA(names, tuple(range(k)), products, differential, 0, False)


def exterior_one():
    """
    Lambda[x] with |x| = 1
    """
    return FinDGA(("1", "x"), (0, 1), {}, {}, 0, True)


def commutative_xy():
    """
    1, x, y, xy with |x| = 1, |y| = 2, dx = y
    """
    products = {(1, 2): {3: 1}, (2, 1): {3: 1}}
    return FinDGA(("1", "x", "y", "xy"), (0, 1, 2, 3), products, {1: {2: 1}}, 0, True)


def three_element():
    """
    1, x, y with dx = y and all other products zero
    """
    return FinDGA(("1", "x", "y"), (0, 1, 2), {}, {1: {2: 1}}, 0, True)


def exterior_three():
    """
    Lambda[x, y, z], all of degree 1, d = 0
    """
    subsets = [()] + [
        tuple(s) for size in (1, 2, 3) for s in itertools.combinations(range(3), size)
    ]
    index = {s: i for i, s in enumerate(subsets)}
    products = {}
    for first, left in enumerate(subsets):
        for second, right in enumerate(subsets):
            if not left or not right or set(left) & set(right):
                continue
            joined = left + right
            products[(first, second)] = {index[tuple(sorted(joined))]: permutation_sign(joined)}
    names = tuple("".join("xyz"[i] for i in s) or "1" for s in subsets)
    return FinDGA(names, tuple(len(s) for s in subsets), products, {}, 0, True)


def derivation_uv():
    """
    1, u, v, uv with |u| = |v| = 1 and du = uv
    """
    products = {(1, 2): {3: 1}, (2, 1): {3: -1}}
    return FinDGA(("1", "u", "v", "uv"), (0, 1, 1, 2), products, {1: {3: 1}}, 0, True)


def upper_triangular():
    """
    Unital upper-triangular 2 x 2 matrices: 1, p = e11 (degree 0), n = e12
    (degree 1), d p = n
    """
    products = {(1, 1): {1: 1}, (1, 2): {2: 1}}
    return FinDGA(("1", "p", "n"), (0, 0, 1), products, {1: {2: 1}}, 0, False)


def mc_cases():
    """
    (name, algebra, element, is Maurer-Cartan) over small nilpotent DGAs
    """
    t3, t7 = truncated_polynomial(3), truncated_polynomial(7)
    t4, t5, t6 = truncated_polynomial(4), truncated_polynomial(5), truncated_polynomial(6)
    wedge3, uv = exterior_three(), derivation_uv()
    return [
        ("t3-x", t3, {1: Fraction(1)}, True),
        ("t3-3x", t3, {1: Fraction(3)}, False),
        ("t7-x", t7, {1: Fraction(1)}, True),
        ("wedge3-x+y-z", wedge3, {1: Fraction(1), 2: Fraction(1), 3: Fraction(-1)}, True),
        ("wedge3-xyz", wedge3, {7: Fraction(2)}, True),
        ("uv-v", uv, {2: Fraction(1)}, True),
        ("uv-u+v", uv, {1: Fraction(1), 2: Fraction(1)}, False),
        ("upper-n", upper_triangular(), {2: Fraction(3)}, True),
        ("t4-x", t4, {1: Fraction(1)}, True),
        ("t4-2x", t4, {1: Fraction(2)}, False),
        ("t4-zero", t4, {}, True),
        ("t4-x+x3", t4, {1: Fraction(1), 3: Fraction(1)}, True),
        ("t5-x+x3", t5, {1: Fraction(1), 3: Fraction(1)}, False),
        ("t6-x", t6, {1: Fraction(1)}, True),
        ("t6-minus-x", t6, {1: Fraction(-1)}, False),
        ("t6-x3", t6, {3: Fraction(1)}, False),
        ("exterior-x", exterior_one(), {1: Fraction(1)}, True),
        ("xy-x", commutative_xy(), {1: Fraction(1)}, False),
        ("xy-xy", commutative_xy(), {3: Fraction(1)}, True),
        ("three-x", three_element(), {1: Fraction(1)}, False),
    ]


def random_chain(rng, algebra, max_length=3, words=4):
    """
    Random combination of words with up to max_length bar letters
    """
    terms = {}
    for _ in range(words):
        length = rng.randint(0, max_length)
        word = tuple(rng.randrange(algebra.dim) for _ in range(length + 1))
        terms[word] = terms.get(word, 0) + rng.randint(-3, 3)
    return HochChain.from_dict(terms)


def random_chain_of_chains(rng, algebra, max_length=2, words=3):
    """
    Random combination of words whose letters are short Hochschild words
    """
    terms = {}
    for _ in range(words):
        length = rng.randint(0, max_length)
        word = tuple(
            tuple(rng.randrange(algebra.dim) for _ in range(rng.randint(1, 2)))
            for _ in range(length + 1)
        )
        terms[word] = terms.get(word, 0) + rng.randint(-3, 3)
    return HochChain.from_dict(terms)


def random_pointed_map(rng, source, target):
    """
    Random basepoint-preserving map {0..source-1} -> {0..target-1}
    """
    return (0,) + tuple(rng.randrange(target) for _ in range(source - 1))


def random_higher_chain(rng, simp, algebra, words=4):
    """
    Random combination of keys (k, word) within the cutoff of simp
    """
    terms = {}
    for _ in range(words):
        level = rng.randint(0, simp.cutoff)
        word = tuple(rng.randrange(algebra.dim) for _ in range(simp.sizes[level]))
        terms[(level, word)] = terms.get((level, word), 0) + rng.randint(-3, 3)
    return HochChain.from_dict(terms)


def rng_for(seed):
    """
    Seeded generator used by every randomized check
    """
    return random.Random(seed)


def gl1_on_line():
    """
    gl(1) acting on R by the identity, l1 = 0
    """
    return TwoTermLinf(LieAlgebra.abelian(1), 1, [[0]], ([[1]],), [[[(0,)]]])


def gl1_pair(c, beta):
    """
    A = c dx, B = beta dx ^ dy, a Maurer-Cartan pair
    """
    return MCPair(
        PolyForm.from_json_terms(2, 1, 0, 1, [[[0, 0], [0], 0, c]]),
        PolyForm.from_json_terms(2, 2, -1, 1, [[[0, 0], [0, 1], 0, beta]]),
        gl1_on_line(),
    )


def non_mc_pair():
    """
    A = x dy, B = dx ^ dy; dA does not vanish
    """
    return MCPair(
        PolyForm.from_json_terms(2, 1, 0, 1, [[[1, 0], [1], 0, 1]]),
        PolyForm.from_json_terms(2, 2, -1, 1, [[[0, 0], [0, 1], 0, 1]]),
        gl1_on_line(),
    )


def wavy_density(point, u, v):
    """
    (1 + cos(2 pi (x + y)) / 2) dx ^ dy, integral 1 over the unit square
    """
    density = 1.0 + 0.5 * np.cos(2 * np.pi * (point[0] + point[1]))
    return np.array([density * (u[0] * v[1] - u[1] * v[0])])


def torus_patch(slices, samples, epsilon=0.1):
    """
    Degree-one map of the torus onto the flat unit torus:
    (sigma + eps sin 2 pi tau, tau + eps sin 2 pi sigma)
    """

    def point(tau, sigma):
        return (
            sigma + epsilon * np.sin(2 * np.pi * tau),
            tau + epsilon * np.sin(2 * np.pi * sigma),
        )

    return SampledSurface.from_function(point, slices, samples, (1.0, 0.0), (0.0, 1.0))
