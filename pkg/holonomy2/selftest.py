"""
Invariant suites over the shipped fixtures. Every suite returns check records
{"name", "passed", "residual"}; run_selftest gathers them in name order.
"""

# pylint: disable=R0914

from fractions import Fraction
from multiprocessing.pool import ThreadPool

import numpy as np
import sympy
from loguru import logger

from holonomy2 import fixtures
from holonomy2.algebra_core import (
    LieAlgebra,
    LieModule,
    ce_cohomology,
    is_coboundary,
    same_class,
    validate_lie_algebra,
)
from holonomy2.config import DEFAULT_SETTINGS
from holonomy2.crossed import (
    CrossedModule,
    ElementaryEquivalence,
    check_elementary_equivalence,
    from_strict_lie2,
    outer_action,
    same_structure,
    skeletal_model,
    splice_connecting_class,
    to_strict_lie2,
    validate_crossed_module,
    validate_strict_lie2,
)
from holonomy2.forms import is_maurer_cartan, three_curvature
from holonomy2.hochschild import (
    HochChain,
    cycle_components,
    hochschild_d,
    hochschild_of_hochschild_d,
    is_mc_element,
    mc_residual,
    p_chain,
    slot_chain,
)
from holonomy2.linf import from_crossed, from_skeletal, to_crossed, validate_linf
from holonomy2.loopspace import (
    SampledLoop,
    TransportProblem,
    ellipse_family,
    flatness_residual,
    numeric_two_form,
    surface_holonomy,
    transport,
    v_form,
)
from holonomy2.simplicial import (
    circle_identification,
    circle_model,
    compose_maps,
    higher_d,
    push_forward,
    torus_model,
    validate_simplicial,
)
from holonomy2.timing import timeit


def check(name, passed, residual=None):
    """
    One check record
    """
    return {
        "name": name,
        "passed": bool(passed),
        "residual": None if residual is None else float(residual),
    }


def peiffer_violating_crossed():
    """
    mu = 0 out of sl2 with the trivial action
    """
    algebra = fixtures.sl2()
    return CrossedModule(
        algebra,
        LieAlgebra.abelian(1),
        sympy.zeros(1, 3),
        (sympy.zeros(3, 3),),
    )


@timeit
def lie_suite(settings):
    """
    Structure constants of the named algebras and their trivial-coefficient Betti numbers
    """
    del settings
    checks = []
    for name, builder in (
        ("sl2", fixtures.sl2),
        ("gl2", fixtures.gl2),
        ("aff2", fixtures.aff2),
        ("heisenberg", fixtures.heisenberg),
    ):
        checks.append(check(f"lie/{name}", not validate_lie_algebra(builder())))
    table = [list(map(list, plane)) for plane in fixtures.sl2().structure_constants]
    table[0][1][1] = -table[0][1][1]
    broken = validate_lie_algebra(LieAlgebra(3, (), table))
    checks.append(check(
        "lie/flipped-sign-detected",
        any(v.axiom == "antisymmetry" and v.indices[:3] == (0, 1, 1) for v in broken),
    ))
    for name, algebra, expected in (
        ("sl2", fixtures.sl2(), [1, 0, 0, 1]),
        ("heisenberg", fixtures.heisenberg(), [1, 2, 2, 1]),
        ("abelian3", LieAlgebra.abelian(3), [1, 3, 3, 1]),
    ):
        trivial = LieModule.trivial(algebra, 1)
        betti = [ce_cohomology(algebra, trivial, p).betti for p in range(4)]
        checks.append(check(f"lie/betti/{name}", betti == expected))
    return checks


@timeit
def crossed_suite(settings):
    """
    Catalogue validity, equivalences, outer actions, Peiffer detection and the
    strict round trip
    """
    checks = []
    catalogue = fixtures.crossed_catalogue()
    for name, crossed in sorted(catalogue.items()):
        checks.append(check(f"crossed/valid/{name}", not validate_crossed_module(crossed)))
        identity = ElementaryEquivalence(sympy.eye(crossed.h.dim), sympy.eye(crossed.g.dim))
        checks.append(check(
            f"crossed/identity-equivalence/{name}",
            not check_elementary_equivalence(crossed, crossed, identity),
        ))
    standard = fixtures.zero_map_crossed(fixtures.sl2_standard())
    action = outer_action(standard)
    checks.append(check(
        "crossed/outer-action-sl2-standard",
        action.genuine and len(action.derivations) == 3,
    ))
    collapse = ElementaryEquivalence(sympy.zeros(2, 2), sympy.eye(3))
    failing = {v.axiom for v in check_elementary_equivalence(standard, standard, collapse)}
    checks.append(check("crossed/kernel-collapse-detected", failing == {"kernel-identity"}))
    violations = validate_crossed_module(peiffer_violating_crossed())
    checks.append(check(
        "crossed/peiffer-detected", any(v.axiom == "peiffer" for v in violations)
    ))
    rng = fixtures.rng_for(settings.seed)
    for trial in range(20):
        crossed = fixtures.random_crossed_module(rng)
        strict = to_strict_lie2(crossed)
        checks.append(check(
            f"crossed/strict-kernels/{trial:02d}", not validate_strict_lie2(strict)
        ))
        checks.append(check(
            f"crossed/round-trip/{trial:02d}",
            same_structure(from_strict_lie2(strict), crossed),
        ))
    return checks


@timeit
def splice_suite(settings):
    """
    Skeletal class of a splice against the connecting homomorphism
    """
    del settings
    checks = []
    for name, ses, alpha in fixtures.splice_fixtures():
        connecting, gamma = splice_connecting_class(ses, alpha)
        checks.append(check(f"splice/{name}", same_class(ses.sub, 3, connecting, gamma)))
    ses, alpha = fixtures.abelian_nonzero_class_ses()
    connecting, _ = splice_connecting_class(ses, alpha)
    checks.append(check(
        "splice/nonzero-class", not is_coboundary(ses.sub, 3, connecting)
    ))
    return checks


@timeit
def linf_suite(settings):
    """
    Strict and skeletal two-term algebras of the catalogue
    """
    del settings
    checks = []
    for name, crossed in sorted(fixtures.crossed_catalogue().items()):
        strict = from_crossed(crossed)
        checks.append(check(f"linf/strict/{name}", not validate_linf(strict)))
        checks.append(check(
            f"linf/back-to-crossed/{name}", same_structure(to_crossed(strict), crossed)
        ))
        skeletal = from_skeletal(skeletal_model(crossed))
        checks.append(check(f"linf/skeletal/{name}", not validate_linf(skeletal)))
    return checks


@timeit
def forms_suite(settings):
    """
    Maurer-Cartan verdicts on the two gl(1) pairs
    """
    checks = []
    flag, _ = is_maurer_cartan(fixtures.gl1_pair(2, 3), settings.l3_normalization)
    checks.append(check("forms/gl1-pair-is-mc", flag))
    flag, residuals = is_maurer_cartan(fixtures.non_mc_pair(), settings.l3_normalization)
    checks.append(check("forms/non-mc-detected", not flag))
    checks.append(check("forms/non-mc-fake-curvature", not residuals.fake_curvature.is_zero))
    checks.append(check(
        "forms/three-curvature-vanishes-in-dim-2",
        three_curvature(fixtures.non_mc_pair(), settings.l3_normalization).is_zero,
    ))
    return checks


def _constant_problem(matrix):
    matrix = np.asarray(matrix, dtype=float)
    return TransportProblem(lambda point, tangent: tangent[0] * matrix, matrix.shape[0])


def _series_exponential(matrix, terms=40):
    result = np.eye(matrix.shape[0])
    power = np.eye(matrix.shape[0])
    for k in range(1, terms):
        power = power @ matrix / k
        result = result + power
    return result


@timeit
def holonomy_suite(settings):
    """
    Transport oracles, the two surface oracles, the flatness family and v_form
    """
    checks = []
    matrix = np.array([[0.1, 0.7], [-0.7, 0.2]])
    line = SampledLoop.from_function(lambda t: (t, 0.0), 512, (1.0, 0.0))
    error = np.max(np.abs(
        transport(_constant_problem(matrix), line) - _series_exponential(matrix)
    ))
    checks.append(check("holonomy/constant-transport", error < settings.transport_tol, error))

    bend = np.array([[0.0, 1.0], [0.0, 0.0]])

    def varying(point, tangent):
        return tangent[0] * (matrix + np.sin(2 * np.pi * point[0]) * bend)

    problem = TransportProblem(varying, 2)
    whole = transport(problem, line)
    split = transport(problem, line, 0.37, 1.0) @ transport(problem, line, 0.0, 0.37)
    error = np.max(np.abs(whole - split))
    checks.append(check("holonomy/composition", error < settings.composition_tol, error))

    spectral = settings.replace(derivative="spectral")
    patch = fixtures.torus_patch(64, 64)
    value = surface_holonomy(TransportProblem.flat(1), fixtures.wavy_density, patch, spectral)
    error = abs(value[0] - 1.0)
    checks.append(check("holonomy/abelian-oracle", error < settings.holonomy_rel_tol, error))

    c, beta = Fraction(1, 2), Fraction(3, 2)
    pair = fixtures.gl1_pair(c, beta)
    problem = TransportProblem.from_forms(pair.a_form, pair.target)
    value = surface_holonomy(problem, numeric_two_form(pair.b_form), patch, spectral)
    expected = float(beta) * np.expm1(float(c)) / float(c)
    error = abs(value[0] - expected) / abs(expected)
    checks.append(check("holonomy/gl1-oracle", error < settings.holonomy_rel_tol, error))

    family = ellipse_family((0.2, 0.1), 32, 32)
    study = flatness_residual(
        problem, numeric_two_form(pair.b_form), pair, family, spectral
    )
    largest = max(float(np.max(np.abs(h))) for h in study.holonomies)
    checks.append(check(
        "holonomy/flat-family-vanishes",
        study.maurer_cartan and largest < settings.connection_tol,
        largest,
    ))
    control = fixtures.non_mc_pair()
    study = flatness_residual(
        TransportProblem.from_forms(control.a_form, control.target),
        numeric_two_form(control.b_form),
        control,
        ellipse_family((0.1, 0.05), 32, 32, shear=1.0),
        spectral,
    )
    flux = np.pi ** 2 / 4
    error = abs(study.normalized[-1][0] - flux) / flux
    checks.append(check(
        "holonomy/non-flat-family-limit", not study.maurer_cartan and error < 0.1, error
    ))

    checks.append(check("holonomy/v-form-empty", v_form(problem, line, []) == ()))
    word = v_form(TransportProblem.flat(2), line, [(0.3, [1.0, -2.0])])
    checks.append(check("holonomy/v-form-flat", np.array_equal(word[0], [1.0, -2.0])))
    wobble = SampledLoop.from_function(
        lambda t: (t + 0.1 * np.sin(2 * np.pi * t), np.cos(2 * np.pi * t)), 256, (1.0, 0.0)
    )
    word = v_form(problem, wobble, [(0.25, [2.0]), (0.75, [-1.0])])
    expected = [
        2.0 * np.exp(float(c) * (1.0 - 0.35)),
        -1.0 * np.exp(float(c) * (1.0 - 0.65)),
    ]
    error = max(abs(w[0] - e) for w, e in zip(word, expected))
    checks.append(check("holonomy/v-form-gl1", error < 1e-8, error))
    return checks


@timeit
def hochschild_suite(settings):
    """
    P(A) is a cycle exactly for Maurer-Cartan elements, and each component of
    D P(A) is the slot sum of dA + A A
    """
    del settings
    checks = []
    for name, algebra, element, expected in fixtures.mc_cases():
        components = cycle_components(element, 7, algebra)
        vanishing = all(part.is_zero for part in components)
        checks.append(check(
            f"hochschild/mc-cycle/{name}",
            vanishing == expected and is_mc_element(element, algebra) == expected,
        ))
        residual = mc_residual(element, algebra)
        checks.append(check(
            f"hochschild/slot-sum/{name}",
            components[0].is_zero and all(
                components[length] == slot_chain(element, residual, length, algebra)
                for length in range(1, 7)
            ),
        ))
    t4 = fixtures.truncated_polynomial(4)
    checks.append(check(
        "hochschild/p-chain-of-zero", p_chain({}, 5, t4) == HochChain.word(0)
    ))
    layers = p_chain({1: 1}, 2, fixtures.exterior_one())
    checks.append(check(
        "hochschild/p-chain-layers",
        layers == HochChain.from_dict({(0,): 1, (0, 1): 1, (0, 1, 1): 1}),
    ))
    algebra = fixtures.commutative_xy()
    rng = fixtures.rng_for(0)
    squares_vanish = True
    for _ in range(20):
        chain = fixtures.random_chain(rng, algebra)
        squares_vanish &= hochschild_d(hochschild_d(chain, algebra), algebra).is_zero
    checks.append(check("hochschild/d-squared", squares_vanish))
    squares_vanish = True
    for _ in range(20):
        chain = fixtures.random_chain_of_chains(rng, algebra)
        twice = hochschild_of_hochschild_d(hochschild_of_hochschild_d(chain, algebra), algebra)
        squares_vanish &= twice.is_zero
    checks.append(check("hochschild/hh-of-hh-d-squared", squares_vanish))
    return checks


@timeit
def simplicial_suite(settings):
    """
    Simplicial identities of the models, D^2 = 0, the circle comparison and
    functoriality of induced maps on the torus
    """
    checks = []
    algebra = fixtures.commutative_xy()
    rng = fixtures.rng_for(settings.seed)
    for simp in (circle_model(5), torus_model(5)):
        checks.append(check(f"hh/identities/{simp.name}", not validate_simplicial(simp)))
        squares_vanish = True
        for _ in range(20):
            chain = fixtures.random_higher_chain(rng, simp, algebra)
            squares_vanish &= higher_d(higher_d(chain, simp, algebra), simp, algebra).is_zero
        checks.append(check(f"hh/d-squared/{simp.name}", squares_vanish))
    circle = circle_model(5)
    agree = True
    for _ in range(20):
        chain = fixtures.random_chain(rng, algebra, max_length=4)
        lhs = higher_d(circle_identification(chain, algebra), circle, algebra)
        rhs = circle_identification(hochschild_d(chain, algebra), algebra)
        agree &= lhs == rhs
    checks.append(check("hh/circle-matches-hochschild", agree))
    torus = torus_model(3)
    functorial = True
    for i in range(4):
        for j in range(3):
            inner, outer = torus.face(3, i), torus.face(2, j)
            for _ in range(5):
                word = (rng.randrange(algebra.dim),) + tuple(
                    rng.choice((0, 0, 0, 1, 2, 3)) for _ in range(torus.sizes[3] - 1)
                )
                terms = {word: 1}
                direct = push_forward(compose_maps(outer, inner), terms, algebra, torus.sizes[1])
                staged = push_forward(
                    outer,
                    push_forward(inner, terms, algebra, torus.sizes[2]),
                    algebra,
                    torus.sizes[1],
                )
                functorial &= direct == staged
    checks.append(check("hh/induced-map-functorial", functorial))
    return checks


SUITES = {
    "crossed": crossed_suite,
    "forms": forms_suite,
    "hochschild": hochschild_suite,
    "holonomy": holonomy_suite,
    "linf": linf_suite,
    "lie": lie_suite,
    "simplicial": simplicial_suite,
    "splice": splice_suite,
}


def run_selftest(settings=DEFAULT_SETTINGS, names=None):
    """
    Run the named suites (all by default), in parallel when workers > 1
    """
    chosen = sorted(names or SUITES)
    unknown = [name for name in chosen if name not in SUITES]
    if unknown:
        raise KeyError(f"unknown suites {unknown}")

    def run_one(name):
        logger.debug("running suite {}", name)
        return SUITES[name](settings)

    if settings.workers > 1:
        with ThreadPool(processes=settings.workers) as pool:
            results = pool.map(run_one, chosen)
    else:
        results = [run_one(name) for name in chosen]
    checks = sorted((c for result in results for c in result), key=lambda c: c["name"])
    logger.debug("selftest: {} checks, {} failed", len(checks),
                 sum(1 for c in checks if not c["passed"]))
    return checks
