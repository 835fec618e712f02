"""
Command-line front door: parses arguments, dispatches to the checks and
prints one JSON report per run
"""

# pylint: disable=R0914

import argparse
import json
import sys

import numpy as np
from loguru import logger

from holonomy2 import fixtures, main
from holonomy2.algebra_core import is_coboundary, same_class
from holonomy2.config import DEFAULT_SETTINGS, DERIVATIVES, L3_NORMALIZATIONS, REPORT_SCHEMA
from holonomy2.crossed import (
    extract_triplet,
    gamma_classes_agree,
    skeletal_model,
    splice_connecting_class,
    validate_crossed_module,
)
from holonomy2.errors import Holonomy2Error, SchemaError, StructuralError
from holonomy2.forms import is_maurer_cartan
from holonomy2.history import RunHistory, open_history
from holonomy2.hochschild import cycle_components, element_of, hochschild_d, is_mc_element
from holonomy2.loopspace import (
    SampledSurface,
    TransportProblem,
    numeric_two_form,
    surface_holonomy,
)
from holonomy2.selftest import SUITES, check, run_selftest
from holonomy2.simplicial import (
    chain_space_dimensions,
    circle_identification,
    circle_model,
    euler_characteristics,
    higher_d,
    point_model,
    torus_model,
    validate_simplicial,
)
from holonomy2.timing import collected_timings, reset_timings, timeit

AXIOM_LABELS = {"equivariance": "a", "peiffer": "b"}
MODELS = {"circle": circle_model, "torus": torus_model, "point": point_model}
LOG_FILE = "holonomy2_{time:YYYY_MMM_DD}.log"
LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


def configure_logging(level, log_file=None):
    """
    stderr sink at the given level plus an optional dated file sink
    """
    logger.remove()
    logger.add(sys.stderr, level=level)
    if log_file:
        logger.add(log_file, level="DEBUG")


def _text(value):
    return [str(x) for x in value]


def _violation_checks(prefix, violations, axioms):
    checks = []
    for axiom in axioms:
        failed = [v for v in violations if v.axiom == axiom]
        checks.append(check(f"{prefix}/{axiom}", not failed, len(failed)))
    return checks


def _violation_rows(violations):
    rows = []
    for violation in violations:
        row = violation.as_dict()
        if violation.axiom in AXIOM_LABELS:
            row["label"] = AXIOM_LABELS[violation.axiom]
        rows.append(row)
    return rows


CROSSED_AXIOMS = (
    "h.antisymmetry", "h.jacobi", "g.antisymmetry", "g.jacobi",
    "representation", "derivation", "equivariance", "peiffer",
)


@timeit
def crossed_validate(args, settings):
    """
    Every crossed-module axiom of one file
    """
    del settings
    crossed, digest = main.load_crossed(args.file)
    violations = validate_crossed_module(crossed)
    checks = _violation_checks("crossed", violations, CROSSED_AXIOMS)
    return checks, {"violations": _violation_rows(violations)}, {args.file: digest}


def _triplet_result(triplet):
    return {
        "cokernel_dim": triplet.gbar.dim,
        "cokernel_brackets": [
            [[str(x) for x in entry] for entry in row]
            for row in triplet.gbar.structure_constants
        ],
        "kernel_dim": triplet.module.dim,
        "kernel_action": [[_text(row) for row in m.tolist()] for m in triplet.module.action],
        "gamma": _text(triplet.gamma),
        "gamma_is_coboundary": is_coboundary(triplet.module, 3, triplet.gamma),
    }


@timeit
def crossed_skeletal(args, settings):
    """
    Classifying triplet of one crossed module
    """
    del settings
    crossed, digest = main.load_crossed(args.file)
    violations = validate_crossed_module(crossed)
    if violations:
        checks = _violation_checks("crossed", violations, CROSSED_AXIOMS)
        return checks, {"violations": _violation_rows(violations)}, {args.file: digest}
    model = skeletal_model(crossed)
    result = _triplet_result(model.triplet)
    result["phi2"] = _text(model.phi2)
    return [check("crossed/skeletal-model", True)], result, {args.file: digest}


@timeit
def crossed_splice(args, settings):
    """
    Splice of a sequence and a 2-cocycle against the connecting class
    """
    del settings
    (ses, alpha), digest = main.load_ses(args.file)
    connecting, gamma = splice_connecting_class(ses, alpha)
    agree = same_class(ses.sub, 3, connecting, gamma)
    result = {
        "connecting": _text(connecting),
        "gamma": _text(gamma),
        "class_is_zero": is_coboundary(ses.sub, 3, connecting),
    }
    return [check("splice/classes-agree", agree)], result, {args.file: digest}


@timeit
def crossed_compare(args, settings):
    """
    Do two crossed modules have matching triplets
    """
    del settings
    first, first_digest = main.load_crossed(args.file)
    second, second_digest = main.load_crossed(args.other)
    inputs = {args.file: first_digest, args.other: second_digest}
    left, right = extract_triplet(first), extract_triplet(second)
    checks = [
        check(
            "compare/cokernel",
            left.gbar.structure_constants == right.gbar.structure_constants,
        ),
        check(
            "compare/kernel-module",
            left.module.dim == right.module.dim and left.module.action == right.module.action,
        ),
    ]
    try:
        agree = gamma_classes_agree(left, right)
    except StructuralError:
        agree = False
    checks.append(check("compare/gamma-class", agree))
    return checks, {"first": _triplet_result(left), "second": _triplet_result(right)}, inputs


def _form_rows(form):
    return [
        [list(indices), value, str(poly.as_expr())]
        for (indices, value), poly in form.terms
    ]


@timeit
def forms_check_mc(args, settings):
    """
    Both Maurer-Cartan equations of a pair
    """
    pair, digest = main.load_mc_pair(args.file)
    flag, residuals = is_maurer_cartan(pair, settings.l3_normalization)
    checks = [
        check(
            "forms/fake-curvature",
            residuals.fake_curvature.is_zero,
            len(residuals.fake_curvature.terms),
        ),
        check(
            "forms/three-curvature",
            residuals.three_curvature.is_zero,
            len(residuals.three_curvature.terms),
        ),
    ]
    result = {
        "maurer_cartan": flag,
        "fake_curvature": _form_rows(residuals.fake_curvature),
        "three_curvature": _form_rows(residuals.three_curvature),
        "l3_normalization": settings.l3_normalization,
    }
    return checks, result, {args.file: digest}


def _parse_grid(text):
    try:
        slices, samples = (int(x) for x in text.lower().split("x"))
    except ValueError as err:
        raise SchemaError(f"grid must look like 128x128, got {text!r}") from err
    return slices, samples


def _winding(text):
    if text is None:
        return None
    try:
        return [float(x) for x in text.split(",")]
    except ValueError as err:
        raise SchemaError(f"winding must be comma-separated numbers, got {text!r}") from err


def _load_surface(args, inputs):
    slices, samples = _parse_grid(args.grid)
    if args.surface is None:
        return SampledSurface.from_function(
            lambda tau, sigma: (sigma, tau), slices, samples, (1.0, 0.0), (0.0, 1.0)
        )
    sigma, tau = _winding(args.winding_sigma), _winding(args.winding_tau)
    if args.surface.endswith(".json"):
        data, digest = main.read_json(args.surface)
        data.setdefault("winding_sigma", sigma)
        data.setdefault("winding_tau", tau)
        surface = main.surface_from_dict(data)
    else:
        surface, digest = main.load_surface_binary(args.surface, sigma, tau)
    inputs[args.surface] = digest
    if surface.shape[:2] != (slices, samples):
        raise SchemaError(f"surface grid {surface.shape[:2]} does not match --grid {args.grid}")
    return surface


@timeit
def holonomy_command(args, settings):
    """
    Surface holonomy of an MC pair over a sampled torus
    """
    pair, digest = main.load_mc_pair(args.pair)
    inputs = {args.pair: digest}
    surface = _load_surface(args, inputs)
    if surface.shape[2] != pair.chart_dim:
        raise SchemaError("surface points do not live on the chart of the pair")
    problem = TransportProblem.from_forms(pair.a_form, pair.target)
    value = surface_holonomy(problem, numeric_two_form(pair.b_form), surface, settings)
    checks = [check("holonomy/finite", np.all(np.isfinite(value)))]
    if args.expect is not None:
        expected = np.array(_winding(args.expect))
        if expected.shape != value.shape:
            raise SchemaError("expected value has the wrong length")
        error = float(np.max(np.abs(value - expected)) / max(1.0, np.max(np.abs(expected))))
        checks.append(check("holonomy/expected", error < settings.holonomy_rel_tol, error))
    result = {
        "holonomy": [float(x) for x in value],
        "grid": list(surface.shape),
        "derivative": settings.derivative,
    }
    return checks, result, inputs


def _parse_element(text, algebra):
    terms = {}
    for part in text.split(","):
        name, _, coefficient = part.partition(":")
        terms[name.strip()] = coefficient.strip() or "1"
    return element_of(terms, algebra)


@timeit
def hochschild_check_cycle(args, settings):
    """
    Components of D P(A) up to the truncation, against the MC equation
    """
    del settings
    algebra, digest = main.load_dga(args.dga)
    element = _parse_element(args.element, algebra)
    components = cycle_components(element, args.trunc + 1, algebra)
    checks = [
        check(f"hochschild/component/{length}", part.is_zero, len(part.terms))
        for length, part in enumerate(components)
    ]
    mc = is_mc_element(element, algebra)
    cycle = all(part.is_zero for part in components)
    checks.append(check("hochschild/cycle-iff-mc", cycle == mc))
    return checks, {"maurer_cartan": mc, "cycle": cycle}, {args.dga: digest}


def _simplicial_set(args, inputs):
    if args.simpset:
        simp, digest = main.load_simpset(args.simpset)
        inputs[args.simpset] = digest
        return simp
    return MODELS[args.model](args.cutoff)


@timeit
def hh_d2_check(args, settings):
    """
    D^2 = 0 on random chains of the higher Hochschild complex
    """
    algebra, digest = main.load_dga(args.dga)
    inputs = {args.dga: digest}
    simp = _simplicial_set(args, inputs)
    violations = validate_simplicial(simp)
    rng = fixtures.rng_for(settings.seed)
    failures = 0
    for _ in range(args.chains):
        chain = fixtures.random_higher_chain(rng, simp, algebra)
        if not higher_d(higher_d(chain, simp, algebra), simp, algebra).is_zero:
            failures += 1
    checks = [
        check("hh/simplicial-identities", not violations, len(violations)),
        check("hh/d-squared", failures == 0, failures),
    ]
    result = {"model": simp.name, "cutoff": simp.cutoff, "chains": args.chains}
    return checks, result, inputs


@timeit
def hh_compare_circle(args, settings):
    """
    Circle-model D against the ordinary Hochschild differential
    """
    algebra, digest = main.load_dga(args.dga)
    circle = circle_model(args.cutoff)
    rng = fixtures.rng_for(settings.seed)
    failures = 0
    for _ in range(args.chains):
        chain = fixtures.random_chain(rng, algebra, max_length=args.cutoff)
        lhs = higher_d(circle_identification(chain, algebra), circle, algebra)
        rhs = circle_identification(hochschild_d(chain, algebra), algebra)
        if lhs != rhs:
            failures += 1
    checks = [check("hh/circle-matches-hochschild", failures == 0, failures)]
    return checks, {"cutoff": args.cutoff, "chains": args.chains}, {args.dga: digest}


@timeit
def hh_euler(args, settings):
    """
    Chain space dimensions and Euler characteristics of a truncation
    """
    del settings
    algebra, digest = main.load_dga(args.dga)
    inputs = {args.dga: digest}
    simp = _simplicial_set(args, inputs)
    violations = validate_simplicial(simp)
    dimensions = chain_space_dimensions(simp, algebra)
    result = {
        "model": simp.name,
        "dimensions": {
            str(level): {str(k): v for k, v in counts.items()}
            for level, counts in dimensions.items()
        },
        "euler": {str(k): v for k, v in euler_characteristics(simp, algebra).items()},
    }
    return [check("hh/simplicial-identities", not violations, len(violations))], result, inputs


def selftest_command(args, settings):
    """
    The full invariant suite over the shipped fixtures
    """
    checks = run_selftest(settings, args.suite)
    return checks, {"suites": sorted(args.suite or SUITES)}, {}


def _require_history(args):
    if not args.record:
        raise SchemaError("history commands need --record DB")
    return RunHistory(open_history(args.record))


def history_command(args, settings):
    """
    List, show or delete recorded runs
    """
    del settings
    history = _require_history(args)
    if args.action == "list":
        return [], {"runs": history.list_runs()}, {}
    run = history.search_run(args.run_id)
    if args.action == "show":
        if not run:
            return [check("history/found", False)], {}, {}
        return [check("history/found", True)], {"report": json.loads(run.report)}, {}
    return [check("history/deleted", history.delete_run(args.run_id))], {}, {}


COMMANDS = {
    ("crossed", "validate"): crossed_validate,
    ("crossed", "skeletal"): crossed_skeletal,
    ("crossed", "splice"): crossed_splice,
    ("crossed", "compare"): crossed_compare,
    ("forms", "check-mc"): forms_check_mc,
    ("holonomy", None): holonomy_command,
    ("hochschild", "check-cycle"): hochschild_check_cycle,
    ("hh", "d2-check"): hh_d2_check,
    ("hh", "compare-circle"): hh_compare_circle,
    ("hh", "euler"): hh_euler,
    ("selftest", None): selftest_command,
    ("history", "list"): history_command,
    ("history", "show"): history_command,
    ("history", "delete"): history_command,
}


def _add_model_flags(parser):
    parser.add_argument("--dga", required=True)
    parser.add_argument("--model", choices=sorted(MODELS), default="circle")
    parser.add_argument("--simpset", help="simplicial set JSON, overrides --model")
    parser.add_argument("--cutoff", type=int, default=5)


def build_parser():
    """
    argparse tree of every subcommand
    """
    parser = argparse.ArgumentParser(
        prog="holonomy2",
        description="Crossed modules, Maurer-Cartan pairs, surface holonomy and "
        "Hochschild chains, checked exactly or against numeric oracles.",
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--timings", action="store_true", help="include timings in the report")
    parser.add_argument("--record", metavar="DB", help="store the report in an SQLite history")
    parser.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default="WARNING")
    parser.add_argument("--log-file", nargs="?", const=LOG_FILE, default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--derivative", choices=DERIVATIVES, default=None)
    parser.add_argument("--l3-normalization", choices=L3_NORMALIZATIONS, default=None)
    parser.add_argument("--holonomy-rel-tol", type=float, default=None)
    commands = parser.add_subparsers(dest="command", required=True)

    crossed = commands.add_parser("crossed", help="crossed modules of Lie algebras")
    crossed_actions = crossed.add_subparsers(dest="action", required=True)
    for action in ("validate", "skeletal", "splice"):
        crossed_actions.add_parser(action).add_argument("file")
    compare = crossed_actions.add_parser("compare")
    compare.add_argument("file")
    compare.add_argument("other")

    forms = commands.add_parser("forms", help="polynomial differential forms")
    forms_actions = forms.add_subparsers(dest="action", required=True)
    forms_actions.add_parser("check-mc").add_argument("file")

    holonomy = commands.add_parser("holonomy", help="surface holonomy of an MC pair")
    holonomy.add_argument("--pair", required=True)
    holonomy.add_argument("--surface", help="binary grid, or JSON when it ends in .json")
    holonomy.add_argument("--grid", default="128x128")
    holonomy.add_argument("--winding-sigma")
    holonomy.add_argument("--winding-tau")
    holonomy.add_argument("--expect", help="comma-separated expected holonomy")

    hochschild = commands.add_parser("hochschild", help="Hochschild chains of a DGA")
    hochschild_actions = hochschild.add_subparsers(dest="action", required=True)
    cycle = hochschild_actions.add_parser("check-cycle")
    cycle.add_argument("--dga", required=True)
    cycle.add_argument("--element", required=True, help="name or name:coef,name:coef")
    cycle.add_argument("--trunc", type=int, default=6)

    hh = commands.add_parser("hh", help="higher Hochschild complexes")
    hh_actions = hh.add_subparsers(dest="action", required=True)
    d2 = hh_actions.add_parser("d2-check")
    _add_model_flags(d2)
    d2.add_argument("--chains", type=int, default=100)
    circle = hh_actions.add_parser("compare-circle")
    circle.add_argument("--dga", required=True)
    circle.add_argument("--cutoff", type=int, default=5)
    circle.add_argument("--chains", type=int, default=100)
    _add_model_flags(hh_actions.add_parser("euler"))

    selftest = commands.add_parser("selftest", help="run every invariant suite")
    selftest.add_argument("--suite", action="append", choices=sorted(SUITES))

    history = commands.add_parser("history", help="recorded runs")
    history_actions = history.add_subparsers(dest="action", required=True)
    history_actions.add_parser("list")
    for action in ("show", "delete"):
        history_actions.add_parser(action).add_argument("run_id", type=int)
    return parser


def settings_from(args):
    """
    Default settings overridden by the global flags
    """
    return DEFAULT_SETTINGS.replace(
        seed=args.seed,
        workers=args.workers,
        derivative=args.derivative,
        l3_normalization=args.l3_normalization,
        holonomy_rel_tol=args.holonomy_rel_tol,
    )


def emit(report):
    """
    Canonical JSON on standard output
    """
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def run(argv=None):
    """
    Parse, dispatch, print the report; returns the exit code
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    reset_timings()
    report = {"schema": REPORT_SCHEMA, "command": argv, "seed": args.seed}
    try:
        configure_logging(args.log_level, args.log_file)
        settings = settings_from(args)
        handler = COMMANDS[(args.command, getattr(args, "action", None))]
        checks, result, inputs = handler(args, settings)
        code = 0 if all(c["passed"] for c in checks) else 1
        report.update({"checks": checks, "result": result, "inputs": inputs})
    except SchemaError as err:
        logger.error("schema error: {}", err)
        report["error"] = {"kind": "SchemaError", "message": str(err)}
        code = 3
    except (Holonomy2Error, ValueError, OSError) as err:
        logger.error("{}: {}", type(err).__name__, err)
        report["error"] = {"kind": type(err).__name__, "message": str(err)}
        code = 1
    report["status"] = "pass" if code == 0 else "fail"
    if args.timings:
        report["timings"] = collected_timings()
    if args.record and args.command != "history":
        run_id = RunHistory(open_history(args.record)).add_run(report, code)
        logger.info("recorded run {}", run_id)
    emit(report)
    return code


def entry_point():
    """
    console script
    """
    sys.exit(run())
