"""
Command line entry point: thin wrappers over the library that read codes and
polynomials as JSON from a file or stdin and write JSON (or plain text) to stdout.
Logging goes to stderr.
"""
import argparse
import json
import logging
import os
import sys

from logging.config import fileConfig

from cliffweil.codes import (
    LinearCode,
    construct_shortened_q20,
    extended_qr,
    is_doubly_even,
    is_self_dual,
    is_self_orthogonal,
    rational_subcode,
    subfield_expand,
    weight_profile,
)
from cliffweil.config import budget_overrides, load_run_config
from cliffweil.cwg import (
    KNOWN_MOLIEN_SERIES,
    clifford_weil_group,
    known_molien_coefficients,
    molien,
    molien_to_dict,
    verify_structure,
)
from cliffweil.exceptions import (
    BudgetExceededException,
    CodeConstructionException,
    ConfigurationException,
    FieldArithmeticException,
    GroupClosureException,
    InvariantComputationException,
)
from cliffweil.gf import default_basis, parse_field, primitive_element
from cliffweil.invariants import (
    check_independence,
    extremal_search,
    generator_enumerators,
    invariant_space,
    product_span_report,
    reproduce_table,
    reynolds_cross_check,
    table_distances,
)
from cliffweil.poly import SparsePoly, cwe
from cliffweil.reproduce import Reproduction, dump_json, now, summarize, write_reports

here = os.path.dirname(os.path.realpath(__file__))
LOGGING_CONFIG = os.path.join(here, "..", "logging.ini")

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

DOMAIN_ERRORS = (
    CodeConstructionException,
    FieldArithmeticException,
    GroupClosureException,
    InvariantComputationException,
)


def _configure_logging(verbose):
    if os.path.exists(LOGGING_CONFIG):
        fileConfig(LOGGING_CONFIG, disable_existing_loggers=False)
    else:
        logging.basicConfig(stream=sys.stderr, level=logging.INFO)
    logging.getLogger("cliffweil").setLevel(logging.DEBUG if verbose else logging.INFO)


def _field(name):
    try:
        return parse_field(name)
    except FieldArithmeticException as exc:
        raise ConfigurationException(str(exc))


def _read_json(args):
    if args.input and args.input != "-":
        with open(args.input) as handle:
            return json.load(handle)
    return json.load(sys.stdin)


def _read_code(args):
    return LinearCode.from_dict(_read_json(args))


def _field_info(args, config):
    ctx = _field(args.field)
    basis = default_basis(ctx.degree)
    return {
        "field": ctx.name,
        "degree": ctx.degree,
        "modulus": bin(ctx.modulus),
        "primitive_element": primitive_element(ctx),
        "sc_basis": list(basis.values),
        "phi": basis.phi_table,
    }


def _code_qr(args, config):
    return extended_qr(_field(args.field), args.p).to_dict()


def _code_check(args, config):
    code = _read_code(args)
    doubly_even = is_doubly_even(code)
    if args.doubly_even:
        return {"doubly_even": doubly_even.holds}
    return {
        "field": code.ctx.name,
        "n": code.n,
        "k": code.k,
        "self_orthogonal": is_self_orthogonal(code),
        "self_dual": is_self_dual(code),
        "doubly_even": doubly_even.holds,
        "witness": doubly_even.witness,
        "method": doubly_even.method,
    }


def _code_dist(args, config):
    code = _read_code(args)
    profile = weight_profile(code, config.codeword_budget, config.workers)
    return {"min_distance": profile.min_distance() if code.k else None, "weight_profile": profile.to_dict()}


def _code_expand(args, config):
    return subfield_expand(_read_code(args), _field(args.sub)).to_dict()


def _code_rational(args, config):
    return rational_subcode(_read_code(args), _field(args.sub)).to_dict()


def _code_shorten16(args, config):
    construction = construct_shortened_q20(config.codeword_budget)
    return {
        "code": construction.code.to_dict(),
        "positions": list(construction.positions),
        "adjoined": construction.adjoined,
        "candidates_tried": construction.candidates_tried,
    }


def _cwe_compute(args, config):
    return cwe(_read_code(args), config.codeword_budget, config.workers).to_dict()


def _cwe_hamming(args, config):
    poly = SparsePoly.from_dict(_read_json(args))
    return {"coeffs": [str(value) for value in poly.hamming_specialize()]}


def _group(args, config):
    ctx = _field(args.field)
    return ctx, clifford_weil_group(ctx.degree, args.with_galois, config.group_cap_for(ctx.degree))


def _group_order(args, config):
    ctx, group = _group(args, config)
    return {"field": ctx.name, "with_galois": args.with_galois, "order": group.order}


def _group_verify(args, config):
    ctx, group = _group(args, config)
    return verify_structure(group, ctx.degree)


def _group_molien(args, config):
    ctx, group = _group(args, config)
    series = molien(group, args.max_deg)
    payload = molien_to_dict(series)
    payload["field"] = ctx.name
    payload["with_galois"] = args.with_galois
    if (ctx.degree, args.with_galois) in KNOWN_MOLIEN_SERIES:
        expected = known_molien_coefficients(ctx.degree, args.max_deg, args.with_galois)
        payload["matches_closed_form"] = series.coeffs == expected
    return payload


def _inv_basis(args, config):
    ctx = _field(args.field)
    payload = invariant_space(ctx.degree, args.degree, args.with_galois, config.degree_cap).to_dict()
    if args.reynolds:
        _, group = _group(args, config)
        payload["reynolds"] = reynolds_cross_check(ctx.degree, args.degree, group)
    return payload


def _inv_extremal(args, config):
    return extremal_search(args.n, args.d, config.degree_cap).to_dict()


def _inv_table(args, config):
    rows = reproduce_table(config.codeword_budget, config.workers, config.degree_cap)
    return {"rows": rows, "table": {str(n): d for n, d in table_distances(rows).items()}}


def _inv_span(args, config):
    return product_span_report(args.degree, config.codeword_budget, config.workers)


def _inv_jacobian(args, config):
    if args.input:
        polys = [SparsePoly.from_dict(entry) for entry in _read_json(args)["polys"]]
    else:
        polys = list(generator_enumerators(config.codeword_budget, config.workers).values())
    return check_independence(polys)


def _reproduce(args, config):
    reproduction = Reproduction(config, only_tags=args.only, big=args.big)
    started = now()
    results = reproduction.run()
    finished = now()
    if config.output_dir:
        write_reports(results, config.output_dir, started, finished)
    return summarize(results)


def build_parser():
    """ The argparse parser with every subcommand """
    parser = argparse.ArgumentParser(prog="cliffweil",
                                     description="Doubly-even self-dual codes and Clifford-Weil invariants")
    parser.add_argument("--format", choices=("json", "text"), default=None, help="Output format")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes for enumeration")
    parser.add_argument("--budget", action="append", default=[], metavar="KEY:VALUE",
                        help="Budget override: codewords, group_cap, degree_cap or term_cap")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    field = commands.add_parser("field").add_subparsers(dest="action")
    field.required = True
    info = field.add_parser("info")
    info.add_argument("--field", default="F4")
    info.set_defaults(handler=_field_info)

    code = commands.add_parser("code").add_subparsers(dest="action")
    code.required = True
    qr = code.add_parser("qr")
    qr.add_argument("--field", default="F4")
    qr.add_argument("--p", type=int, required=True)
    qr.set_defaults(handler=_code_qr)
    for name, handler in (("check", _code_check), ("dist", _code_dist), ("expand", _code_expand),
                          ("rational", _code_rational)):
        sub = code.add_parser(name)
        sub.add_argument("--input", default=None, help="Code JSON file, stdin by default")
        if name == "check":
            sub.add_argument("--doubly-even", action="store_true", help="Only report the doubly-even check")
        if name in ("expand", "rational"):
            sub.add_argument("--sub", default="F2", help="Subfield")
        sub.set_defaults(handler=handler)
    code.add_parser("shorten16").set_defaults(handler=_code_shorten16)

    enumerator = commands.add_parser("cwe").add_subparsers(dest="action")
    enumerator.required = True
    for name, handler in (("compute", _cwe_compute), ("hamming", _cwe_hamming)):
        sub = enumerator.add_parser(name)
        sub.add_argument("--input", default=None)
        sub.set_defaults(handler=handler)

    group = commands.add_parser("group").add_subparsers(dest="action")
    group.required = True
    for name, handler in (("order", _group_order), ("verify", _group_verify), ("molien", _group_molien)):
        sub = group.add_parser(name)
        sub.add_argument("--field", default="F4")
        sub.add_argument("--with-galois", action="store_true")
        if name == "molien":
            sub.add_argument("--max-deg", type=int, default=40)
        sub.set_defaults(handler=handler)

    inv = commands.add_parser("inv").add_subparsers(dest="action")
    inv.required = True
    basis = inv.add_parser("basis")
    basis.add_argument("--field", default="F4")
    basis.add_argument("--degree", type=int, required=True)
    basis.add_argument("--with-galois", action="store_true")
    basis.add_argument("--reynolds", action="store_true",
                       help="Cross-check the basis against Reynolds averages over the whole group")
    basis.set_defaults(handler=_inv_basis)
    extremal = inv.add_parser("extremal")
    extremal.add_argument("--n", type=int, required=True)
    extremal.add_argument("--d", type=int, required=True)
    extremal.set_defaults(handler=_inv_extremal)
    inv.add_parser("table").set_defaults(handler=_inv_table)
    span = inv.add_parser("span")
    span.add_argument("--degree", type=int, required=True)
    span.set_defaults(handler=_inv_span)
    jacobian = inv.add_parser("jacobian")
    jacobian.add_argument("--input", default=None,
                          help="JSON with a 'polys' list, the QR generators by default")
    jacobian.set_defaults(handler=_inv_jacobian)

    reproduce = commands.add_parser("reproduce")
    reproduce.add_argument("--only", action="append", default=[], metavar="TAG")
    reproduce.add_argument("--big", action="store_true", help="Also run the GF(8) Molien check")
    reproduce.add_argument("--output-dir", default=None)
    reproduce.set_defaults(handler=_reproduce)
    return parser


def render_text(payload, indent=""):
    """ Plain text rendering: one key per line, nested values as compact JSON """
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            lines.append("{0}{1}:".format(indent, key))
            lines.append(render_text(value, indent + "  "))
        else:
            lines.append("{0}{1}: {2}".format(indent, key, json.dumps(value, sort_keys=True)))
    return "\n".join(lines)


def emit(payload, output_format, stream=None):
    """ Writes a payload to stdout in the configured format """
    stream = stream or sys.stdout
    if output_format == "text":
        stream.write(render_text(payload) + "\n")
    else:
        stream.write(dump_json(payload))


def main(argv=None):
    """
    Runs one command.
    :return: Exit status: 0 on success, 1 for a failing reproduction or computation,
        2 for usage and configuration errors, 3 when a resource budget is exceeded.
    """
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        overrides = budget_overrides(args.budget, "--budget")
        overrides.update({"output_format": args.format, "workers": args.workers,
                          "output_dir": getattr(args, "output_dir", None)})
        config = load_run_config(overrides=overrides)
        SparsePoly.term_cap = config.term_cap
        payload = args.handler(args, config)
    except ConfigurationException:
        logger.exception("Invalid configuration")
        return EXIT_USAGE
    except BudgetExceededException:
        logger.exception("Resource budget exceeded")
        return EXIT_BUDGET
    except DOMAIN_ERRORS:
        logger.exception("Command %s failed", args.command)
        return EXIT_FAILURE
    except (IOError, ValueError):
        logger.exception("Unable to read input")
        return EXIT_USAGE

    emit(payload, config.output_format)
    if args.command == "reproduce" and not payload["passed"]:
        logger.error("First failing criterion: %s", payload["first_failure"])
        return EXIT_FAILURE
    return 0


def run():
    """ Console script entry point """
    sys.exit(main())
