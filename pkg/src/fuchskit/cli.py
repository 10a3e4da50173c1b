"""fuchs-kit: command-line front end.

Reads exact JSON descriptions of differential modules or representations,
runs the requested computation, and prints a deterministic JSON document
(sorted keys, exact rationals).  Exit codes: 0 success, 1 typed domain
error (machine-readable error object), 2 malformed input.
"""

import argparse
import json
import os
import sys

from . import jsonio
from .errors import FuchsKitError, InputError
from .expring import solve_dsigma, solve_partial
from .functors import (
    ensure_constant_form,
    exponents,
    fuchs_decomposition,
    mon,
    mon_hom_compare,
    rm,
)
from .diffmod import ext_dim, horizontal_hom
from .generate import Sizes
from .linalg import DEFAULT_CONDUCTOR_BOUND
from .sigmamod import trivialize
from .verify import run_suite

DATA_COMMANDS = (
    "exponents",
    "mon",
    "rm",
    "constant-form",
    "fuchs",
    "solve",
    "hom",
    "ext",
    "trivialize",
)


def _conductor_bound_default():
    value = os.environ.get("FUCHS_KIT_CONDUCTOR_BOUND")
    if value is None:
        return DEFAULT_CONDUCTOR_BOUND
    try:
        return max(1, int(value))
    except ValueError:
        return DEFAULT_CONDUCTOR_BOUND


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fuchs-kit",
        description="Exact computations with regular singular differential modules over K[t,1/t].",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "exponents": "multiset of exponents of a differential module",
        "mon": "monodromy representation of a differential module",
        "rm": "differential module attached to a representation of Z",
        "constant-form": "gauge to a constant connection matrix",
        "fuchs": "Fuchs decomposition: triangularizing gauge and rank-one factors",
        "solve": "solve d_sigma(x) = y or partial(x) = y in the exponent ring",
        "hom": "basis of horizontal morphisms between two modules",
        "ext": "dimension of the Yoneda extension group Ext(M, N)",
        "trivialize": "trivializing matrix of a representation over the exponent ring",
        "verify": "run the seeded property suites",
    }
    parsers = {}
    for name in DATA_COMMANDS + ("verify",):
        p = sub.add_parser(name, help=descriptions[name])
        parsers[name] = p
        if name != "verify":
            p.add_argument("--input", help="path to the JSON input ('-' for stdin)")
            p.add_argument("--json", dest="inline", help="inline JSON input")
        p.add_argument(
            "--conductor-bound",
            type=int,
            default=_conductor_bound_default(),
            help="largest root-of-unity order searched for eigenvalues",
        )
    for name in ("exponents", "mon", "constant-form", "fuchs", "hom", "ext"):
        parsers[name].add_argument(
            "--exponent-candidates",
            help="comma separated classes p/q used by the constant-form search",
        )
        parsers[name].add_argument(
            "--degree-bound",
            type=int,
            default=8,
            help="Laurent degree window for the constant-form search",
        )
    parsers["verify"].add_argument("--suite", default="all", help="property id prefix or 'all'")
    parsers["verify"].add_argument("--seed", type=int, default=42)
    parsers["verify"].add_argument("--cases", type=int, default=8)
    parsers["verify"].add_argument("--max-dim", type=int, default=5)
    return parser


def _read_input(args):
    if getattr(args, "inline", None) is not None and getattr(args, "input", None) is not None:
        raise InputError("give either --input or --json, not both")
    if getattr(args, "inline", None) is not None:
        text = args.inline
    elif getattr(args, "input", None) is not None:
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
    else:
        raise InputError("missing input: use --input <path> or --json <text>")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _search_options(args):
    opts = {}
    if getattr(args, "exponent_candidates", None):
        opts["exponent_candidates"] = [
            jsonio.decode_exponent_class(part.strip(), "exponent candidate")
            for part in args.exponent_candidates.split(",")
        ]
    if getattr(args, "degree_bound", None) is not None:
        opts["laurent_degree_bound"] = args.degree_bound
    return opts


def _pair_input(doc):
    jsonio._expect_dict(doc, "input", ("left", "right"))
    return (
        jsonio.decode_diffmodule(doc["left"], "left"),
        jsonio.decode_diffmodule(doc["right"], "right"),
    )


def _run_command(args):
    bound = args.conductor_bound
    if args.command == "verify":
        sizes = Sizes(max_dim=args.max_dim)
        only = None if args.suite == "all" else args.suite
        return run_suite(seed=args.seed, cases=args.cases, sizes=sizes, only=only)

    doc = _read_input(args)
    if args.command == "exponents":
        module = jsonio.decode_diffmodule(doc)
        ms = exponents(module, conductor_bound=bound, **_search_options(args))
        return {"exponents": jsonio.encode_exponent_multiset(ms)}
    if args.command == "mon":
        module = jsonio.decode_diffmodule(doc)
        return jsonio.encode_sigmamodule(mon(module, conductor_bound=bound, **_search_options(args)))
    if args.command == "rm":
        v = jsonio.decode_sigmamodule(doc)
        return jsonio.encode_diffmodule(rm(v, conductor_bound=bound))
    if args.command == "constant-form":
        module = jsonio.decode_diffmodule(doc)
        cf = ensure_constant_form(module, **_search_options(args))
        return jsonio.encode_constant_form(cf)
    if args.command == "fuchs":
        module = jsonio.decode_diffmodule(doc)
        fd = fuchs_decomposition(module, conductor_bound=bound, **_search_options(args))
        return {
            "gauge": jsonio.encode_matrix(fd.gauge, jsonio.encode_laurent),
            "triangular": jsonio.encode_matrix(fd.triangular, jsonio.encode_cyclotomic),
            "factors": [jsonio.encode_cyclotomic(x) for x in fd.factors],
            "exponents": jsonio.encode_exponent_multiset(fd.exponent_multiset),
        }
    if args.command == "solve":
        jsonio._expect_dict(doc, "input", ("operator", "target"))
        operator = doc["operator"]
        target = jsonio.decode_expring(doc["target"], "target")
        if operator == "dsigma":
            solution = solve_dsigma(target)
        elif operator == "partial":
            solution = solve_partial(target)
        else:
            raise InputError('operator must be "dsigma" or "partial"')
        return {"solution": jsonio.encode_expring(solution)}
    if args.command == "hom":
        m1, m2 = _pair_input(doc)
        cf1 = ensure_constant_form(m1, **_search_options(args))
        cf2 = ensure_constant_form(m2, **_search_options(args))
        from .diffmod import DiffModule

        space = horizontal_hom(
            DiffModule.from_constant(cf1.constant),
            DiffModule.from_constant(cf2.constant),
            bound,
        )
        report = mon_hom_compare(m1, m2, conductor_bound=bound, **_search_options(args))
        return {
            "dimension": space.dimension,
            "basis": [jsonio.encode_matrix(f, jsonio.encode_laurent) for f in space.basis],
            "mon_comparison": report,
        }
    if args.command == "ext":
        m1, m2 = _pair_input(doc)
        cf1 = ensure_constant_form(m1, **_search_options(args))
        cf2 = ensure_constant_form(m2, **_search_options(args))
        from .diffmod import DiffModule

        dim = ext_dim(DiffModule.from_constant(cf1.constant), DiffModule.from_constant(cf2.constant))
        return {"dimension": dim}
    if args.command == "trivialize":
        v = jsonio.decode_sigmamodule(doc)
        b = trivialize(v, conductor_bound=bound)
        return {"basis": jsonio.encode_matrix(b, jsonio.encode_expring)}
    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = _run_command(args)
    except InputError as exc:
        print(json.dumps({"error": {"type": "InvalidInput", "message": str(exc)}}, sort_keys=True))
        return 2
    except FuchsKitError as exc:
        doc = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(doc, indent=2, sort_keys=True))
        return 1
    print(json.dumps(result, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
