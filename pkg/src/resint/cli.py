"""Command line entry point.

    resint <command> <problem.json> [--seed N] [--char P] [--out report.json]
                                    [--limit-degree D] [--limit-pairs K]

Exit codes: 0 success, 1 certificate denied, 2 parse error, 3 resource
limit, 4 internal cross-check disagreement.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile

from .cache import DiskCache
from .errors import ParseError, ResintError, ResourceLimitError
from .problem import load_problem
from .runner import COMMANDS, run

log = logging.getLogger("resint")

EXIT_OK, EXIT_HYPOTHESIS, EXIT_PARSE, EXIT_LIMIT, EXIT_CROSSCHECK = 0, 1, 2, 3, 4

HELP = {
    "analyze": "run every analysis listed in the problem file",
    "colon": "residual colon J = a : I and its height",
    "classify": "algebraic / geometric / arithmetic classification",
    "kitt": "Kitt filtration and its containments",
    "tau": "tau = a + I_r(Phi) by two independent routes",
    "certify": "free-approach certificate (exit 1 when denied)",
    "ericci": "multiplicity bound of the complete-intersection model",
    "layout": "graded layouts of the F and Q complexes",
    "hilbert": "Hilbert series, dimension and multiplicity",
    "koszul": "Koszul homology, grade and proper-sequence test",
    "invariants": "depth, pd, regularity, Serre and unmixedness tests",
}


def _common(p: argparse.ArgumentParser):
    p.add_argument("problem", help="problem file (JSON)")
    p.add_argument("--seed", type=int, help="seed for general elements (overrides the file)")
    p.add_argument("--char", type=int, dest="characteristic", help="re-read the problem over F_P (0 for Q)")
    p.add_argument("--out", help="write the JSON report here (default: stdout)")
    p.add_argument("--limit-degree", type=int, help="abort when an S-pair exceeds this degree")
    p.add_argument("--limit-pairs", type=int, help="abort after this many S-pairs")
    p.add_argument("--no-cache", action="store_true", help="do not read or write the on-disk cache")
    p.add_argument("--with-runtime", action="store_true",
                   help="include timing and cache traffic in the JSON report")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="resint", description="Residual intersection toolkit.")
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}")
    sub.required = True
    for name in COMMANDS:
        _common(sub.add_parser(name, help=HELP.get(name, "full pipeline")))
    # hidden: brute-force oracles for minting reference values
    o = sub.add_parser("oracle")
    o.add_argument("kind", choices=("membership", "hilbert", "determinant"))
    o.add_argument("problem")
    o.add_argument("--degree", type=int, default=6)
    o.add_argument("--poly", help="polynomial for the membership oracle")
    o.add_argument("--char", type=int, dest="characteristic")
    return parser


def _write(path, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".resint-", suffix=".json")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def run_oracle(args) -> int:
    from .oracle import oracle_determinant, oracle_hilbert, oracle_membership
    from .polynomial import format_polynomial
    from .problem import Problem, _poly
    pr = load_problem(args.problem)
    if args.characteristic is not None:
        pr = pr.with_characteristic(args.characteristic)
    R, Q, f = pr.build()
    if args.kind == "hilbert":
        out = {"hilbert_function": oracle_hilbert(list(f) + list(Q), args.degree, R)}
    elif args.kind == "membership":
        if not args.poly:
            raise ParseError("--poly is required for the membership oracle")
        g = _poly(args.poly, R, "--poly")
        out = {"member": oracle_membership(g, list(f) + list(Q), args.degree)}
    else:
        if "matrix" in pr.a:
            M = Problem.matrix(pr.a["matrix"], R, "a.matrix")
        elif pr.minors is not None:
            M = Problem.matrix(pr.minors["matrix"], R, "ideal.minors.matrix")
        else:
            raise ParseError("the determinant oracle needs a matrix in the 'a' or 'ideal' block")
        out = {"determinant": format_polynomial(oracle_determinant(M, R))}
    out["method"] = "oracle: truncated linear algebra" if args.kind != "determinant" else "oracle: cofactor expansion"
    print(json.dumps(out, sort_keys=True))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "oracle":
            return run_oracle(args)
        pr = load_problem(args.problem)
        if args.characteristic is not None:
            pr = pr.with_characteristic(args.characteristic)
        if args.limit_degree is not None:
            pr.limits["max_degree"] = args.limit_degree
        if args.limit_pairs is not None:
            pr.limits["max_pairs"] = args.limit_pairs
        cache = DiskCache(enabled=not args.no_cache)
        report = run(pr, args.command, seed=args.seed, cache=cache)
    except ResintError as e:
        kind = type(e).__name__
        print(f"resint: {kind}: {e}", file=sys.stderr)
        return e.exit_code
    except RecursionError:
        print("resint: ResourceLimitError: recursion limit reached", file=sys.stderr)
        return ResourceLimitError.exit_code
    text = report.to_json(with_runtime=args.with_runtime)
    if args.out:
        _write(args.out, text)
        sys.stdout.write(report.text())
    else:
        sys.stdout.write(text)
        sys.stderr.write(report.text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
