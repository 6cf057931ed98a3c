"""Command line entry point: ``kemperman <subcommand> ...``.

Reports go to ``--json PATH`` (or stdout) as JSON lines; the verdict
summary goes to stderr.  Exit status: 0 clean, 1 if any report is
violated, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .campaign import (
    DEFAULT_CEILING,
    GROUP_THEOREMS,
    LINEAR_THEOREMS,
    Campaign,
    Summary,
    parse_dims,
    run_campaign,
    sharpness_search,
)
from .errors import InvariantError, KempermanError
from .ffield import make_ambient
from .subspace import Subspace
from .transform import reduce_pair

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, theorems=None, default_theorem=None):
    if theorems is not None:
        p.add_argument("--theorem", choices=sorted(theorems), default=default_theorem,
                       required=default_theorem is None)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="every instance in the space")
    mode.add_argument("--trials", type=int, default=None, help="number of random instances")
    mode.add_argument("--input", metavar="PATH",
                      help="JSON lines with an 'inputs' list (report lines work)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dims", help="per-slot sizes, e.g. 2,3 or 1-3,1-3")
    p.add_argument("--contains-one", action="store_true", help="force 1 into every sampled subspace")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", metavar="PATH", help="write reports here instead of stdout")
    p.add_argument("--ceiling", type=int, default=DEFAULT_CEILING,
                   help="refuse exhaustive runs with more instances than this")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kemperman", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a linear theorem on many subspace tuples")
    p.add_argument("--ambient", required=True, help="gf:<q>:<n> or ratfun:<q>[:<max degree>]")
    _common(p, LINEAR_THEOREMS)
    p.add_argument("--stop", type=int, help="chain length for power-chain in GF(q)(x)")

    p = sub.add_parser("group", help="check a set-side theorem in a finite group")
    p.add_argument("--type", "--group", dest="group", required=True,
                   help="cyclic:<n>, dihedral:<n>, sym:<n>, prod:<d1>,<d2>, table:<file>")
    _common(p, GROUP_THEOREMS)

    p = sub.add_parser("powers", help="power chains <B^i> of subspaces containing 1")
    p.add_argument("--ambient", required=True)
    _common(p)
    p.add_argument("--stop", type=int)

    p = sub.add_parser("sharp", help="search families for equality in a bound")
    p.add_argument("--theorem", required=True, choices=["torsion-free", "power-chain-bound"])
    p.add_argument("--family", help="monomial | supplementary | all | whole")
    p.add_argument("--ambient", required=True)
    p.add_argument("--limit", type=int, default=4, help="largest r, s for the monomial family")
    p.add_argument("--json", metavar="PATH")

    p = sub.add_parser("reduce", help="dump the transform trace for one pair")
    p.add_argument("--ambient", required=True)
    p.add_argument("--a", required=True, help="rows 'c,c,..;c,..' (rational: 'den=<poly>|rows')")
    p.add_argument("--b", required=True)

    sub.add_parser("demo", help="walk through small worked examples")
    return parser


def _explicit(path: str) -> tuple:
    out = []
    with open(path) as fh:
        for line in fh:
            if line.strip():
                out.append(tuple(str(v) for v in json.loads(line)["inputs"]))
    return tuple(out)


def _campaign_from_args(args, kind: str, theorem: str, target: str) -> Campaign:
    exhaustive = bool(args.exhaustive)
    trials = args.trials if args.trials is not None else 100
    if trials < 0:
        raise UsageError("--trials must be >= 0")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    try:
        dims = parse_dims(args.dims)
    except ValueError:
        raise UsageError(f"malformed --dims {args.dims!r}") from None
    return Campaign(
        kind=kind,
        theorem=theorem,
        target=target,
        exhaustive=exhaustive,
        trials=trials,
        seed=args.seed,
        dims=dims,
        contains_one=args.contains_one,
        jobs=args.jobs,
        ceiling=args.ceiling,
        stop=getattr(args, "stop", None),
        explicit=_explicit(args.input) if args.input else (),
    )


def _emit(c: Campaign, path: str | None) -> Summary:
    if path:
        with open(path, "w") as fh:
            return run_campaign(c, fh)
    return run_campaign(c, sys.stdout)


def _finish(summary: Summary) -> int:
    print("summary " + json.dumps(summary.to_dict(), separators=(",", ":")), file=sys.stderr)
    return EXIT_VIOLATED if summary.violated else EXIT_OK


def cmd_verify(args) -> int:
    make_ambient(args.ambient)
    c = _campaign_from_args(args, "linear", args.theorem, args.ambient)
    return _finish(_emit(c, args.json))


def cmd_group(args) -> int:
    c = _campaign_from_args(args, "group", args.theorem, args.group)
    return _finish(_emit(c, args.json))


def cmd_powers(args) -> int:
    make_ambient(args.ambient)
    c = _campaign_from_args(args, "linear", "power-chain", args.ambient)
    return _finish(_emit(c, args.json))


def cmd_sharp(args) -> int:
    family = args.family or ("monomial" if args.theorem == "torsion-free" else "supplementary")
    reports = sharpness_search(args.theorem, family, args.ambient, args.limit)
    lines = [r.to_json() for r in reports]
    if args.json:
        with open(args.json, "w") as fh:
            fh.writelines(line + "\n" for line in lines)
    else:
        for line in lines:
            print(line)
    summary = Summary()
    for r in reports:
        summary.total += 1
        summary.counts[r.verdict] += 1
    sharp = sum(1 for r in reports if r.certificate.get("sharp"))
    print(f"sharp witnesses: {sharp} of {len(reports)}", file=sys.stderr)
    return _finish(summary)


def cmd_reduce(args) -> int:
    amb = make_ambient(args.ambient)
    try:
        A = Subspace.from_describe(amb, args.a)
        B = Subspace.from_describe(amb, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    E, F, trace = reduce_pair(A, B, verify=True)
    print(json.dumps({
        "ambient": amb.descriptor,
        "initial": [A.describe(), B.describe()],
        "final": [E.describe(), F.describe()],
        "steps": trace.to_json_list(),
    }, separators=(",", ":")))
    return EXIT_OK


def cmd_demo(args) -> int:
    from .demo import run_demo

    run_demo(sys.stdout)
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "group": cmd_group,
    "powers": cmd_powers,
    "sharp": cmd_sharp,
    "reduce": cmd_reduce,
    "demo": cmd_demo,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvariantError as exc:
        print(f"kemperman: invariant failure: {exc}", file=sys.stderr)
        return EXIT_VIOLATED
    except (UsageError, ValueError, KempermanError, OSError) as exc:
        print(f"kemperman: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
