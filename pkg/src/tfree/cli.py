"""Command-line interface.

Exit codes: 0 success / optimal / feasible, 1 error or verification
mismatch, 2 infeasible instance, 3 violated point.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import generators
from .graph import DEFAULT_ENUM_BOUND, EnumerationBoundError, InstanceError, enumerate_tfree_bfactors, validate_instance
from .io import (
    FormatError,
    dumps,
    instance_from_json,
    instance_to_json,
    loads_json,
    point_from_json,
    separation_to_json,
)
from .solver import DEFAULT_MAX_CUTS, SolverError

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE, EXIT_VIOLATED = 0, 1, 2, 3

log = logging.getLogger("tfree")


def _read(path: str, what: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"{what}: cannot read {path}: {exc.strerror}") from None
    return loads_json(text, what)


def _load_instance(path: str):
    inst = instance_from_json(_read(path, "instance"))
    problems = validate_instance(inst)
    if problems:
        raise InstanceError("; ".join(problems))
    return inst


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    from .solver import solve

    inst = _load_instance(args.instance)
    rep = solve(inst, max_cuts=args.max_cuts)
    _emit(dumps(rep.to_json()), args.output)
    return EXIT_OK if rep.status == "optimal" else EXIT_INFEASIBLE


def cmd_separate(args) -> int:
    from .separation import separate

    inst = _load_instance(args.instance)
    point = point_from_json(_read(args.point, "point"), inst)
    res = separate(inst, point)
    _emit(dumps(separation_to_json(res)), args.output)
    return EXIT_OK if res.status == "feasible" else EXIT_VIOLATED


def cmd_enumerate(args) -> int:
    inst = _load_instance(args.instance)
    factors = enumerate_tfree_bfactors(inst, bound=args.enum_bound)
    _emit(dumps({"mode": inst.mode, "count": len(factors), "sets": [sorted(M) for M in factors]}), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import verify_instance

    failed = 0
    for path in args.instance:
        inst = _load_instance(path)
        problems = verify_instance(inst, level=args.level, seed=args.seed)
        status = "ok" if not problems else "MISMATCH"
        print(f"{path}: {status}")
        for p in problems:
            print(f"  {p}")
        failed += bool(problems)
    print(f"{len(args.instance) - failed}/{len(args.instance)} instances agree")
    return EXIT_OK if not failed else EXIT_ERROR


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "k3":
        inst = generators.k3(mode=args.mode)
    elif fam == "k4":
        inst = generators.k4(mode=args.mode)
    elif fam == "prism":
        inst = generators.prism(mode=args.mode)
    else:
        if args.n < 1 or args.m < 0:
            raise ValueError("need --n >= 1 and --m >= 0")
        inst = generators.random_instance(
            args.seed, n=args.n, m=args.m, max_triangles=args.max_triangles, mode=args.mode
        )
    _emit(dumps(instance_to_json(inst)), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tfree", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="maximum-weight T-free b-factor / b-matching")
    s.add_argument("instance")
    s.add_argument("--output")
    s.add_argument("--max-cuts", type=int, default=DEFAULT_MAX_CUTS)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("separate", help="separate an extended point (x, y)")
    s.add_argument("instance")
    s.add_argument("point")
    s.add_argument("--output")
    s.set_defaults(func=cmd_separate)

    s = sub.add_parser("enumerate", help="list all T-free b-factors (or b-matchings)")
    s.add_argument("instance")
    s.add_argument("--output")
    s.add_argument("--enum-bound", type=int, default=DEFAULT_ENUM_BOUND)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", help="cross-check solver and separation against brute force")
    s.add_argument("instance", nargs="+")
    s.add_argument("--level", choices=("quick", "exhaustive"), default="quick")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="generate an instance")
    s.add_argument("family", choices=("k3", "k4", "prism", "random"))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n", type=int, default=5)
    s.add_argument("--m", type=int, default=8)
    s.add_argument("--max-triangles", type=int, default=3)
    s.add_argument("--mode", choices=("factor", "matching"), default="factor")
    s.add_argument("--output")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (FormatError, InstanceError, EnumerationBoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except SolverError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
