"""Command-line front end.

Exit status: 0 on success, 1 when ``verify`` finds an invalid alpha or
``selftest`` fails, 2 on usage or capability errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import __version__
from .bounds import (
    big_str,
    bounds_report,
    build_noninterferant,
    is_noninterferant,
    sigma_estimate,
)
from .brute import brute_force_two_objects
from .composition import build_table, check_axioms
from .conditions import alpha_check, product_identity_check
from .core import AlphaFunction, DomainError, RangeError, load_alpha
from .enumeration import (
    Budget,
    CapabilityError,
    ClassificationError,
    burnside_count,
    classify_n3,
    enumerate_ordered,
    enumerate_reduced,
)

# execution details that must not change the report bytes
_NOT_IN_CONFIG = {"jobs", "engine", "func"}


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def _parts(text: str) -> tuple[int, int, int]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--parts needs a,b,c integers, got {text!r}") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"--parts needs exactly three values, got {text!r}")
    return parts


def _envelope(args: argparse.Namespace, body: dict) -> dict:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_IN_CONFIG}
    return {"tool_version": __version__, "config": config, **body}


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def cmd_enumerate(args: argparse.Namespace) -> int:
    budget = Budget.from_env()
    body: dict = {"n": args.n, "mode": args.mode, "method": args.method}
    certified = False
    if args.mode == "ordered" or args.certify:
        census = enumerate_ordered(
            args.n, args.method, args.certify, jobs=args.jobs, seed=args.seed,
            budget=budget, engine=args.engine,
        )
        certified = census.certified
    if args.mode == "ordered":
        body["count"] = str(census.count)
    else:
        reduced = enumerate_reduced(args.n, args.method, jobs=args.jobs, budget=budget, engine=args.engine)
        body["count"] = str(reduced.count)
        body["ordered_count"] = str(reduced.ordered_count)
        body["classes"] = [
            {"canonical_bits": a.bitstring, "orbit_size": size} for a, size in reduced.classes
        ]
    body["certified"] = certified
    body["seed"] = args.seed
    _emit(_envelope(args, body))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    alpha = load_alpha(args.alpha)
    report = alpha_check(alpha)
    body = {"n": alpha.n, **report.to_json()}
    body["product_identity"] = product_identity_check(alpha)
    body["axioms"] = check_axioms(build_table(alpha)).to_json()
    _emit(_envelope(args, body))
    return 0 if report.valid else 1


def cmd_bounds(args: argparse.Namespace) -> int:
    body = bounds_report(args.n).to_json()
    sigma = sigma_estimate()
    body["sigma"] = {"lower": sigma.analytic_lower, "upper": sigma.analytic_upper}
    _emit(_envelope(args, body))
    return 0


def cmd_witness(args: argparse.Namespace) -> int:
    h = build_noninterferant(args.n, args.parts)
    body = {
        "n": args.n,
        "parts": list(args.parts) if args.parts else None,
        "H": [list(t) for t in h.sorted()],
        "size": len(h),
        "noninterferant": is_noninterferant(h),
        "count": big_str(2 ** len(h)),
    }
    _emit(_envelope(args, body))
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    if args.alpha is not None:
        alpha = load_alpha(args.alpha)
    elif args.n is not None:
        alpha = AlphaFunction.zero(args.n)
    else:
        raise UsageError("table needs --alpha FILE or --n N")
    table = build_table(alpha)
    if args.format == "csv":
        sys.stdout.write(table.to_csv())
    else:
        _emit(_envelope(args, {"alpha": alpha.to_json(), **table.to_json()}))
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    if args.n != 3:
        raise UsageError("classify is defined for --n 3 only")
    classes = classify_n3(enumerate_reduced(3))
    _emit(_envelope(args, {"n": 3, "classes": [c.to_json() for c in classes]}))
    return 0


def selftest_items() -> list[tuple[str, bool]]:
    items = []
    ordered = {n: enumerate_ordered(n).count for n in (1, 2, 3)}
    reduced = {n: enumerate_reduced(n) for n in (1, 2, 3)}
    items.append(("ordered count n=1 is 1", ordered[1] == 1))
    items.append(("ordered count n=2 is 1", ordered[2] == 1))
    items.append(("reduced count n=2 is 1", reduced[2].count == 1))
    items.append(("ordered count n=3 is 18", ordered[3] == 18))
    items.append(("reduced count n=3 is 5", reduced[3].count == 5))
    sizes = Counter(size for _, size in reduced[3].classes)
    items.append(("orbit sizes n=3 are 1+6+3+6+2", sizes == Counter([1, 6, 3, 6, 2])))
    items.append(("Burnside count n=3 is 5", burnside_count(3) == 5))
    try:
        labels = [c.label for c in classify_n3(reduced[3])]
    except ClassificationError:
        labels = []
    items.append(("n=3 classes label as A1..A5", labels == ["A1", "A2", "A3", "A4", "A5"]))
    two = brute_force_two_objects()
    items.append(("two-object brute force: 1 reduced class", two.reduced_classes == 1))
    items.append(("two-object brute force matches the 2-object table", two.matches_expected))
    for n in (1, 2, 3):
        b = bounds_report(n)
        ok = b.lower_reduced <= reduced[n].count <= b.upper and b.lower_ordered <= ordered[n] <= b.upper
        items.append((f"bounds sandwich n={n}", ok))
    return items


def cmd_selftest(args: argparse.Namespace) -> int:
    items = selftest_items()
    passed = all(ok for _, ok in items)
    body = {"items": [{"name": name, "pass": ok} for name, ok in items], "passed": passed}
    _emit(_envelope(args, body))
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catenum",
        description="Enumerate and verify finite categories with all hom-sets of size 2.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("enumerate", help="ordered or reduced census of valid alpha functions")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--mode", choices=("ordered", "reduced"), default="ordered")
    p.add_argument("--method", choices=("backtrack", "exhaustive"), default="backtrack")
    p.add_argument("--certify", action="store_true", help="re-check survivors with the axiom oracle")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--seed", type=int, default=0, help="seed for sampling rejected alphas")
    p.add_argument("--output", choices=("json",), default="json")
    p.add_argument("--engine", choices=("auto", "python", "numba"), default="auto")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="check an alpha file against both conditions")
    p.add_argument("--alpha", required=True, metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="exact lower/upper bounds for n")
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("witness", help="non-interferant set and the 2^|H| lower bound")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--parts", type=_parts, default=None, metavar="a,b,c")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("table", help="export the composition table of an alpha")
    p.add_argument("--alpha", metavar="FILE")
    p.add_argument("--n", type=_positive, help="use the all-zero alpha on n objects")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("classify", help="label the n=3 classes A1..A5")
    p.add_argument("--n", type=_positive, default=3)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("selftest", help="check the known constants")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError, RangeError, CapabilityError, OSError) as exc:
        print(f"catenum {args.subcommand}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
