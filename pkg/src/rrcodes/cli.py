"""Command-line front end: ``rrcodes {params,count,table,enumerate,verify}``.

Exit codes: 0 success (stated-vs-observed findings are reported, not fatal), 1 when a
verification law fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from rrcodes import counting, params
from rrcodes.divisors import (
    DEFAULT_CAP,
    FAMILIES,
    CapExceeded,
    CurveDescriptor,
    FamilySpec,
    InfeasibleFamily,
    enumerate_family,
)
from rrcodes.gf import FieldError


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _family_args(p: argparse.ArgumentParser, *, need_q: bool = True, need_n: bool = True, need_k: bool = True):
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--q", type=int, required=need_q)
    p.add_argument("--n", type=int, required=need_n)
    p.add_argument("--g", type=int, default=0)
    p.add_argument("--k", type=int, required=need_k, default=None if need_k else 1)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--w", type=int)


def _spec(args) -> FamilySpec:
    if args.family in ("H", "A") and args.w is not None:
        raise UsageError(f"--w does not apply to family {args.family}")
    if args.family in ("B", "C") and args.w is None:
        raise UsageError(f"family {args.family} needs --w")
    n = args.n
    q = args.q
    if n is None:
        if q is None:
            raise UsageError("give --n, or --q for the projective line (n = q + 1)")
        n = q + 1
    if q is None:
        q = max(n - 1, 2)
    try:
        spec = FamilySpec(args.family, CurveDescriptor(q=q, n=n, g=args.g), args.k, args.s, args.w)
        spec.check_feasible()
    except ValueError as e:
        raise UsageError(str(e)) from e
    return spec


def cmd_params(args) -> tuple[str, int]:
    return _dump(params.code_parameters(_spec(args)).to_dict()), 0


def cmd_count(args) -> tuple[str, int]:
    try:
        eq = counting.BoundedEq(args.n, args.s, args.lo, args.hi)
    except ValueError as e:
        raise UsageError(str(e)) from e
    if eq.n < 1:
        raise UsageError("--n must be at least 1")
    res = counting.count_bounded(eq, oracle=args.oracle)
    if args.format == "json":
        return _dump(res.to_dict()), 0
    return f"{res.value}\n", 0


def cmd_table(args) -> tuple[str, int]:
    if args.preset == "table3":
        rows = params.table3()
        if args.format == "json":
            data = [{"n": r.n, "s": r.s, **dict(zip("HABC", map(params.round6, r.rates())))} for r in rows]
            return _dump(data), 0
        return params.table_csv(rows), 0
    if args.family is None or args.k is None or args.n is None:
        raise UsageError("--preset table2 needs --family, --n, --k and --s")
    args.g = 1
    spec = _spec(args)
    vals = params.genus_one_formulas(spec)
    row = {
        "family": spec.family,
        "n": spec.n,
        "k": spec.k,
        "s": spec.s,
        "w": spec.w,
        **vals,
    }
    if args.format == "json":
        return _dump(row), 0
    head = ["family", "n", "k", "s", "w", "normalized_weight", "rate_denominator", "rate", "normalized_min_distance"]
    cells = []
    for h in head:
        v = row[h]
        cells.append("" if v is None else params.round6(v) if isinstance(v, float) else str(v))
    return ",".join(head) + "\n" + ",".join(cells) + "\n", 0


def cmd_enumerate(args) -> tuple[str, int]:
    spec = _spec(args)
    lines = [d.to_json() for d in enumerate_family(spec, args.cap)]
    return "".join(line + "\n" for line in lines), 0


def cmd_verify(args) -> tuple[str, int]:
    from rrcodes.realize import VERIFY_CAP, GenusUnsupported, verify

    args.n = None
    args.g = 0
    spec = _spec(args)
    try:
        report = verify(spec, cap=args.cap if args.cap is not None else VERIFY_CAP, seed=args.seed)
    except GenusUnsupported as e:
        raise UsageError(str(e)) from e
    return report.to_json() + "\n", 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rrcodes", description=__doc__.splitlines()[0])
    parser.add_argument("--output", "-o", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="code parameters of a family (JSON)")
    _family_args(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("count", help="solutions of x_1+...+x_n = s with lo <= x_i <= hi")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--lo", type=int, default=0)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="count by dynamic programming")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="rate tables")
    p.add_argument("--preset", choices=("table3", "table2"), required=True)
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--q", type=int, default=16)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--w", type=int)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("enumerate", help="divisors of a family, one JSON array per line")
    _family_args(p, need_q=False, need_n=False, need_k=False)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="realize a genus-0 family and check its laws")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--w", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except (UsageError, InfeasibleFamily, FieldError) as e:
        parser.error(str(e))
    except CapExceeded as e:
        print(f"rrcodes: {e}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
