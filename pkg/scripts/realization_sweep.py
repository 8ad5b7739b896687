"""Verify every small genus-0 family and print one summary line per spec.

    python3 scripts/realization_sweep.py [--q 2 3 4 5] [--k 1 2 3] [--s 1 2 3] [--cap 2000] [--json out.jsonl]
"""

import argparse
import itertools
import json
import sys
import time

from rrcodes.counting import count_family
from rrcodes.divisors import CurveDescriptor, FamilySpec
from rrcodes.realize import verify


def specs(qs, ks, ss):
    for q, k, s in itertools.product(qs, ks, ss):
        curve = CurveDescriptor(q=q, n=q + 1, g=0)
        if s <= curve.n:
            yield FamilySpec("H", curve, k, s)
        yield FamilySpec("A", curve, k, s)
        for w in range(1, s + 1):
            yield FamilySpec("B", curve, k, s, w)
            yield FamilySpec("C", curve, k, s, w)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--k", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--s", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--cap", type=int, default=2000)
    ap.add_argument("--json", help="append full reports as JSON lines")
    args = ap.parse_args(argv)

    sink = open(args.json, "w", encoding="utf-8") if args.json else None
    failed = skipped = 0
    t0 = time.perf_counter()
    for sp in specs(args.q, args.k, args.s):
        tag = f"{sp.family} q={sp.curve.q} k={sp.k} s={sp.s}" + (f" w={sp.w}" if sp.w else "")
        size = count_family(sp)
        if size > args.cap:
            print(f"{tag:<22} skipped ({size} codewords)")
            skipped += 1
            continue
        t = time.perf_counter()
        r = verify(sp, cap=args.cap)
        failed += not r.ok
        laws = ",".join(sorted({d["law"] for d in r.discrepancies})) or "-"
        print(
            f"{tag:<22} {'ok  ' if r.ok else 'FAIL'} size={size:<5} pairs={r.pairs_checked:<8} "
            f"d={r.empirical_min_distance} stated={r.stated_min_distance} strict_sum={r.sum_law_strict_pairs:<6} "
            f"notes={laws} ({time.perf_counter() - t:.2f}s)"
        )
        if sink:
            sink.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")
    if sink:
        sink.close()
    print(f"{failed} failing, {skipped} skipped, {time.perf_counter() - t0:.1f}s total")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
