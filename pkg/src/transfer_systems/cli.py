"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import recursions as rec
from . import series as ser
from .enumerator import DEFAULT_BUDGET, BudgetExceeded, enumerate_grid
from .transfer import to_json_obj
from .verify import SUITES, run_suite

SEQUENCES = ("tamari", "tamari-triangle", "schroder", "refined-schroder", "antichain", "catalan", "saturated")


def cmd_count(args) -> int:
    family = "L" if args.group == "dihedral" else "T"
    if args.by_strata:
        m = rec.strata_matrix(family, args.n)
        print("k\\l " + " ".join(str(l) for l in range(1, args.n + 2)))
        for k, row in enumerate(m, start=1):
            print(f"{k} " + " ".join(str(v) for v in row))
        print(f"total {sum(map(sum, m))}")
    else:
        print(rec.count_L(args.n) if family == "L" else rec.count_T(args.n))
    return 0


def cmd_enumerate(args) -> int:
    res = enumerate_grid(args.n, budget=args.budget, workers=args.workers)
    keep = []
    for ts, key in zip(res.systems, _keys(res)):
        if args.liftable and not key.liftable:
            continue
        if args.saturated and not key.saturated:
            continue
        if args.tam and not key.tam:
            continue
        keep.append((ts, key))
    strata: dict = {}
    for _, key in keep:
        strata[key] = strata.get(key, 0) + 1
    summary = {
        "n": args.n,
        "count": len(keep),
        "filters": {"liftable": args.liftable, "saturated": args.saturated, "tam": args.tam},
        "strata": [
            {
                "k": k.stationary,
                "l": k.extendable,
                "minimal_fibrant": list(k.minimal_fibrant),
                "liftable": k.liftable,
                "saturated": k.saturated,
                "tam": k.tam,
                "count": c,
            }
            for k, c in strata.items()
        ],
    }
    if args.format == "summary":
        print(json.dumps(summary, indent=2))
    else:
        print(json.dumps({"systems": [to_json_obj(ts) for ts, _ in keep], "summary": summary}))
    return 0


def _keys(res):
    from .enumerator import StrataKey
    from .transfer import stats

    for ts in res.systems:
        s = stats(ts)
        yield StrataKey(s.stationary, s.extendable, s.minimal_fibrant, s.liftable, s.saturated, s.tam)


def sequence_rows(name: str, max_n: int) -> list[tuple]:
    if name == "tamari":
        return [(n, rec.tam_total(n)) for n in range(max_n + 1)]
    if name == "tamari-triangle":
        return [(n, *(rec.tam(n, k) for k in range(1, n + 2))) for n in range(max_n + 1)]
    if name == "schroder":
        return [(n, rec.schroder(n)) for n in range(max_n + 1)]
    if name == "refined-schroder":
        return [(n, *(rec.refined_schroder(n, k) for k in range(1, n + 1))) for n in range(1, max_n + 1)]
    if name == "antichain":
        return [(n, rec.antichain(n)) for n in range(1, max_n + 1)]
    if name == "catalan":
        return [(n, rec.catalan(n)) for n in range(max_n + 1)]
    if name == "saturated":
        return [(n, rec.saturated_liftable_count(n)) for n in range(max_n + 1)]
    raise KeyError(name)


def cmd_sequence(args) -> int:
    for row in sequence_rows(args.name, args.max_n):
        print(" ".join(str(v) for v in row))
    return 0


def cmd_export(args) -> int:
    names = [s.strip() for s in args.series.split(",") if s.strip()]
    unknown = [s for s in names if s not in ser.SERIES_FILES]
    if unknown:
        print(f"unknown series: {', '.join(unknown)}", file=sys.stderr)
        return 2
    written = ser.export(args.out, names, args.max_n)
    for path in written.values():
        print(path)
    if args.plot:
        from .figures import render

        tables = {name: ser.loads(path.read_text()) for name, path in written.items()}
        for path in render(tables, args.out):
            print(path)
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.max_n)
    if args.json:
        print(report.to_json(timing=args.timing))
    else:
        for line in report.summary_lines():
            print(line)
        if args.timing:
            print(f"wall time {report.wall_time:.2f}s")
    return 0 if report.passed else 1


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="transfer-systems", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count transfer systems on [1] x [n] by recursion")
    c.add_argument("--group", choices=("dihedral", "cyclic"), required=True)
    c.add_argument("--n", type=_nonneg, required=True)
    c.add_argument("--by-strata", action="store_true", help="print the (k, l) matrix")
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("enumerate", help="list every transfer system on [1] x [n]")
    e.add_argument("--n", type=_nonneg, required=True)
    e.add_argument("--liftable", action="store_true")
    e.add_argument("--saturated", action="store_true")
    e.add_argument("--tam", action="store_true", help="keep systems with (0,n) R (1,n)")
    e.add_argument("--format", choices=("json", "summary"), default="json")
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    e.add_argument("--workers", type=int, default=1)
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("sequence", help="print an integer sequence or triangle")
    s.add_argument("--name", choices=SEQUENCES, required=True)
    s.add_argument("--max-n", type=_nonneg, default=10)
    s.set_defaults(func=cmd_sequence)

    x = sub.add_parser("export", help="write .dat series (and optionally figures)")
    x.add_argument("--series", default="L,T,Lmax,Tmax,ratio")
    x.add_argument("--max-n", type=_nonneg, default=80)
    x.add_argument("--out", default=".")
    x.add_argument("--plot", action="store_true", help="also render PNG figures")
    x.set_defaults(func=cmd_export)

    v = sub.add_parser("verify", help="run a cross-validation suite")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--max-n", type=_nonneg, default=None)
    v.add_argument("--json", action="store_true")
    v.add_argument("--timing", action="store_true", help="report wall time (breaks byte-identity)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
