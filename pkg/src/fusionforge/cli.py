"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (witness JSON on stdout),
2 usage or I/O error.  JSON is written with sorted keys and no floats, so
output is byte-identical for identical flags.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .chartables import Eigentable, build_table
from .errors import FusionForgeError, InvalidArgument

FAMILIES = ("psl2", "etingof")
OK, FAIL, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(obj, out: str | None = None) -> None:
    text = dumps(obj) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidArgument(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{path} is not valid JSON: {exc}") from exc


def _check_q(q: int) -> int:
    if q < 2:
        raise InvalidArgument(f"q must be >= 2, got {q}")
    return q


def _ring(q: int, family: str, method: str):
    if method == "closed":
        from .closedrules import closed_ring
        return closed_ring(q, family)
    from .verlinde import reconstruct
    return reconstruct(build_table(q, family))


# -- subcommands --------------------------------------------------------------

def cmd_table(args) -> int:
    t = build_table(_check_q(args.q), args.family)
    if args.format == "json":
        _emit(t.to_json(), args.out)
    else:
        text = t.format_grid() + "\n"
        if args.out in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
    return OK


def cmd_ring(args) -> int:
    R = _ring(_check_q(args.q), args.family, args.method)
    _emit(R.to_json(), args.out)
    return OK


def cmd_verify(args) -> int:
    from .fusionring import FusionRing, character_property_holds, verify_axioms

    R = FusionRing.from_json(_load_json(args.ring))
    report = verify_axioms(R)
    result = {"axioms": report.to_json(), "ok": report.ok}
    ok = report.ok
    if args.table:
        t = Eigentable.from_json(_load_json(args.table))
        if t.rank != R.rank:
            raise InvalidArgument("ring and table ranks differ")
        from . import _familysum
        bad = _familysum.character_violation(t, R.N)
        result["character_property"] = bad is None
        if bad is not None:
            result["character_witness"] = list(bad)
        ok = ok and bad is None
        result["degrees_ok"] = character_property_holds(R, list(t.degrees))
        ok = ok and result["degrees_ok"]
    result["ok"] = ok
    _emit(result)
    return OK if ok else FAIL


def cmd_criteria(args) -> int:
    from .criteria import run_all

    only = _only(args.only)
    reports = run_all(_check_q(args.q), args.family, only, args.exhaustive_spectrum)
    reports.sort(key=lambda r: r.criterion)
    _emit({"family": args.family, "q": args.q, "reports": [r.to_json() for r in reports]})
    return OK if all(r.verdict == "pass" for r in reports) else FAIL


def _only(text):
    if not text:
        return None
    from .criteria import ALL_CRITERIA
    names = [x.strip() for x in text.split(",") if x.strip()]
    unknown = [x for x in names if x not in ALL_CRITERIA]
    if unknown:
        raise InvalidArgument(f"unknown criteria {unknown}; choose from {', '.join(ALL_CRITERIA)}")
    return names


def scan_job(job) -> list[dict]:
    """Run the battery for one ``(q, family)``; one record per criterion."""
    from .criteria import run_table_criteria, zero_spectrum, one_spectrum, modular_divisibility
    from .verlinde import reconstruct

    q, family, only, timing = job
    records = []
    t = build_table(q, family)
    ring = None
    for name in (only or _ALL):
        start = time.perf_counter()
        if name in _TABLE:
            rep = run_table_criteria(t, [name])[0]
        else:
            if ring is None:
                ring = reconstruct(t)
            rep = {"zero_spectrum": zero_spectrum, "one_spectrum": one_spectrum,
                   "modular_divisibility": modular_divisibility}[name](ring)
        ms = int((time.perf_counter() - start) * 1000) if timing else 0
        records.append({"criterion": rep.criterion, "elapsed_ms": ms, "family": family,
                        "method": rep.method, "q": q, "verdict": rep.verdict})
    return records


def _criteria_names():
    from .criteria import ALL_CRITERIA, TABLE_CRITERIA
    return ALL_CRITERIA, TABLE_CRITERIA


_ALL, _TABLE = _criteria_names()


def cmd_scan(args) -> int:
    if args.q_from < 2 or args.q_to < args.q_from:
        raise InvalidArgument("need 2 <= q-from <= q-to")
    if args.jobs < 1:
        raise InvalidArgument("--jobs must be >= 1")
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    for f in families:
        if f not in FAMILIES:
            raise InvalidArgument(f"unknown family {f!r}")
    only = _only(args.only)
    jobs = [(q, f, only, args.timing) for f in families for q in range(args.q_from, args.q_to + 1)]
    if args.jobs == 1:
        results = [scan_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(scan_job, jobs))
    records = sorted((r for batch in results for r in batch),
                     key=lambda r: (r["family"], r["q"], r["criterion"]))
    text = "".join(dumps(r) + "\n" for r in records)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return OK if all(r["verdict"] == "pass" for r in records) else FAIL


def cmd_modsearch(args) -> int:
    from .modsearch import search_nonpointed_simple_modular_types

    found, cert = search_nonpointed_simple_modular_types(args.max_rank, not args.no_unique_unit_filter,
                                                         not args.no_npp_filter)
    cert_json = cert.to_json()
    if args.certificate:
        _emit(cert_json, args.certificate)
    _emit({"candidates": [c.to_json() for c in found], "certificate": cert_json})
    return OK if not found else FAIL


def cmd_crosscheck(args) -> int:
    from .closedrules import crosscheck_diff

    diff = crosscheck_diff(_check_q(args.q), args.family)
    _emit({"differences": [list(d) for d in diff[:100]], "family": args.family,
           "match": not diff, "q": args.q})
    return OK if not diff else FAIL


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fusionforge", description="Interpolated PSL(2,q) fusion rings and their criteria.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def qfam(sp):
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--family", choices=FAMILIES, default="psl2")

    sp = sub.add_parser("table", help="print an eigentable")
    qfam(sp)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("ring", help="build a fusion ring")
    qfam(sp)
    sp.add_argument("--method", choices=("verlinde", "closed"), default="verlinde")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_ring)

    sp = sub.add_parser("verify", help="check the fusion axioms of a ring JSON")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--table")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("criteria", help="run the categorification criteria")
    qfam(sp)
    sp.add_argument("--only")
    sp.add_argument("--exhaustive-spectrum", action="store_true")
    sp.set_defaults(func=cmd_criteria)

    sp = sub.add_parser("scan", help="criteria over a range of q, as JSON lines")
    sp.add_argument("--q-from", type=int, required=True)
    sp.add_argument("--q-to", type=int, required=True)
    sp.add_argument("--families", default="psl2,etingof")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--only")
    sp.add_argument("--timing", action="store_true",
                    help="record wall-clock elapsed_ms (otherwise 0, keeping output byte-stable)")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("modsearch", help="search nonpointed simple integral modular types")
    sp.add_argument("--max-rank", type=int, default=11)
    sp.add_argument("--no-npp-filter", action="store_true")
    sp.add_argument("--no-unique-unit-filter", action="store_true")
    sp.add_argument("--certificate")
    sp.set_defaults(func=cmd_modsearch)

    sp = sub.add_parser("crosscheck", help="closed-form rules against Verlinde reconstruction")
    qfam(sp)
    sp.set_defaults(func=cmd_crosscheck)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else USAGE
    try:
        return args.func(args)
    except (InvalidArgument, OSError) as exc:
        print(f"fusionforge: error: {exc}", file=sys.stderr)
        return USAGE
    except FusionForgeError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
