"""Command-line front end.

Exit codes: 0 success or match, 1 verification mismatch, 2 usage error.
Data goes to stdout, progress and diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from . import affine, expsum, kernels, seqcorr, suite
from .errors import XCorrError
from .gf2core import TowerParams, build_field

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
JOBS_ENV = "XCORR4_JOBS"


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# ---------------------------------------------------------------- parsing

def _common(p: argparse.ArgumentParser, tower: bool = True, raw: bool = False) -> None:
    if tower:
        p.add_argument("--n", type=int, help="odd n >= 3")
        p.add_argument("--k", type=int, help="k >= 1")
    if raw:
        p.add_argument("--m", type=int, help="field degree (raw parameterization)")
    p.add_argument("--modulus", help="primitive modulus in hex (default: built-in table)")
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")
    p.add_argument("--jobs", type=int, default=None,
                   help=f"worker threads (default: ${JOBS_ENV} or 1)")
    p.add_argument("--timing", action="store_true", help="add wall time under 'meta'")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="xcorr4", description=(
        "Cross-correlation of m-sequences of periods 2^m - 1 and 2^(m/2) - 1 "
        "under the decimation d = (2^nk + 1)/(2^k + 1)."))
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", help="field tables, tower constants")
    _common(p, raw=True)

    p = sub.add_parser("spectrum", help="cross-correlation spectrum")
    _common(p, raw=True)
    p.add_argument("--d", type=int, help="decimation override")
    p.add_argument("--method", choices=("auto", "direct", "folded", "expsum"), default="auto")
    p.add_argument("--predict", action="store_true", help="compare with the closed form")
    p.add_argument("--oracle", action="store_true", help="force the literal-sum route")

    p = sub.add_parser("classify", help="zero classes of the affine polynomial A_a")
    _common(p)
    p.add_argument("--detail", action="store_true", help="one JSON line per a")
    p.add_argument("--oracle", action="store_true", help="compare zeros with enumeration")

    p = sub.add_parser("search", help="spectra of all decimations for an even m")
    _common(p, tower=False, raw=True)
    p.add_argument("--d-min", type=int, default=None)
    p.add_argument("--d-max", type=int, default=None)
    p.add_argument("--method", choices=("folded", "direct", "expsum"), default="folded")
    p.add_argument("--four-only", action="store_true", help="list four-valued hits only")

    p = sub.add_parser("verify", help="run every consistency check for (n, k)")
    _common(p)
    p.add_argument("--samples", type=int, default=None,
                   help="a-values for the exponential-sum checks (default: all up to m = 12, else 50)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="use every a in the sum checks")

    p = sub.add_parser("bench", help="numba vs numpy kernel timings")
    _common(p)
    p.add_argument("--repeat", type=int, default=3)
    return ap


def _jobs(args) -> int:
    if args.jobs is not None:
        j = args.jobs
    else:
        env = os.environ.get(JOBS_ENV, "1")
        try:
            j = int(env)
        except ValueError:
            raise UsageError(f"{JOBS_ENV}={env!r} is not an integer")
    if j < 1:
        raise UsageError("--jobs must be >= 1")
    return kernels.set_threads(j)


def _modulus(args):
    if args.modulus is None:
        return None
    try:
        return int(args.modulus, 16)
    except ValueError:
        raise UsageError(f"--modulus {args.modulus!r} is not hex")


def _tower(args) -> TowerParams:
    if args.n is None or args.k is None:
        raise UsageError("--n and --k are required")
    return TowerParams(args.k, args.n)


def _field_from(args):
    """(field, params or None) from --n/--k or --m."""
    mod = _modulus(args)
    if getattr(args, "n", None) is not None or getattr(args, "k", None) is not None:
        if getattr(args, "m", None) is not None:
            raise UsageError("give either --n/--k or --m, not both")
        tp = _tower(args)
        return build_field(tp, mod), tp
    if getattr(args, "m", None) is None:
        raise UsageError("give --n and --k, or --m")
    return build_field(args.m, mod), None


# ---------------------------------------------------------------- commands

def cmd_field_info(args) -> tuple[int, dict, list]:
    field, tp = _field_from(args)
    info = {
        "m": field.m,
        "modulus": format(field.modulus, "x"),
        "order": field.p,
        "backend": kernels.BACKEND,
        "tables_ok": field.verify_tables(samples=2000),
    }
    if tp is not None:
        ctx = expsum.make_context(field)
        info.update({"n": tp.n, "k": tp.k, "d": tp.d, "q": tp.q,
                     "r": field.to_hex(ctx.r), "delta": field.to_hex(ctx.delta),
                     "c": field.to_hex(ctx.c)})
    rows = [["key", "value"]] + [[kk, info[kk]] for kk in sorted(info)]
    return EXIT_OK if info["tables_ok"] else EXIT_MISMATCH, info, rows


def cmd_spectrum(args) -> tuple[int, dict, list]:
    field, tp = _field_from(args)
    if field.m % 2:
        raise UsageError(f"m = {field.m} must be even")
    d = args.d if args.d is not None else (tp.d if tp is not None else 1)
    method = "direct" if args.oracle else args.method
    measured = seqcorr.spectrum(field, d, method)
    out = {"measured": measured.to_dict(), "method": method}
    code = EXIT_OK
    if args.predict:
        if tp is None or d % tp.q != tp.d % tp.q:
            raise UsageError("--predict needs --n/--k and the family decimation")
        pred = expsum.expected_spectrum(tp)
        match = pred.counts == measured.counts
        out.update({"predicted": pred.to_dict(), "match": match})
        code = EXIT_OK if match else EXIT_MISMATCH
    out["power_sum"] = measured.power_sum()
    rows = [["value", "count"]] + [[v, c] for v, c in measured.counts.items()]
    return code, out, rows


def cmd_classify(args) -> tuple[int, dict, list]:
    tp = _tower(args)
    field = build_field(tp, _modulus(args))
    cl = affine.classify_all(field, oracle=args.oracle, keep_reports=args.detail)
    want = affine.expected_class_counts(tp.n, tp.k)
    bl = affine.bluher_counts(field)
    ok = cl.ok and cl.counts == want and bl.trichotomy_ok and bl.counts == affine.bluher_formula(tp.n, tp.k)
    out = {
        "n": tp.n, "k": tp.k,
        "counts": {kk.value: v for kk, v in cl.counts.items()},
        "expected": {kk.value: v for kk, v in want.items()},
        "bluher": vars(bl.counts),
        "mismatches": [field.to_hex(a) for a in cl.mismatches],
        "ok": ok,
    }
    if args.detail:
        out["detail"] = [r.to_dict(field) for r in cl.reports]
    rows = [["class", "count", "expected"]] + [
        [kk.value, cl.counts[kk], want[kk]] for kk in affine.ZeroClass]
    return EXIT_OK if ok else EXIT_MISMATCH, out, rows


def cmd_search(args) -> tuple[int, dict, list]:
    if args.m is None:
        raise UsageError("--m is required")
    if args.m % 2:
        raise UsageError(f"m = {args.m} must be even")
    field = build_field(args.m, _modulus(args))
    q = (1 << (args.m // 2)) - 1
    lo = 1 if args.d_min is None else args.d_min
    hi = q - 1 if args.d_max is None else args.d_max
    if not 1 <= lo <= hi < q:
        raise UsageError(f"need 1 <= d-min <= d-max <= {q - 1}")
    last = [0.0]

    def prog(i, total):
        now = time.monotonic()
        if now - last[0] > 1.0 or i == total:
            last[0] = now
            _progress(f"search m={args.m}: {i}/{total}")

    hits = seqcorr.decimation_search(field, range(lo, hi + 1), args.method, prog)
    if args.four_only:
        hits = [h for h in hits if h.four_valued]
    items = []
    for h in hits:
        items.append({
            "d": h.d,
            "n_values": h.n_values,
            "family": [list(x) for x in h.family],
            "spectrum": h.spectrum.to_dict()["entries"] if h.spectrum else None,
            "note": h.note,
        })
    out = {"m": args.m, "method": args.method, "hits": items}
    rows = [["d", "n_values", "family", "note"]] + [
        [it["d"], it["n_values"], ";".join(f"{a}x{b}" for a, b in it["family"]), it["note"]]
        for it in items]
    return EXIT_OK, out, rows


def cmd_verify(args) -> tuple[int, dict, list]:
    tp = _tower(args)
    if tp.m > 20:
        _progress(f"warning: m = {tp.m} > 20, expect a long run")
    field = build_field(tp, _modulus(args))
    rep = suite.run_suite(field, samples=args.samples, seed=args.seed,
                          exhaustive=args.oracle, progress=_progress)
    out = rep.to_dict(timing=False)
    if args.timing:
        out.setdefault("meta", {})["check_seconds"] = {
            r.name: round(r.seconds, 4) for r in rep.results}
    rows = [["check", "ok"]] + [[r.name, int(r.ok)] for r in rep.results]
    return EXIT_OK if rep.ok else EXIT_MISMATCH, out, rows


def cmd_bench(args) -> tuple[int, dict, list]:
    from .bench import run_bench
    tp = _tower(args)
    res = run_bench(tp.n, tp.k, repeat=args.repeat)
    rows = [["backend", "kernel", "seconds"]]
    for be, times in res["seconds"].items():
        for kern, sec in times.items():
            rows.append([be, kern, f"{sec:.6f}"])
    return EXIT_OK, res, rows


COMMANDS = {
    "field-info": cmd_field_info,
    "spectrum": cmd_spectrum,
    "classify": cmd_classify,
    "search": cmd_search,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


# ---------------------------------------------------------------- output

def _human(command: str, out: dict, rows: list) -> str:
    if command == "spectrum":
        lines = ["value        count"]
        lines += [f"{e['value']:>10}  {e['count']:>7}" for e in out["measured"]["entries"]]
        lines.append(f"power sum: {out['power_sum']}")
        if "match" in out:
            lines.append(f"predicted match: {out['match']}")
        return "\n".join(lines)
    if command == "search":
        lines = []
        for it in out["hits"]:
            fam = ", ".join(f"(n,k)=({a},{b})" for a, b in it["family"])
            tag = "four-valued" if it["n_values"] == 4 else ""
            lines.append(f"d={it['d']:<8} values={it['n_values']!s:<5} {tag:<12} {fam} {it['note']}".rstrip())
        return "\n".join(lines)
    if command == "verify":
        lines = [f"{name:<24} {'ok' if c['ok'] else 'FAIL'}" for name, c in out["checks"].items()]
        lines.append("all checks passed" if out["ok"] else f"first failure: {out['first_failure']}")
        return "\n".join(lines)
    return "\n".join("  ".join(str(x) for x in row) for row in rows)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        _jobs(args)
        code, out, rows = COMMANDS[args.command](args)
    except (UsageError, XCorrError) as exc:
        print(f"xcorr4: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        out.setdefault("meta", {})["wall_seconds"] = round(time.perf_counter() - t0, 4)
    if args.format == "json" and "detail" in out:
        # JSON lines: one object per a, then the summary
        detail = out.pop("detail")
        _emit("\n".join(_dump(d) for d in detail + [out]))
    elif args.format == "json":
        _emit(_dump(out))
    elif args.format == "csv":
        _emit(_csv(rows))
    else:
        _emit(_human(args.command, out, rows))
        if args.timing:
            print(f"wall time: {out['meta']['wall_seconds']} s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
