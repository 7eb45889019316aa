"""Batch command-line front end.

  sp-baw blocks  --p 3 --f 1 --ell 5 --n 1          block table
  sp-baw verify  --p 3 --f 1 --ell 5 --n 2          counts/bijection checks
  sp-baw sweep   --p 3 --f 1 --ell 5,7 --n 1,2      grid + regression cache

Reports are JSON (or a flat CSV projection) with a stable schema, byte
identical across runs and --jobs settings.  Exit codes: 0 all requested
checks pass, 1 a check failed, 2 usage or configuration error.
"""

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__, bawcheck as bc, labelspace as ls
from .fieldctx import make_context

DEFAULT_WORK_LIMIT = 10 ** 7
ALL_CHECKS = ("counts", "bijection", "equivariance", "invariants")


def _context_jsonable(ctx):
    return {"p": ctx.p, "f": ctx.f, "q": ctx.q, "ell": ctx.ell,
            "e": ctx.e, "epsilon": ctx.epsilon}


def _estimated_frontier(p, f, n):
    return (p ** f) ** (2 * n + 1)


def _check_work_limit(args):
    est = _estimated_frontier(args.p, args.f, args.n)
    if est > args.work_limit:
        raise ValueError(
            f"refusing to run: estimated enumeration frontier {est} exceeds "
            f"the work limit {args.work_limit}; rerun with a larger --work-limit "
            f"if this size is intended")


def _run_blocks(ctx, n, checks, jobs):
    blocks = ls.enumerate_blocks(ctx, n)
    generators = [bc.FIELD(1), bc.DIAGONAL]

    def work(block):
        rec = ls.block_jsonable(ctx, block)
        if checks:
            rec.update(bc.verify_block(ctx, block))
            if "equivariance" in checks:
                rec["equivariant"] = not bc.verify_equivariance_of_block(
                    ctx, block, generators)
            if "invariants" in checks:
                ok = True
                try:
                    for wk in ls.enumerate_weights_k(ctx, block):
                        ls.audit_weight_label(ctx, wk, n)
                except AssertionError:
                    ok = False
                rec["invariants_ok"] = ok
        return rec

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(work, blocks))
    else:
        records = [work(b) for b in blocks]
    return records


def _passes(records, checks):
    for rec in records:
        if "counts" in checks and not (
                rec["n_ibr"] == rec["n_weights_q"] == rec["n_weights_k"]):
            return False
        if "bijection" in checks and not rec["bijective"]:
            return False
        if "equivariance" in checks and not rec["equivariant"]:
            return False
        if "invariants" in checks and not rec["invariants_ok"]:
            return False
    return True


def _build_report(ctx, n, checks, jobs):
    records = _run_blocks(ctx, n, checks, jobs)
    report = {
        "version": __version__,
        "context": _context_jsonable(ctx),
        "n": n,
        "checks": sorted(checks),
        "blocks": records,
        "summary": {
            "n_blocks": len(records),
            "total_ibr": sum(r.get("n_ibr", 0) for r in records),
            "all_pass": _passes(records, checks) if checks else True,
        },
    }
    if "invariants" in checks:
        universe = ls.enumerate_ibr_universe(ctx, n)
        report["summary"]["universe_size"] = len(universe)
        report["summary"]["partition_ok"] = (
            report["summary"]["total_ibr"] == len(universe))
        if not report["summary"]["partition_ok"]:
            report["summary"]["all_pass"] = False
        try:
            bc.verify_action_laws(ctx, n)
            report["summary"]["action_laws_ok"] = True
        except AssertionError:
            report["summary"]["action_laws_ok"] = False
            report["summary"]["all_pass"] = False
    return report


def _report_json(report):
    return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"


def _report_csv(report):
    buf = io.StringIO()
    fields = ["p", "f", "q", "ell", "e", "epsilon", "n", "s", "kappa", "i",
              "w", "n_ibr", "n_weights_q", "n_weights_k", "bijective",
              "equivariant", "invariants_ok"]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    ctx = report["context"]
    for rec in report["blocks"]:
        writer.writerow({
            **ctx, "n": report["n"],
            "s": json.dumps(rec["s"], sort_keys=True, separators=(",", ":")),
            "kappa": json.dumps(rec["kappa"], sort_keys=True, separators=(",", ":")),
            "i": rec["i"],
            "w": json.dumps(rec["w"], sort_keys=True, separators=(",", ":")),
            "n_ibr": rec.get("n_ibr", ""),
            "n_weights_q": rec.get("n_weights_q", ""),
            "n_weights_k": rec.get("n_weights_k", ""),
            "bijective": rec.get("bijective", ""),
            "equivariant": rec.get("equivariant", ""),
            "invariants_ok": rec.get("invariants_ok", ""),
        })
    return buf.getvalue()


def _emit(text, out):
    if out:
        tmp = out + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(text)
        os.replace(tmp, out)
    else:
        sys.stdout.write(text)


def cmd_blocks(args):
    _check_work_limit(args)
    ctx = make_context(args.p, args.f, args.ell)
    report = _build_report(ctx, args.n, set(), args.jobs)
    text = _report_json(report) if args.format == "json" else _report_csv(report)
    _emit(text, args.out)
    return 0


def cmd_verify(args):
    _check_work_limit(args)
    ctx = make_context(args.p, args.f, args.ell)
    checks = set(args.checks.split(",")) if args.checks else set(ALL_CHECKS)
    unknown = checks - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    try:
        report = _build_report(ctx, args.n, checks, args.jobs)
    except Exception as exc:  # preserve partial output with a failure marker
        report = {"version": __version__, "context": _context_jsonable(ctx),
                  "n": args.n, "checks": sorted(checks), "blocks": [],
                  "summary": {"all_pass": False},
                  "failed": f"{type(exc).__name__}: {exc}"}
        text = _report_json(report)
        _emit(text, args.out)
        return 1
    text = _report_json(report) if args.format == "json" else _report_csv(report)
    _emit(text, args.out)
    return 0 if report["summary"]["all_pass"] else 1


def _int_list(text):
    return [int(x) for x in text.split(",") if x]


def cmd_sweep(args):
    cache_dir = args.cache_dir or os.environ.get("SP_BAW_CACHE_DIR")
    if not cache_dir:
        raise ValueError("sweep needs --cache-dir or SP_BAW_CACHE_DIR")
    os.makedirs(cache_dir, exist_ok=True)
    checks = set(args.checks.split(",")) if args.checks else set(ALL_CHECKS)
    results = []
    status = 0
    for p in _int_list(args.p):
        for f in _int_list(args.f):
            for ell in _int_list(args.ell):
                for n in _int_list(args.n):
                    entry = {"p": p, "f": f, "ell": ell, "n": n}
                    key = f"p{p}_f{f}_ell{ell}_n{n}_" + "-".join(sorted(checks))
                    path = os.path.join(cache_dir, key + ".json")
                    try:
                        if _estimated_frontier(p, f, n) > args.work_limit:
                            raise ValueError("work limit exceeded")
                        ctx = make_context(p, f, ell)
                        report = _build_report(ctx, n, checks, args.jobs)
                        text = _report_json(report)
                    except (ValueError, AssertionError) as exc:
                        entry["status"] = "error"
                        entry["error"] = str(exc)
                        results.append(entry)
                        status = max(status, 2)
                        continue
                    if not report["summary"]["all_pass"]:
                        entry["status"] = "failed"
                        status = max(status, 1)
                    elif os.path.exists(path):
                        cached = open(path).read()
                        if cached == text:
                            entry["status"] = "match"
                        else:
                            entry["status"] = "regression"
                            status = max(status, 1)
                    else:
                        with open(path, "w") as fh:
                            fh.write(text)
                        entry["status"] = "new"
                    results.append(entry)
    summary = {"version": __version__, "cache_dir": cache_dir,
               "configs": results,
               "regressions": sum(1 for r in results
                                  if r["status"] in ("regression", "failed"))}
    _emit(_report_json(summary), args.out)
    return status


def _add_common(sub, grid=False):
    kind = str if grid else int
    sub.add_argument("--p", type=kind, required=True, help="odd prime p")
    sub.add_argument("--f", type=kind, default="1" if grid else 1,
                     help="exponent f with q = p^f")
    sub.add_argument("--ell", type=kind, required=True,
                     help="odd prime ell different from p")
    sub.add_argument("--n", type=kind, required=True, help="symplectic rank n")
    sub.add_argument("--out", default=None, help="write the report here")
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--jobs", type=int, default=1, help="parallelism degree")
    sub.add_argument("--work-limit", type=int, default=DEFAULT_WORK_LIMIT,
                     help="refusal bound for the enumeration frontier")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sp-baw",
        description="Block, Brauer-character and weight label enumeration and "
                    "verification for Sp_2n(q) at odd non-defining primes")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    b = subs.add_parser("blocks", help="emit the block table")
    _add_common(b)
    b.set_defaults(func=cmd_blocks)

    v = subs.add_parser("verify", help="run per-block checks")
    _add_common(v)
    v.add_argument("--checks", default=None,
                   help="comma list from: " + ",".join(ALL_CHECKS))
    v.set_defaults(func=cmd_verify)

    s = subs.add_parser("sweep", help="run a grid and compare to the cache")
    _add_common(s, grid=True)
    s.add_argument("--checks", default=None,
                   help="comma list from: " + ",".join(ALL_CHECKS))
    s.add_argument("--cache-dir", default=None,
                   help="cache directory (or SP_BAW_CACHE_DIR)")
    s.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        parser.exit(2, f"sp-baw: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
