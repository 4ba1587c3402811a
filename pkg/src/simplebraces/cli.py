"""``simplebraces`` command line: build, verify, embed, export-ybe, report.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .brace import DEFAULT_SEED, TABLE_LIMIT, SizeGuardError
from .family import (
    DEFAULT_MAX_ORDER,
    FamilyParams,
    ParamsError,
    additive_signature,
    brace_order,
    build_family,
    derive,
    synthesize_embedding,
    verify_embedding,
)
from .residue import ResidueError, matrix_order
from .suite import LEVELS, parse_control, run_verification
from .ybe import check_involutive, check_nondegenerate, solution_from_brace

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _max_order(text: str) -> int | None:
    if text.lower() in ("none", "off", "0"):
        return None
    return int(float(text))


def _params(args) -> FamilyParams:
    if args.params_file:
        if any(v is not None for v in (args.primes, args.exponents, args.multiplicities)):
            raise ParamsError("give either --params-file or inline --primes/--exponents/--multiplicities")
        try:
            return FamilyParams.load(args.params_file)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParamsError(f"cannot read params file: {exc}") from None
    if args.primes is None:
        return FamilyParams.minimal()
    m = len(args.primes)
    return FamilyParams(args.primes, args.exponents or [1] * m, args.multiplicities or [1] * m)


def _subject(args):
    """``(brace, family, subject-dict)`` for the params or the ``--control`` option."""
    if getattr(args, "control", None):
        params = _params(args) if (args.primes or args.params_file) else None
        brace = parse_control(args.control, params, args.max_order)
        return brace, None, {"control": args.control}
    params = _params(args)
    family = build_family(params, args.max_order, seed=args.seed)
    return family.brace, family, {"params": params.to_dict()}


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _check_table(checks) -> list[str]:
    width = max((len(c.name) for c in checks), default=10)
    lines = [f"{'check':<{width}}  {'status':<17}  {'checked':>10}  {'seconds':>8}"]
    for c in checks:
        line = f"{c.name:<{width}}  {c.status:<17}  {c.checked:>10}  {c.seconds:>8.2f}"
        if c.witness is not None:
            line += f"  witness={list(c.witness)}"
        if c.detail:
            line += f"  ({c.detail})"
        lines.append(line)
    return lines


def cmd_build(args) -> int:
    params = _params(args)
    order = brace_order(params)
    blocks = derive(params)
    info = {
        "params": params.to_dict(),
        "order": order,
        "signature": [list(t) for t in additive_signature(params)],
        "blocks": [
            {"block": b.index + 1, "modulus": b.modulus.value, "l": b.l,
             "C_order": matrix_order(b.C), "action_order": b.action_order}
            for b in blocks
        ],
    }
    lines = [
        f"params: primes={params.primes} exponents={params.exponents} multiplicities={params.multiplicities}",
        f"order: {order}",
        f"additive signature: {[tuple(t) for t in additive_signature(params)]}",
    ]
    for b in info["blocks"]:
        lines.append(f"block {b['block']}: Z/{b['modulus']}, l = {b['l']}, order of C = {b['C_order']}")
    if args.max_order is not None and order > args.max_order:
        lines.append(f"note: order exceeds the size guard {args.max_order}; the brace will not be materialized")
        info["within_guard"] = False
    else:
        build_family(params, args.max_order)
        info["within_guard"] = True
    _emit(args, info, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    brace, family, subject = _subject(args)
    run = run_verification(brace, family=family, level=args.level, seed=args.seed,
                           threads=args.threads, subject=subject)
    lines = [f"order {run.order}, level {run.level}, seed {run.seed}", *_check_table(run.checks),
             f"derived series: {run.facts.get('derived_series')}",
             "verdict: " + ("ok" if run.ok else "FAILED")]
    if "ideal_certificate" in run.facts:
        cert = run.facts["ideal_certificate"]
        lines.insert(-1, f"ideal certificate from {cert['generator']}: size {cert['size']}, "
                         f"elements {cert['elements'][:16]}")
    _emit(args, run.as_dict(), lines)
    if args.out:
        Path(args.out).write_text(json.dumps(run.as_dict(), indent=2))
    return EXIT_OK if run.ok else EXIT_FAIL


def cmd_embed(args) -> int:
    plan = synthesize_embedding(args.group)
    if args.multiplicities is not None:
        minimal = plan.params.multiplicities
        if len(args.multiplicities) != len(minimal) or any(a < b for a, b in zip(args.multiplicities, minimal)):
            raise ParamsError(f"multiplicities must be {len(minimal)} values at least {list(minimal)}")
        plan.params = FamilyParams(plan.params.primes, plan.params.exponents, args.multiplicities)
    info = plan.as_dict()
    lines = [
        f"target: {' x '.join(f'Z/{p**k}' for p, k in plan.factors)}",
        f"params: primes={plan.params.primes} exponents={plan.params.exponents} "
        f"multiplicities={plan.params.multiplicities}",
        f"brace order: {info['order']}",
    ]
    for a in info["assignment"]:
        lines.append(f"  Z/{a['factor']} -> block {a['block']}, coordinate {a['coordinate']}, "
                     f"generator times {a['multiplier']}")
    code = EXIT_OK
    if args.no_verify:
        info["verification"] = None
    else:
        try:
            report = verify_embedding(plan)
        except SizeGuardError as exc:
            info["verification"] = {"status": "skipped", "detail": str(exc)}
            lines.append(f"verification skipped: {exc}")
        else:
            info["verification"] = report.as_dict()
            lines.append(f"injectivity on generators: {report.status} ({report.detail})")
            code = EXIT_OK if report.ok else EXIT_FAIL
    _emit(args, info, lines)
    return code


def cmd_export_ybe(args) -> int:
    brace, _, subject = _subject(args)
    r = solution_from_brace(brace, limit=args.table_limit)
    checks = [check_involutive(r, seed=args.seed), check_nondegenerate(r, seed=args.seed)]
    r.provenance = {**subject, "size": brace.size, "seed": args.seed,
                    "checks": {c.name: c.status for c in checks}}
    if not all(c.ok for c in checks):
        _emit(args, {"exported": False, "checks": [c.as_dict() for c in checks]},
              ["refusing to export:", *_check_table(checks)])
        return EXIT_FAIL
    out = Path(args.out or "solution.json")
    r.save(out)
    _emit(args, {"exported": True, "path": str(out), "size": r.size},
          [f"wrote {r.size}-point solution to {out}", *_check_table(checks)])
    return EXIT_OK


def cmd_report(args) -> int:
    from .report import write_report

    brace, family, subject = _subject(args)
    run = run_verification(brace, family=family, level=args.level, seed=args.seed,
                           threads=args.threads, subject=subject, trace_generators=args.traces)
    paths = write_report(run, brace, args.out or "report")
    _emit(args, {"ok": run.ok, "files": {k: str(v) for k, v in paths.items()}},
          [*_check_table(run.checks), *(f"wrote {p}" for p in paths.values())])
    return EXIT_OK if run.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simplebraces", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def params_flags(p):
        p.add_argument("--primes", type=_int_list)
        p.add_argument("--exponents", type=_int_list)
        p.add_argument("--multiplicities", type=_int_list)
        p.add_argument("--params-file")
        p.add_argument("--max-order", type=_max_order, default=DEFAULT_MAX_ORDER,
                       help="size guard on the brace order ('none' disables)")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--json", action="store_true", help="machine-readable output")

    def run_flags(p):
        p.add_argument("--control", help="trivial:K, family, or product:A*B instead of the params")
        p.add_argument("--level", choices=sorted(LEVELS), default="full")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out")

    p = sub.add_parser("build", help="construct a family brace and print its invariants")
    params_flags(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run the verification suite")
    params_flags(p)
    run_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("embed", help="synthesize params embedding an abelian group")
    p.add_argument("--group", type=_int_list, required=True, help="cyclic factor orders, e.g. 8,2,5")
    p.add_argument("--multiplicities", type=_int_list, help="override the minimal s_i")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("export-ybe", help="write the associated Yang-Baxter solution as JSON")
    params_flags(p)
    p.add_argument("--control")
    p.add_argument("--out")
    p.add_argument("--table-limit", type=int, default=TABLE_LIMIT)
    p.set_defaults(func=cmd_export_ybe)

    p = sub.add_parser("report", help="verification run written as JSON, CSV and figures")
    params_flags(p)
    run_flags(p)
    p.add_argument("--traces", type=int, default=4, help="closure traces for generators 1..K")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ParamsError, ResidueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
