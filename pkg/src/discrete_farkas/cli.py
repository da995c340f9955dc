"""Command-line interface.

Every command reads an instance file, prints one JSON report on stdout and
exits with 0 (feasible / success), 1 (infeasible) or 2 (bad input or usage).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from .certificate import eval_check, random_point, verify
from .core import FarkasError, Instance, InstanceError, Mode
from .lift import EmptyRelaxation, build_lifted, check_general
from .lp_build import DEFAULT_MAX_ROWS, LpDims, dims, degree_bound, pruned_rows
from .oracle import box_bounds, box_volume, count_series, enumerate_solutions
from .pipeline import check

EXIT_FEASIBLE, EXIT_INFEASIBLE, EXIT_USAGE = 0, 1, 2
CROSS_CHECK_VOLUME = 10**6
EVAL_POINTS = 20


class UsageError(Exception):
    pass


def frac(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def load_instance(path: str, general: bool) -> Instance:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict) or "A" not in data or "b" not in data:
        raise UsageError(f"{path}: expected an object with keys A and b")
    A, b = data["A"], data["b"]
    if not isinstance(A, list) or not all(isinstance(r, list) for r in A) or not isinstance(b, list):
        raise UsageError(f"{path}: A must be a list of rows and b a list")
    for v in [*b, *(v for r in A for v in r)]:
        if not isinstance(v, int) or isinstance(v, bool):
            raise UsageError(f"{path}: non-integer entry {v!r}")
    m, n = data.get("m", len(A)), data.get("n", len(A[0]) if A else 0)
    if len(A) != m or any(len(r) != n for r in A) or len(b) != m:
        raise UsageError(f"{path}: shapes do not match m={m}, n={n}")
    negative = any(v < 0 for r in A for v in r) or any(v < 0 for v in b)
    declared = data.get("mode")
    if declared not in (None, "nonneg", "general"):
        raise UsageError(f"{path}: unknown mode {declared!r}")
    if not general and (negative or declared == "general"):
        raise UsageError(f"{path}: negative entries or mode 'general' require --general")
    try:
        return Instance(A, b, Mode.GENERAL if general else Mode.NONNEG)
    except InstanceError as exc:
        raise UsageError(f"{path}: {exc}") from None


def dims_json(d: LpDims | None):
    if d is None:
        return None
    return {"vars": d.num_vars, "rows": d.num_rows, "b_star": d.degree_bound_used}


def _decide(args, inst):
    if args.general:
        v, lifted = check_general(inst, pruned=not args.full, max_rows=args.max_rows)
        return v, lifted
    return check(inst, pruned=not args.full, max_rows=args.max_rows), None


def _base_report(args, v, lifted, t0):
    return {
        "verdict": "feasible" if v.feasible else "infeasible",
        "lp_mode": "full" if args.full else "pruned",
        "lifted": lifted is not None,
        "lp_dims": dims_json(v.lp_dims),
        "formula_dims": dims_json(v.formula_dims),
        "short_circuit": v.short_circuit,
        "time": round(time.perf_counter() - t0, 6),
    }


def _evidence(v):
    if v.evidence is not None:
        nz = [u for u in v.evidence if u]
        return {
            "kind": "farkas multipliers",
            "rows": len(v.evidence),
            "nonzeros": len(nz),
            "multipliers": [frac(u) for u in v.evidence] if len(v.evidence) <= 50 else None,
        }
    if v.short_circuit == "b*<0":
        return {"kind": "degree", "detail": f"b* = {v.b_star} < 0: every x != 0 overshoots sum(b)"}
    return {"kind": "short circuit", "detail": v.short_circuit}


def cmd_check(args) -> int:
    inst = load_instance(args.instance, args.general)
    t0 = time.perf_counter()
    v, lifted = _decide(args, inst)
    _emit(_base_report(args, v, lifted, t0))
    return EXIT_FEASIBLE if v.feasible else EXIT_INFEASIBLE


def cmd_certify(args) -> int:
    inst = load_instance(args.instance, args.general)
    t0 = time.perf_counter()
    v, lifted = _decide(args, inst)
    report = _base_report(args, v, lifted, t0)
    if not v.feasible:
        report["evidence"] = _evidence(v)
        _emit(report)
        return EXIT_INFEASIBLE
    cert_inst = lifted.instance() if lifted is not None else inst
    cert = v.certificate
    res = verify(cert_inst, cert)
    rng = random.Random(args.seed)
    evals = [eval_check(cert_inst, cert, random_point(cert_inst.m, rng)) for _ in range(EVAL_POINTS)]
    report.update(
        verify="Valid" if res else f"Invalid: {res.reason}",
        max_degree=cert.max_degree(),
        degree_bound=cert.degree_bound_used,
        term_counts=cert.term_counts(),
        eval_checks={"points": len(evals), "passed": sum(bool(e) for e in evals), "seed": args.seed},
        witness=list(v.witness),
    )
    payload = cert.to_json()
    if lifted is not None:
        payload["lifted"] = True
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=1) + "\n")
        report["certificate_file"] = args.out
    else:
        report["certificate"] = payload
    _emit(report)
    return EXIT_FEASIBLE if res else EXIT_USAGE


def cmd_witness(args) -> int:
    inst = load_instance(args.instance, args.general)
    t0 = time.perf_counter()
    v, lifted = _decide(args, inst)
    report = _base_report(args, v, lifted, t0)
    if v.feasible:
        assert inst.is_solution(v.witness)
        report["x"] = list(v.witness)
        report["Ax_equals_b"] = True
    _emit(report)
    return EXIT_FEASIBLE if v.feasible else EXIT_INFEASIBLE


def cmd_count(args) -> int:
    inst = load_instance(args.instance, args.general)
    report = {}
    bounds = box_bounds(inst)
    if inst.mode is Mode.NONNEG:
        report["count"] = count_series(inst)
        report["method"] = "series"
    else:
        report["method"] = "enumeration"
    vol = box_volume(bounds)
    report["box_volume"] = vol
    if vol <= CROSS_CHECK_VOLUME:
        enum = enumerate_solutions(inst, cap=0, bounds=bounds).count
        if "count" in report:
            report["cross_check"] = enum == report["count"]
            if enum != report["count"]:
                _emit(report)
                return EXIT_USAGE
        report["count"] = enum
    elif "count" not in report:
        raise UsageError(f"enumeration box has {vol} points (limit {CROSS_CHECK_VOLUME})")
    _emit(report)
    return EXIT_FEASIBLE


def cmd_dims(args) -> int:
    inst = load_instance(args.instance, args.general)
    report = {"lifted": bool(args.general)}
    if args.general:
        try:
            inst = build_lifted(inst).instance()
        except EmptyRelaxation:
            report["short_circuit"] = "empty relaxation"
            _emit(report)
            return EXIT_INFEASIBLE
    if not any(inst.b):
        report["short_circuit"] = "b=0"
    else:
        bstar = degree_bound(inst)
        report["b_star"] = bstar
        if bstar < 0:
            report["short_circuit"] = "b*<0"
        else:
            d = dims(inst)
            report.update(
                vars=d.num_vars,
                rows=d.num_rows,
                pruned_rows=pruned_rows(inst),
            )
    _emit(report)
    return EXIT_FEASIBLE


def cmd_lift(args) -> int:
    inst = load_instance(args.instance, True)
    try:
        lifted = build_lifted(inst)
    except EmptyRelaxation:
        _emit({"empty_relaxation": True})
        return EXIT_INFEASIBLE
    _emit(lifted.to_json())
    return EXIT_FEASIBLE


def _emit(obj) -> None:
    print(json.dumps(obj))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discrete-farkas",
        description="Decide Ax = b over the nonnegative integers with polynomial certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    handlers = {
        "check": (cmd_check, "decide feasibility"),
        "certify": (cmd_certify, "emit and verify a certificate"),
        "witness": (cmd_witness, "print an integer solution"),
        "count": (cmd_count, "count the integer solutions"),
        "dims": (cmd_dims, "report LP dimensions"),
        "lift": (cmd_lift, "print the lifted nonnegative instance"),
    }
    for name, (fn, helptext) in handlers.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("instance", help="instance JSON file")
        g = p.add_mutually_exclusive_group()
        g.add_argument("--pruned", dest="full", action="store_false", help="box-restricted LP (default)")
        g.add_argument("--full", dest="full", action="store_true", help="LP over all degrees <= b*")
        p.add_argument("--general", action="store_true", help="allow negative entries (lifted path)")
        p.add_argument("--out", help="certificate output file (certify)")
        p.add_argument("--seed", type=int, default=0, help="seed for random evaluation points")
        p.add_argument("--max-rows", type=int, default=DEFAULT_MAX_ROWS, help="LP row budget")
        p.set_defaults(func=fn, full=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, FarkasError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
