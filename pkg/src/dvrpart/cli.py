"""Command-line entry point: ``dvrpart <command> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from .enumeration import divisibility_probe, f_e_count, f_e_table, partition_count
from .errors import DvrPartError, PrecisionError
from .invariants import extension_report
from .oracle import (
    abelian_invariants_oracle,
    cached_ring,
    check_eisenstein,
    cyclotomic_eisenstein,
    default_precision,
    lcs_logorders,
    power_subgroup_check,
)
from .partition import Partition, RestrictionParams, format_partition, parse_partition
from .primes import is_prime
from .restriction import cyclotomic_ramification, restrict, restrict_single

COMMANDS = ("restrict", "single", "group-report", "count", "table", "verify", "probe", "cyclopoly")


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    exit_code: int
    payload: str = ""
    diagnostics: str = ""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _partition_arg(text: str) -> Partition:
    try:
        return parse_partition(text)
    except DvrPartError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _prime(text: str) -> int:
    value = _positive(text)
    if not is_prime(value):
        raise argparse.ArgumentTypeError(f"{value} is not prime")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dvrpart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--format", choices=("json", "csv"), default="json")
        return cmd

    cmd = add("restrict", "restricted invariants of an O-module partition")
    cmd.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    cmd.add_argument("--e", type=_positive)
    cmd.add_argument("--d", type=_positive, default=1)
    cmd.add_argument("--p", type=_prime, help="use the cyclotomic ring of p^m (instead of --e)")
    cmd.add_argument("--m", type=_positive, default=1)

    cmd = add("single", "restricted invariants of O/P^n")
    cmd.add_argument("--n", type=_positive, required=True)
    cmd.add_argument("--e", type=_positive, required=True)
    cmd.add_argument("--d", type=_positive, default=1)

    cmd = add("group-report", "lower central series data of the p-group extension")
    cmd.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    cmd.add_argument("--p", type=_prime, required=True)
    cmd.add_argument("--m", type=_positive, default=1)

    cmd = add("count", "f_e(n) and the image partitions")
    cmd.add_argument("--e", type=_positive, required=True)
    cmd.add_argument("--n", type=_positive, required=True)
    cmd.add_argument("--jobs", type=_positive, default=1)

    cmd = add("table", "rows n, p(n), f_e(n), ratio")
    cmd.add_argument("--e", type=_positive, required=True)
    cmd.add_argument("--n-max", type=_positive, required=True)
    cmd.add_argument("--jobs", type=_positive, default=1)
    cmd.add_argument("--cache", type=Path, help="JSON cache file for f_e(n) values")

    cmd = add("probe", "f_e(n) against f_e'(n) for e dividing e'")
    cmd.add_argument("--e", type=_positive, required=True)
    cmd.add_argument("--e-prime", type=_positive, required=True)
    cmd.add_argument("--n-max", type=_positive, required=True)
    cmd.add_argument("--jobs", type=_positive, default=1)
    cmd.add_argument("--cache", type=Path)

    cmd = add("cyclopoly", "coefficients of Phi_{p^m}(X+1), ascending")
    cmd.add_argument("--p", type=_prime, required=True)
    cmd.add_argument("--m", type=_positive, default=1)

    cmd = add("verify", "check the formulas against explicit Smith-form computations")
    cmd.add_argument("--lambda", dest="lam", type=_partition_arg)
    cmd.add_argument("--p", type=_prime)
    cmd.add_argument("--m", type=_positive)
    cmd.add_argument("--e", type=_positive)
    cmd.add_argument("--d", type=_positive, default=1)
    cmd.add_argument("--K", type=_positive)
    cmd.add_argument("--cases", type=Path, help="JSON list of {p, m | d,e, lambda, K?}")
    cmd.add_argument("--seed", type=int, help="generate random cases from this seed")
    cmd.add_argument("--n", type=_positive, default=20, help="number of random cases")
    return parser


def _emit_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _decomposition_out(dec, fmt, extra=None) -> str:
    if fmt == "csv":
        return _emit_csv(["exponent", "multiplicity"], dec.multiplicities.items())
    data = dict(extra or {})
    data.update(dec.to_json())
    data["partition"] = format_partition(dec.partition())
    return _emit_json(data)


def _cmd_restrict(args) -> str:
    if args.p is not None:
        e = cyclotomic_ramification(args.p, args.m)
        if args.e is not None and args.e != e:
            raise UsageError(f"--e {args.e} conflicts with (p-1)p^(m-1) = {e}")
        if args.d != 1:
            raise UsageError("cyclotomic rings have --d 1")
    elif args.e is None:
        raise UsageError("restrict needs --e or --p")
    else:
        e = args.e
    params = RestrictionParams(e=e, d=args.d)
    extra = {"lambda": format_partition(args.lam), "e": e, "d": args.d}
    return _decomposition_out(restrict(args.lam, params), args.format, extra)


def _cmd_single(args) -> str:
    dec = restrict_single(args.n, RestrictionParams(e=args.e, d=args.d))
    return _decomposition_out(dec, args.format, {"n": args.n, "e": args.e, "d": args.d})


def _cmd_group_report(args) -> str:
    report = extension_report(args.lam, args.p, args.m).to_json()
    if args.format == "csv":
        return _emit_csv(["field", "value"],
                         [(k, json.dumps(v)) for k, v in report.items()])
    return _emit_json({"lambda": format_partition(args.lam), "p": args.p, "m": args.m, **report})


def _cmd_count(args) -> str:
    count, images = f_e_count(args.e, args.n, collect=True, jobs=args.jobs)
    if args.format == "csv":
        return _emit_csv(["image"], [[format_partition(im)] for im in images])
    return _emit_json({
        "e": args.e,
        "n": args.n,
        "p_n": partition_count(args.n),
        "f_e_n": count,
        "images": [format_partition(im) for im in images],
    })


def _cmd_table(args) -> str:
    rows = f_e_table(args.e, args.n_max, jobs=args.jobs, cache_path=args.cache)
    if args.format == "csv":
        return _emit_csv(["n", "p_n", "f_e_n", "ratio"],
                         [(r.n, r.p_n, r.f_e_n, r.ratio) for r in rows])
    return _emit_json([r.to_json() for r in rows])


def _cmd_probe(args) -> str:
    try:
        rows = divisibility_probe(args.e, args.e_prime, args.n_max,
                                  jobs=args.jobs, cache_path=args.cache)
    except DvrPartError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "csv":
        return _emit_csv(["n", "f_e", "f_e_prime", "difference", "ratio"],
                         [(r.n, r.f_e, r.f_e_prime, r.difference, r.ratio) for r in rows])
    return _emit_json({"e": args.e, "e_prime": args.e_prime,
                       "rows": [r.to_json() for r in rows]})


def _cmd_cyclopoly(args) -> str:
    coeffs = cyclotomic_eisenstein(args.p, args.m)
    if args.format == "csv":
        return _emit_csv(["degree", "coefficient"], enumerate(coeffs))
    return _emit_json({
        "p": args.p,
        "m": args.m,
        "degree": len(coeffs) - 1,
        "coefficients": coeffs,
        "eisenstein": check_eisenstein(coeffs, args.p, 2),
    })


# -- verify -------------------------------------------------------------------

def _normalize_case(raw: dict) -> dict:
    if not isinstance(raw, dict):
        raise UsageError(f"case must be an object, got {raw!r}")
    try:
        p = int(raw["p"])
        lam_raw = raw["lambda"]
    except (KeyError, TypeError, ValueError):
        raise UsageError(f"case needs 'p' and 'lambda': {raw!r}") from None
    if not is_prime(p):
        raise UsageError(f"case has non-prime p={p}")
    if isinstance(lam_raw, str):
        try:
            lam = parse_partition(lam_raw)
        except DvrPartError as exc:
            raise UsageError(str(exc)) from None
    else:
        lam = Partition.from_parts(int(a) for a in lam_raw)
    case = {"p": p, "lambda": lam, "K": raw.get("K")}
    if raw.get("m") is not None:
        case.update(m=int(raw["m"]), d=1, e=cyclotomic_ramification(p, int(raw["m"])))
    elif raw.get("e") is not None:
        case.update(m=None, d=int(raw.get("d", 1)), e=int(raw["e"]))
    else:
        raise UsageError(f"case needs 'm' or 'e': {raw!r}")
    if not lam:
        raise UsageError("case has an empty partition")
    return case


def _random_cases(seed: int, count: int) -> list[dict]:
    rng = random.Random(seed)
    cases = []
    for _ in range(count):
        size = rng.randint(1, 8)
        parts = []
        while size:
            a = rng.randint(1, size)
            parts.append(a)
            size -= a
        lam = Partition.from_parts(parts[:3])
        if rng.random() < 0.5:
            p, m = rng.choice([(2, 1), (3, 1), (5, 1), (3, 2), (2, 2)])
            cases.append({"p": p, "m": m, "lambda": format_partition(lam)})
        else:
            cases.append({"p": rng.choice([2, 3, 5]), "d": rng.randint(1, 2),
                          "e": rng.randint(1, 3), "lambda": format_partition(lam)})
    return cases


def verify_case(case: dict) -> dict:
    """Run every oracle check for one normalized case; returns a report dict."""
    p, d, e, m, lam = case["p"], case["d"], case["e"], case["m"], case["lambda"]
    K = case["K"] or default_precision(lam, e)
    ring = cached_ring(p, K, d=d, e=None if m else e, m=m)
    formula = restrict(lam, RestrictionParams(e=e, d=d)).partition()
    oracle = abelian_invariants_oracle(ring, lam)
    checks = {"abelian_invariants": formula == oracle}

    L = lcs_logorders(ring, lam, lam[0])
    ranks = [L[j - 1] - L[j] for j in range(1, lam[0] + 1)]
    expected = [d * sum(1 for n in lam if n >= j) for j in range(1, lam[0] + 1)]
    checks["lcs_ranks"] = ranks == expected and L[-1] == 0
    checks["order"] = L[0] == d * lam.size

    for n in (1, 2):
        big = cached_ring(p, max(K, default_precision(lam, e) + n), d=d,
                          e=None if m else e, m=m)
        checks[f"power_subgroup_{n}"] = power_subgroup_check(big, lam, n)
    return {
        "p": p,
        "m": m,
        "d": d,
        "e": e,
        "K": K,
        "lambda": format_partition(lam),
        "formula": format_partition(formula),
        "oracle": format_partition(oracle),
        "lcs_ranks": ranks,
        "checks": checks,
        "pass": all(checks.values()),
    }


def _cmd_verify(args) -> tuple[str, int]:
    if args.cases is not None:
        try:
            raw_cases = json.loads(args.cases.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read cases: {exc}") from None
        if not isinstance(raw_cases, list):
            raise UsageError("cases file must hold a JSON list")
    elif args.lam is not None:
        if args.p is None:
            raise UsageError("verify --lambda needs --p")
        raw = {"p": args.p, "lambda": list(args.lam), "K": args.K}
        if args.e is not None and args.m is None:
            raw.update(e=args.e, d=args.d)
        else:
            raw["m"] = args.m or 1
        raw_cases = [raw]
    elif args.seed is not None:
        raw_cases = _random_cases(args.seed, args.n)
    else:
        raise UsageError("verify needs --lambda, --cases or --seed")

    results = []
    for raw in raw_cases:
        case = _normalize_case(raw)
        try:
            results.append(verify_case(case))
        except PrecisionError as exc:
            results.append({"lambda": format_partition(case["lambda"]), "p": case["p"],
                            "error": str(exc), "pass": False})
    failed = sum(1 for r in results if not r["pass"])
    summary = {"cases": len(results), "passed": len(results) - failed, "failed": failed}
    if args.format == "csv":
        rows = [(r.get("p"), r.get("m"), r.get("d"), r.get("e"), r.get("K"), r["lambda"],
                 r.get("formula", ""), r.get("oracle", ""), "pass" if r["pass"] else "fail")
                for r in results]
        text = _emit_csv(["p", "m", "d", "e", "K", "lambda", "formula", "oracle", "status"], rows)
    else:
        text = _emit_json({"results": results, "summary": summary})
    return text, 1 if failed else 0


_HANDLERS = {
    "restrict": _cmd_restrict,
    "single": _cmd_single,
    "group-report": _cmd_group_report,
    "count": _cmd_count,
    "table": _cmd_table,
    "probe": _cmd_probe,
    "cyclopoly": _cmd_cyclopoly,
}


def execute(argv: list[str]) -> CommandResult:
    """Run one command without touching the process streams."""
    parser = build_parser()
    out, err = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except UsageError as exc:
        return CommandResult(2, "", f"{parser.format_usage()}dvrpart: error: {exc}\n")
    except SystemExit as exc:
        # --help and friends
        return CommandResult(int(exc.code or 0), out.getvalue(), err.getvalue())

    try:
        if args.command == "verify":
            payload, code = _cmd_verify(args)
            diag = "" if code == 0 else "verification failed\n"
            return CommandResult(code, payload, diag)
        return CommandResult(0, _HANDLERS[args.command](args), "")
    except UsageError as exc:
        return CommandResult(2, "", f"{parser.format_usage()}dvrpart: error: {exc}\n")
    except DvrPartError as exc:
        return CommandResult(2, "", f"dvrpart: error: {exc}\n")


def main(argv: list[str] | None = None) -> int:
    result = execute(sys.argv[1:] if argv is None else argv)
    if result.payload:
        sys.stdout.write(result.payload)
    if result.diagnostics:
        sys.stderr.write(result.diagnostics)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
