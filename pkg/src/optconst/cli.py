"""Command-line front end.

Slot numbers on the command line are 1-based (``--slots 2``, ``--sigma 2,1``,
``--variant 1`` for the identity ordering); the library API is 0-based.
Exit codes: 0 success or pass, 1 verification failure, 2 usage or domain
error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import data
from ._grid import default_budget
from .acceptance import AcceptanceConfig, run_acceptance
from .constants import ConstantQuery, Family, evaluate
from .errors import DomainError, NumericError, ResourceLimitError, UsageError
from .norms import grid_norm, mixed_grid_norm, norm_bounds
from .special import pair_moment_quadrature, solve_critical, steinhaus_pair_moment
from .steinhaus import discrete_average, mc_average
from .tensor import ComplexTensor, MixedNormSpec, mixed_norm, parse_exponent
from .verify import (
    REPORT_COLUMNS,
    VerificationReport,
    _plain,
    check_hl_exponents,
    verify_mixed_littlewood,
    verify_multiple_khinchine,
    verify_theorem_pra,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    budget: int
    seed: int = 0
    samples: int = 1_000_000
    tolerance: float = 1e-9
    output_format: str = "json"
    threads: int = 0

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise UsageError("--budget must be >= 1")
        if self.samples < 2:
            raise UsageError("--samples must be >= 2")
        if not self.tolerance > 0:
            raise UsageError("--tolerance must be > 0")
        if self.threads < 0:
            raise UsageError("--threads must be >= 0")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _exponent(text: str) -> float:
    try:
        return parse_exponent(text)
    except (ValueError, DomainError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _exponents(text: str) -> tuple[float, ...]:
    return tuple(_exponent(v) for v in text.split(","))


def _slots(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) - 1 for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated slot numbers, got {text!r}") from None
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("slot numbers start at 1")
    return values


def _common_flags() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand.
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--budget", type=lambda s: int(float(s)), default=argparse.SUPPRESS,
                   help="max enumerated grid points (default 1e8, or $OPTCONST_BUDGET)")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="Monte Carlo seed (default 0)")
    g.add_argument("--samples", type=lambda s: int(float(s)), default=argparse.SUPPRESS,
                   help="Monte Carlo samples (default 1e6)")
    g.add_argument("--tolerance", type=float, default=argparse.SUPPRESS, help="relative slack (default 1e-9)")
    g.add_argument("--format", dest="output_format", choices=("json", "csv"), default=argparse.SUPPRESS)
    g.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker threads, 0 = auto")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(prog="optconst", description=__doc__.splitlines()[0], parents=[common], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("constants", parents=[common], allow_abbrev=False, help="look up an optimal constant")
    p.add_argument("--family", required=True, help=", ".join(f.value.replace("_", "-") for f in Family))
    p.add_argument("--p", type=_exponent, default=math.inf)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--field", choices=("real", "complex"), default="complex")
    p.add_argument("--case", dest="case_id", choices=("i", "ii", "iii", "iv"))

    p = sub.add_parser("critical", parents=[common], allow_abbrev=False, help="critical exponents p0, p1, alpha")
    p.add_argument("--which", choices=("p0", "p1", "alpha", "all"), default="all")

    p = sub.add_parser("moment", parents=[common], allow_abbrev=False, help="Steinhaus moments")
    p.add_argument("--p", type=_exponent, required=True)
    p.add_argument("--tensor", help="coefficient JSON; omit for the pair moment E|e1+e2|^p")
    p.add_argument("--M", type=int, help="grid size for the exact discrete average")
    p.add_argument("--mc", action="store_true", help="Monte Carlo on the continuous torus")

    p = sub.add_parser("grid-norm", parents=[common], allow_abbrev=False, help="grid norm and certified sandwich")
    p.add_argument("--tensor", required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--slots", type=_slots, help="grid slots A (1-based), default all")
    p.add_argument("--domain", type=_exponents, help="domain exponents p_1,...,p_m (default all inf)")

    p = sub.add_parser("mixed-norm", parents=[common], allow_abbrev=False, help="nested mixed sequence norm of the coefficients")
    p.add_argument("--tensor", required=True)
    p.add_argument("--t", type=_exponents, required=True, help="exponent per nesting level, outermost first")
    p.add_argument("--sigma", type=_slots, help="slot per nesting level (1-based), default identity")

    p = sub.add_parser("verify-khinchine", parents=[common], allow_abbrev=False, help="multiple Khinchine inequality")
    p.add_argument("--tensor", required=True)
    p.add_argument("--p", type=_exponent, required=True)
    p.add_argument("--mode", choices=("discrete", "monte_carlo", "mc"), default="discrete")
    p.add_argument("--M", type=int, default=8)

    p = sub.add_parser("verify-littlewood", parents=[common], allow_abbrev=False, help="mixed Littlewood inequality")
    p.add_argument("--tensor", required=True)
    p.add_argument("--p", type=_exponent, required=True)
    p.add_argument("--variant", type=int, default=1, help="1 = identity, j = swap slots 1 and j")
    p.add_argument("--M", type=int, default=8)

    p = sub.add_parser("verify-pra", parents=[common], allow_abbrev=False, help="(lambda, 2, ..., 2) inequality")
    p.add_argument("--tensor", required=True)
    p.add_argument("--p", type=_exponents, required=True, help="domain exponents p_1,...,p_m")
    p.add_argument("--M", type=int, default=8)

    p = sub.add_parser("hl-check", parents=[common], allow_abbrev=False, help="Hardy-Littlewood exponent admissibility")
    p.add_argument("--p", type=_exponents, required=True)
    p.add_argument("--t", type=_exponents, required=True)

    p = sub.add_parser("report", parents=[common], allow_abbrev=False, help="run the acceptance suite")
    p.add_argument("--criteria", type=lambda s: [int(v) for v in s.split(",")], help="subset, e.g. 1,2,10")
    return parser


def load_tensor(spec: str, stdin=None) -> ComplexTensor:
    """Read a tensor from a JSON file, ``-`` (standard input) or a bundled name."""
    if spec == "-":
        text = (stdin or sys.stdin).read()
    else:
        path = Path(spec)
        if not path.exists():
            name = path.name.removesuffix(".json")
            if name in data.NAMED:
                return data.NAMED[name]()
            raise UsageError(f"tensor file not found: {spec}")
        text = path.read_text()
    try:
        return ComplexTensor.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad tensor JSON in {spec}: {exc}") from None


def _emit(records: list[dict], fmt: str, out, columns: Sequence[str] | None = None) -> None:
    if fmt == "json":
        for r in records:
            out.write(json.dumps(_plain(r)) + "\n")
        return
    columns = list(columns or records[0].keys())
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for r in records:
        row = []
        for c in columns:
            v = _plain(r.get(c, ""))
            row.append(json.dumps(v) if isinstance(v, (dict, list)) else v)
        writer.writerow(row)


def _emit_report(report: VerificationReport, fmt: str, out) -> int:
    if fmt == "json":
        out.write(report.to_json() + "\n")
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        writer.writerow(report.to_csv_row())
    return EXIT_OK if report.verdict != "fail" else EXIT_FAIL


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        budget=getattr(args, "budget", None) or default_budget(),
        seed=getattr(args, "seed", 0),
        samples=getattr(args, "samples", 1_000_000),
        tolerance=getattr(args, "tolerance", 1e-9),
        output_format=getattr(args, "output_format", "json"),
        threads=getattr(args, "threads", 0),
    )


def _dispatch(args: argparse.Namespace, cfg: RunConfig, out, err) -> int:
    fmt = cfg.output_format
    kw = {"budget": cfg.budget, "threads": cfg.threads}
    cmd = args.command
    if cmd == "constants":
        q = ConstantQuery(args.family, args.p, args.m, args.field, args.case_id)
        v = evaluate(q)
        _emit([{"family": q.family.value, "p": q.p, "m": q.m, "field": q.field.value, **v.to_dict()}], fmt, out)
        return EXIT_OK
    if cmd == "critical":
        names = ("p0", "p1", "alpha") if args.which == "all" else (args.which,)
        rows = []
        for name in names:
            r = solve_critical(name)
            rows.append({"name": name, "value": r.root, "residual": r.residual,
                         "iterations": r.iterations, "bracket": list(r.bracket)})
        _emit(rows, fmt, out)
        return EXIT_OK
    if cmd == "moment":
        if args.tensor is None:
            if math.isinf(args.p):
                raise DomainError("the pair moment needs a finite p")
            row = {"kind": "pair", "p": args.p, "closed_form": steinhaus_pair_moment(args.p),
                   "quadrature": pair_moment_quadrature(args.p)}
        else:
            T = load_tensor(args.tensor)
            if args.mc:
                est = mc_average(T, args.p, cfg.samples, cfg.seed, threads=cfg.threads)
                row = {"kind": "monte_carlo", "p": args.p, "value": est.mean, "std_error": est.std_error,
                       "samples": est.samples, "seed": est.seed}
            elif args.M is not None:
                row = {"kind": "discrete", "p": args.p, "M": args.M, "value": discrete_average(T, args.M, args.p, **kw)}
            else:
                raise UsageError("moment with --tensor needs --M or --mc")
        _emit([row], fmt, out)
        return EXIT_OK
    if cmd == "grid-norm":
        T = load_tensor(args.tensor)
        A = args.slots if args.slots is not None else tuple(range(T.m))
        if len(A) == T.m and args.domain is None:
            value = grid_norm(T, args.M, **kw)
        else:
            value = mixed_grid_norm(T, A, args.M, args.domain, **kw)
        row = {"M": args.M, "slots": [a + 1 for a in sorted(A)], "grid_norm": value}
        if args.M >= 3:
            b = norm_bounds(T, A, args.M, args.domain, **kw)
            row.update(lower=b.lower, upper=b.upper, method=b.method)
        _emit([row], fmt, out)
        return EXIT_OK
    if cmd == "mixed-norm":
        T = load_tensor(args.tensor)
        sigma = args.sigma if args.sigma is not None else tuple(range(len(args.t)))
        spec = MixedNormSpec(sigma, args.t)
        _emit([{"sigma": [s + 1 for s in spec.sigma], "t": list(spec.t), "value": mixed_norm(T, spec)}], fmt, out)
        return EXIT_OK
    if cmd == "verify-khinchine":
        T = load_tensor(args.tensor)
        mode = "monte_carlo" if args.mode in ("mc", "monte_carlo") else "discrete"
        r = verify_multiple_khinchine(T, args.p, mode, M=args.M, samples=cfg.samples, seed=cfg.seed,
                                      tolerance=cfg.tolerance, **kw)
        return _emit_report(r, fmt, out)
    if cmd == "verify-littlewood":
        T = load_tensor(args.tensor)
        if not 1 <= args.variant <= T.m:
            raise UsageError(f"--variant must lie in 1..{T.m}")
        r = verify_mixed_littlewood(T, args.p, args.variant - 1, args.M, tolerance=cfg.tolerance, **kw)
        return _emit_report(r, fmt, out)
    if cmd == "verify-pra":
        T = load_tensor(args.tensor)
        return _emit_report(verify_theorem_pra(T, args.p, args.M, tolerance=cfg.tolerance, **kw), fmt, out)
    if cmd == "hl-check":
        v = check_hl_exponents(args.p, args.t)
        _emit([{"admissible": v.admissible, "sum_inv_p": v.sum_inv_p, "sum_inv_t": v.sum_inv_t,
                "bound": v.bound, "t_range": list(v.t_range), "violations": list(v.violations)}], fmt, out)
        return EXIT_OK if v.admissible else EXIT_FAIL
    if cmd == "report":
        acfg = AcceptanceConfig(cfg.seed, cfg.samples, cfg.threads, cfg.budget)
        results = run_acceptance(acfg, args.criteria)
        rows = [json.loads(r.payload_json()) for r in results]
        _emit(rows, fmt, out, ("criterion", "name", "passed", "details"))
        # Timing goes to stderr so that standard output stays reproducible.
        for r in results:
            err.write(r.summary() + "\n")
        return EXIT_OK if all(r.passed and r.within_time for r in results) else EXIT_FAIL
    raise UsageError(f"unknown command {cmd!r}")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args)
        return _dispatch(args, cfg, out, err)
    except ResourceLimitError as exc:
        err.write(f"optconst: resource limit: {exc}\n")
        return EXIT_RESOURCE
    except (UsageError, DomainError) as exc:
        err.write(f"optconst: error: {exc}\n")
        return EXIT_USAGE
    except NumericError as exc:
        err.write(f"optconst: numeric failure: {exc}\n")
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
