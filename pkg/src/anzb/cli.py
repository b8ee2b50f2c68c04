"""Command-line interface: verify, bounds, sweep, explicit-formula."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass

import mpmath

from anzb import bounds as bd
from anzb import claims as cl
from anzb import extremal as ex
from anzb.errors import AnzbError, DataError, DomainError
from anzb.explicit import ENV_ZEROS, gw_reconcile, load_zeros, zeros_path_from_env

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATED = 2
EXIT_INCONCLUSIVE = 3
EXIT_DATA = 4

OUTPUTS = ("human", "json", "csv")


class UsageError(Exception):
    """Invalid command-line input."""


@dataclass(frozen=True)
class CliConfig:
    """Validated settings shared by all subcommands."""

    precision_bits: int = 128
    zeros_path: str | None = None
    sieve_limit: int = 10**8
    output: str = "human"

    def __post_init__(self):
        if self.precision_bits < 64:
            raise UsageError("--precision must be at least 64")
        if self.sieve_limit < cl.MIN_SIEVE:
            raise UsageError(f"--sieve-limit must be at least {cl.MIN_SIEVE}")
        if self.output not in OUTPUTS:
            raise UsageError(f"--output must be one of {', '.join(OUTPUTS)}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        zeros = args.zeros if args.zeros else zeros_path_from_env()
        return cls(args.precision, zeros, args.sieve_limit, args.output)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_like(text: str) -> int:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v != int(v):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def _height(text: str) -> str:
    """Heights are kept as text so that e^18 and 1e40 survive exactly."""
    try:
        t = bd._as_mpf(text)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"not a height: {text!r}") from None
    if not t > mpmath.e:
        raise argparse.ArgumentTypeError(f"height must exceed e, got {text}")
    return text


def _methods(text: str) -> tuple[str, ...]:
    if text in ("", "none"):
        return ()
    if text == "all":
        return bd.EMPIRICAL_METHODS
    items = tuple(x.strip() for x in text.split(",") if x.strip())
    bad = [m for m in items if m not in bd.EMPIRICAL_METHODS]
    if bad:
        raise argparse.ArgumentTypeError(
            f"unknown method(s) {', '.join(bad)}; choose from {', '.join(bd.EMPIRICAL_METHODS)} or all")
    return items


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--precision", type=int, default=128, help="working precision in bits (at least 64)")
    g.add_argument("--zeros", default=None,
                   help=f"zero ordinate file; falls back to ${ENV_ZEROS}, then to none")
    g.add_argument("--sieve-limit", type=_int_like, default=10**8,
                   help="largest n sieved for von Mangoldt tables")
    g.add_argument("--output", choices=OUTPUTS, default="human", help="report format on stdout")

    p = _Parser(prog="anzb", description="Certified numerics for explicit bounds on zeta(1+it).",
                formatter_class=fmt,
                epilog="exit codes: 0 ok, 1 usage, 2 violated, 3 inconclusive only, 4 data error")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], formatter_class=fmt,
                       help="run the claim ledger", description="Certify the catalogued numerical claims.")
    v.add_argument("--claims", default="all", help="comma separated claim ids such as C1,C7, or all")
    v.add_argument("--max-precision", type=int, default=1024, help="precision ceiling for escalation")
    v.add_argument("--budget", type=int, default=200_000, help="box budget per optimisation")
    v.add_argument("--jobs", type=int, default=1, help="claims run in parallel")
    v.add_argument("--timings", action="store_true", default=False, help="record runtime_ms per claim")
    v.add_argument("--json-out", default=None, help="also write the JSON report to this path")

    b = sub.add_parser("bounds", parents=[common], formatter_class=fmt,
                       help="evaluate the bounds at one height", description="Evaluate all bounds at one height.")
    b.add_argument("--t", type=_height, required=True, help="height, e.g. 1e30 or e^18 (required)")
    b.add_argument("--compare-prior", action="store_true", default=False, help="include earlier bounds")
    b.add_argument("--sharp", action="store_true", default=False, help="use unrounded proof constants")
    b.add_argument("--empirical", type=_methods, default="none",
                   help=f"comma separated subset of {', '.join(bd.EMPIRICAL_METHODS)}, or all")
    b.add_argument("--height-cap", type=float, default=bd.EMPIRICAL_HEIGHT_CAP,
                   help="largest height with empirical evaluation")

    s = sub.add_parser("sweep", parents=[common], formatter_class=fmt,
                       help="tabulate bounds over a range of heights", description="Tabulate bounds as CSV.")
    s.add_argument("--t-min", type=_height, required=True, help="smallest height (required)")
    s.add_argument("--t-max", type=_height, required=True, help="largest height (required)")
    s.add_argument("--points", type=int, default=20, help="number of heights (at least 1)")
    s.add_argument("--log-spaced", action=argparse.BooleanOptionalAction, default=True,
                   help="space heights evenly in log t")
    s.add_argument("--empirical", type=_methods, default="none",
                   help=f"comma separated subset of {', '.join(bd.EMPIRICAL_METHODS)}, or all")
    s.add_argument("--sharp", action="store_true", default=False, help="use unrounded proof constants")
    s.add_argument("--height-cap", type=float, default=bd.EMPIRICAL_HEIGHT_CAP,
                   help="largest height with empirical evaluation")
    s.add_argument("--jobs", type=int, default=1, help="heights evaluated in parallel")
    s.add_argument("--out", default="-", help="CSV destination, - for stdout")

    e = sub.add_parser("explicit-formula", parents=[common], formatter_class=fmt,
                       help="reconcile the explicit formula with a zero table",
                       description="Compare both sides of the explicit formula for the extremal kernels.")
    e.add_argument("--delta", type=float, default=0.7, help="bandwidth Delta (at least 1/2)")
    e.add_argument("--t", type=float, default=50.0, help="shift t (positive)")
    e.add_argument("--sign", choices=("+", "-", "both"), default="both", help="majorant, minorant or both")
    e.add_argument("--quad-tol", type=float, default=1e-6, help="quadrature tolerance added to the budget")
    return p


# -- subcommands -----------------------------------------------------------


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_verify(args, cfg: CliConfig) -> int:
    try:
        ids = cl.parse_filter(None if args.claims == "all" else args.claims)
        options = cl.ClaimOptions(cfg.precision_bits, args.max_precision, args.budget, args.timings,
                                  cfg.sieve_limit)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    run = cl.run_all(",".join(ids), options, args.jobs)
    doc = run.to_dict()
    if args.json_out:
        _write(_dumps(doc), args.json_out)
    if cfg.output == "json":
        _write(_dumps(doc), None)
    elif cfg.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cols = list(cl.ClaimReport.FIELDS)
        w.writerow(cols)
        for r in doc["claims"]:
            w.writerow(["" if r[c] is None else r[c] for c in cols])
        _write(buf.getvalue(), None)
    else:
        for r in run.reports:
            enc = "n/a" if r.computed_lo is None else f"[{r.computed_lo:.10g}, {r.computed_hi:.10g}]"
            margin = "n/a" if r.margin is None else f"{r.margin:.3e}"
            print(f"{r.id:<4s} {r.verdict:<12s} computed {enc:<36s} asserted {r.asserted:<22s} margin {margin}")
            for c in r.checks:
                if c.status != cl.VERIFIED:
                    print(f"       {c.status}: {c.name}: {c.detail}")
        s = run.summary
        print(f"{s[cl.VERIFIED]}/{len(run.reports)} verified, {s[cl.VIOLATED]} violated, "
              f"{s[cl.INCONCLUSIVE]} inconclusive")
    if run.summary[cl.VIOLATED]:
        return EXIT_VIOLATED
    if run.summary[cl.INCONCLUSIVE]:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _constants(args) -> bd.BoundConstants:
    return bd.BoundConstants.sharp() if args.sharp else bd.STATED


def cmd_bounds(args, cfg: CliConfig) -> int:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", bd.BelowThresholdWarning)
        rep = bd.report_at(args.t, args.empirical, constants=_constants(args), prec=cfg.precision_bits,
                           height_cap=args.height_cap)
    t = bd._as_mpf(args.t)
    shown = [b for b in bd.ALL_BOUNDS if args.compare_prior or b not in bd.PRIOR_BOUNDS]
    if cfg.output == "csv":
        _write(bd.write_csv([rep]), None)
    elif cfg.output == "json":
        doc = {
            "t": args.t,
            "log_t": rep.log_t,
            "loglog_t": rep.loglog_t,
            "bounds": {b.value: rep.bounds[b.value] for b in shown},
            "below_threshold": [b.value for b in shown if t < b.threshold],
            "empirical": {k: {"value": float(v.value), "err": v.err} for k, v in rep.empirical.items()},
            "flags": rep.flags,
            "errors": rep.errors,
        }
        _write(_dumps(doc), None)
    else:
        print(f"t = {args.t}   log t = {rep.log_t:.10g}   log log t = {rep.loglog_t:.10g}")
        for b in shown:
            note = f"   (asserted for t >= {mpmath.nstr(b.threshold, 6)}; below threshold)" if t < b.threshold else ""
            print(f"  {b.value:<12s} {rep.bounds[b.value]:.10f}{note}")
        for k, v in rep.empirical.items():
            print(f"  emp_{k:<16s} {float(v.value):.10f} +/- {v.err:.2e}")
        for k, v in rep.flags.items():
            print(f"  flag {k}: {v}")
        for err in rep.errors:
            print(f"  error: {err}")
    return EXIT_VIOLATED if rep.violations else EXIT_OK


def cmd_sweep(args, cfg: CliConfig) -> int:
    if args.points < 1:
        raise UsageError("--points must be at least 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    t_min, t_max = float(bd._as_mpf(args.t_min)), float(bd._as_mpf(args.t_max))
    if t_min > t_max:
        raise UsageError("--t-min must not exceed --t-max")
    ts = bd.sample_heights(t_min, t_max, args.points, args.log_spaced)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", bd.BelowThresholdWarning)
        reports = bd.empirical_sweep(ts, args.empirical, constants=_constants(args), prec=cfg.precision_bits,
                                     height_cap=args.height_cap, parallelism=args.jobs)
    _write(bd.write_csv(reports), args.out)
    if args.out not in (None, "-") and cfg.output == "human":
        bad = sum(1 for r in reports if r.violations)
        print(f"wrote {len(reports)} rows to {args.out}; {bad} with violations")
    return EXIT_VIOLATED if any(r.violations for r in reports) else EXIT_OK


def cmd_explicit_formula(args, cfg: CliConfig) -> int:
    if args.delta < 0.5:
        raise UsageError("--delta must be at least 1/2")
    if not args.t > 0:
        raise UsageError("--t must be positive")
    if cfg.zeros_path is None:
        raise DataError(f"no zero table: pass --zeros or set {ENV_ZEROS}")
    table = load_zeros(cfg.zeros_path)
    signs = ("+", "-") if args.sign == "both" else (args.sign,)
    results = [gw_reconcile(ex.ExtremalParams(args.delta, s), args.t, table, args.quad_tol) for s in signs]
    if cfg.output == "json":
        doc = [{
            "label": r.label,
            "verdict": r.verdict,
            "lhs": float(r.lhs.value),
            "rhs": float(r.rhs.value),
            "gap": r.gap,
            "allowance": r.allowance,
            "budget": r.itemized(),
        } for r in results]
        _write(_dumps(doc), None)
    else:
        for r in results:
            print(r.summary())
    return EXIT_OK if all(r.consistent for r in results) else EXIT_VIOLATED


COMMANDS = {
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "sweep": cmd_sweep,
    "explicit-formula": cmd_explicit_formula,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = CliConfig.from_args(args)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"anzb {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"anzb {args.command}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DomainError as exc:
        print(f"anzb {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AnzbError as exc:
        print(f"anzb {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
