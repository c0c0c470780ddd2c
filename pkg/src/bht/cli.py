"""Command-line front end.

Exit codes: 0 success, 1 validation failures, 2 usage error, 3 domain error
(bad model, support mismatch, ...), 4 infeasible or not found.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import __version__, kernels
from .bounds import bounds_for_epsilon, check_abstract_measures, gap, strassen_exponent
from .css import CssQuery, css_sweep
from .distributions import nakagawa_exponent, synthesize_pair
from .errors import DomainError, InfeasibleError
from .exact_np import beta_exact
from .montecarlo import McConfig, estimate_beta
from .schedules import STANDARD_SCHEDULES, EpsilonSchedule, epsilon_at, parse_schedule_list
from .serialize import (
    RunManifest,
    csv_text,
    dumps,
    fmt,
    fmt_log10,
    fmt_logvalue,
    model_doc,
    model_hash,
    read_model,
)
from .validation import concentration_suite, sandwich_check


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _n_range(text: str) -> list[int]:
    parts = text.split(":")
    try:
        nums = [int(x) for x in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}; use N or START:STOP[:STEP]") from None
    if len(nums) == 1:
        out = nums
    elif len(nums) in (2, 3):
        step = nums[2] if len(nums) == 3 else 1
        if step < 1:
            raise argparse.ArgumentTypeError("step must be >= 1")
        out = list(range(nums[0], nums[1] + 1, step))
    else:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}")
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"n range {text!r} must be non-empty with n >= 1")
    return out


def _schedule(text: str) -> EpsilonSchedule:
    try:
        return EpsilonSchedule.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _schedules(text: str) -> list[EpsilonSchedule]:
    try:
        return parse_schedule_list(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_measures(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("model (either a model file or scalar measures)")
    g.add_argument("--model", type=Path, help="model JSON with 'p' and 'q'")
    g.add_argument("--d", type=float, help="divergence D(P||Q) in nats")
    g.add_argument("--cx", type=float, help="C_X(P,Q) in nats")


def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", type=Path, help="output file (default: stdout); a manifest is written beside it")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bht", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"bht {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("info", help="information measures and reference exponents")
    p.add_argument("--model", type=Path, required=True)
    p.add_argument("--rate", type=float, help="exponential Type I rate r for the Nakagawa exponent")
    p.add_argument("--epsilon", type=float, help="fixed eps for the Strassen expansion (needs --n)")
    p.add_argument("--n", type=int)
    _add_out(p)

    p = sub.add_parser("synth", help="write a seeded model with a target divergence")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--min-mass", type=float, default=1e-3)
    p.add_argument("--seed", type=int, default=0)
    _add_out(p)

    p = sub.add_parser("bounds", help="feasibility interval over a range of n")
    _add_measures(p)
    p.add_argument("--schedule", type=_schedule, required=True)
    p.add_argument("--n", type=_n_range, required=True, help="N or START:STOP[:STEP]")
    _add_out(p)

    p = sub.add_parser("gap-table", help="UB - LB for several schedules")
    _add_measures(p)
    p.add_argument("--schedules", type=_schedules, default=list(STANDARD_SCHEDULES[1:]))
    p.add_argument("--n", type=_n_range, default=_n_range("50:750:100"))
    _add_out(p)

    p = sub.add_parser("css", help="predicted critical sample sizes for delta = 10^-k")
    _add_measures(p)
    p.add_argument("--schedule", type=_schedule, action="append", help="repeatable; default: const:0.1, recip, pow:0.1, logrecip")
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--nmax", type=int, default=1_000_000)
    _add_out(p)

    for name, helptext in (("exact", "exact optimal Type II error"), ("mc", "Monte Carlo Type II error estimate")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--model", type=Path, required=True)
        p.add_argument("--n", type=int, required=True)
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--epsilon", type=float)
        g.add_argument("--schedule", type=_schedule)
        if name == "mc":
            p.add_argument("--samples", type=int, default=100_000)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--chunks", type=int, default=1)
        _add_out(p)

    p = sub.add_parser("validate", help="sandwich and concentration checks on a model")
    p.add_argument("--model", type=Path, required=True)
    p.add_argument("--nmax", type=int, default=200)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    _add_out(p)
    return parser


def _measures(args, parser):
    """(d, c_x, model_hash) from --model or --d/--cx."""
    if args.model is not None:
        if args.d is not None or args.cx is not None:
            parser.error("use either --model or --d/--cx, not both")
        pair = read_model(args.model)
        return pair.d, pair.c_x, model_hash(model_doc(pair))
    if args.d is None or args.cx is None:
        parser.error("need --model or both --d and --cx")
    check_abstract_measures(args.d, args.cx)
    return args.d, args.cx, model_hash({"d": args.d, "c_x": args.cx})


def _emit(args, text: str, argv, mhash: str, seed=None) -> None:
    if args.out is None:
        sys.stdout.write(text)
        return
    args.out.write_text(text)
    RunManifest.create(argv, seed, mhash, __version__, kernels.BACKEND).write_beside(args.out)


def _epsilon(args) -> float:
    return args.epsilon if args.epsilon is not None else epsilon_at(args.schedule, args.n)


def _cmd_info(args, argv, parser):
    pair = read_model(args.model)
    doc = {"m": pair.size, "d": pair.d, "v": pair.v, "c_x": pair.c_x, "reverse_d": pair.reverse_d, "stein": pair.d}
    if args.rate is not None:
        doc["nakagawa"] = nakagawa_exponent(pair, args.rate)
    if args.epsilon is not None:
        if args.n is None:
            parser.error("--epsilon needs --n")
        doc["strassen"] = strassen_exponent(pair, args.epsilon, args.n)
    _emit(args, dumps(doc), argv, model_hash(model_doc(pair)))
    return 0


def _cmd_synth(args, argv, parser):
    pair = synthesize_pair(args.m, args.d, args.min_mass, args.seed)
    doc = model_doc(pair)
    _emit(args, dumps(doc), argv, model_hash(doc), seed=args.seed)
    return 0


BOUNDS_HEADER = ["n", "epsilon_n", "delta_n", "exp_lower", "exp_upper",
                 "log10_LB", "log10_UB", "log10_gap", "lb_valid", "LB", "UB", "gap"]


def _cmd_bounds(args, argv, parser):
    d, c_x, mhash = _measures(args, parser)
    rows = []
    for n in args.n:
        b = bounds_for_epsilon(d, c_x, epsilon_at(args.schedule, n), n)
        g = gap(b)
        rows.append([str(n), fmt(b.epsilon_n), fmt(b.delta_n), fmt(b.exp_lower), fmt(b.exp_upper),
                     fmt_log10(b.log_lb.log10), fmt_log10(b.log_ub.log10), fmt_log10(g.log10),
                     str(b.lb_valid).lower(), fmt_logvalue(b.log_lb), fmt_logvalue(b.log_ub), fmt_logvalue(g)])
    _emit(args, csv_text(BOUNDS_HEADER, rows), argv, mhash)
    return 0


GAP_HEADER = ["schedule", "n", "epsilon_n", "delta_n", "gap", "log10_gap", "lb_valid"]


def _cmd_gap_table(args, argv, parser):
    d, c_x, mhash = _measures(args, parser)
    rows = []
    for s in args.schedules:
        for n in args.n:
            b = bounds_for_epsilon(d, c_x, epsilon_at(s, n), n)
            g = gap(b)
            rows.append([str(s), str(n), fmt(b.epsilon_n), fmt(b.delta_n), fmt_logvalue(g),
                         fmt_log10(g.log10), str(b.lb_valid).lower()])
    _emit(args, csv_text(GAP_HEADER, rows), argv, mhash)
    return 0


def _cmd_css(args, argv, parser):
    d, c_x, mhash = _measures(args, parser)
    if args.kmin > args.kmax:
        parser.error("--kmin must not exceed --kmax")
    schedules = args.schedule or list(STANDARD_SCHEDULES)
    rows, missing = [], False
    for s in schedules:
        base = CssQuery(s, 1.0, d, c_x, n_max=args.nmax)
        for delta, r in css_sweep(base, range(args.kmin, args.kmax + 1)):
            missing |= not r.found
            rows.append([str(s), fmt(delta), str(r.css) if r.found else "NA", fmt(r.criterion_at_css)])
    _emit(args, csv_text(["schedule", "delta", "css", "criterion_at_css"], rows), argv, mhash)
    if missing:
        print(f"bht: no CSS found within n <= {args.nmax} for some entries", file=sys.stderr)
        return 4
    return 0


def _cmd_exact(args, argv, parser):
    pair = read_model(args.model)
    eps = _epsilon(args)
    r = beta_exact(pair, args.n, eps)
    doc = {"n": args.n, "epsilon": eps, "beta_log10": r.beta.log10, "achieved_type1": r.achieved_type1,
           "threshold_llr": r.threshold_llr, "boundary_fraction": r.boundary_fraction,
           "beta_threshold_log10": r.beta_threshold.log10}
    _emit(args, dumps(doc), argv, model_hash(model_doc(pair)))
    return 0


def _cmd_mc(args, argv, parser):
    pair = read_model(args.model)
    eps = _epsilon(args)
    cfg = McConfig(args.samples, args.seed, args.chunks)
    est = estimate_beta(pair, args.n, eps, cfg)
    if not est.resolved:
        print("bht: no Q-sample reached the threshold; estimate unresolved at this sample budget", file=sys.stderr)
    doc = {"n": args.n, "epsilon": eps, "estimate": est.estimate, "stderr": est.stderr,
           "threshold": est.threshold, "samples": est.num_samples, "seed": args.seed, "resolved": est.resolved}
    _emit(args, dumps(doc), argv, model_hash(model_doc(pair)), seed=args.seed)
    return 0


def _cmd_validate(args, argv, parser):
    pair = read_model(args.model)
    sw = sandwich_check(pair, n_max=args.nmax)
    conc = concentration_suite(pair, config=McConfig(args.samples, args.seed))
    failed = [{"n": n, "delta": r.delta, "empirical": r.empirical.estimate, "bound": r.bound}
              for n, r in conc if not r.passed]
    doc = {
        "sandwich": {"checked": sw.checked, "n_reached": sw.n_reached, "violations": len(sw.violations),
                     "passed": sw.passed},
        "concentration": {"checked": len(conc), "failed": failed, "passed": not failed},
    }
    _emit(args, dumps(doc), argv, model_hash(model_doc(pair)), seed=args.seed)
    return 0 if sw.passed and not failed else 1


_COMMANDS = {
    "info": _cmd_info, "synth": _cmd_synth, "bounds": _cmd_bounds, "gap-table": _cmd_gap_table,
    "css": _cmd_css, "exact": _cmd_exact, "mc": _cmd_mc, "validate": _cmd_validate,
}


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"bht: warning: {message}", file=sys.stderr)


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            warnings.showwarning = _show_warning
            return _COMMANDS[args.command](args, argv, sub)
    except SystemExit as exc:
        return int(exc.code or 0)
    except DomainError as exc:
        print(f"bht: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except InfeasibleError as exc:
        print(f"bht: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"bht: {exc}", file=sys.stderr)
        return 3


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else list(argv))
