"""Command-line entry point: reproducible experiments emitting CSV (and SVG).

Subcommands
-----------
prep      single state-preparation trials (naive / aa / fpaa strategies)
sample    rejection sampling from the squared-entry distribution
smoothed  Monte Carlo query-cost sweeps over sigma or dimension, with a
          power-law fit summary line
rounding  rounding-convention demo rows incl. the eps^2/4 success floor
fit       power-law fit over two columns of an existing CSV

Every output starts with comment lines echoing the tool version and the
exact command line, so a file documents how to regenerate itself. The
timestamp line is omitted under --deterministic, making reruns bit-identical.

Exit codes: 0 success, 2 usage error, 3 domain error (zero vector, divergent
mean, violated amplification bound, malformed vector data), 4 I/O error.
"""

from __future__ import annotations

import argparse
import datetime
import shlex
import sys
from pathlib import Path

import numpy as np

from . import __version__, _rng, svg
from .errors import (
    AmplitudeBoundError,
    DivergentMeanError,
    QueryBudgetError,
    VectorFormatError,
    ZeroVectorError,
)
from .prep import (
    prepare_raw_state,
    run_fixed_point_aa,
    run_known_amplitude_aa,
    run_naive,
    success_probability,
)
from .sampler import DEFAULT_MAX_QUERIES, SamplerConfig, l2_distribution, l2_sample_many
from .smoothed import fit_power_law, resolve_strategy, sweep_dimension, sweep_sigma
from .vectors import (
    apply_white_noise_offset,
    basis,
    load_file,
    parse_generator_spec,
    round_offset,
    round_standard,
    zero,
)

_TAG_CLI_TRIAL = 0x636C6931


class _UsageError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _epsilon_value(text: str) -> float:
    v = float(text)
    if not 0.0 < v <= 1.0:
        raise argparse.ArgumentTypeError(f"epsilon must lie in (0, 1], got {text}")
    return v


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t]

def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t]


def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", type=Path, default=None, help="output CSV path (default stdout)")
    p.add_argument("--deterministic", action="store_true",
                   help="omit the timestamp header so reruns are bit-identical")


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--gen", help="generator spec, e.g. zero:8, basis:4:1, uniform:64:7")
    src.add_argument("--file", type=Path, help="vector file, one real per line")


def _load_input(args):
    if args.gen is not None:
        try:
            return parse_generator_spec(args.gen)
        except VectorFormatError as exc:
            raise _UsageError(str(exc)) from exc
    return load_file(args.file)


def _write_output(args, fieldnames, rows, trailing_comments=()):
    lines = [f"# smoothprep {__version__}"]
    lines.append("# command: smoothprep " + shlex.join(args._argv))
    if not args.deterministic:
        lines.append(f"# generated: {datetime.datetime.now().isoformat(timespec='seconds')}")
    lines.append(",".join(fieldnames))
    for row in rows:
        lines.append(",".join(_fmt(row[k]) for k in fieldnames))
    lines.extend(trailing_comments)
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")


def _write_plot(args, points, fit, xlabel, title):
    path = args.out.with_suffix(".svg")
    path.write_text(
        svg.loglog_plot(points, xlabel, "mean queries", title,
                        fit=(fit.exponent, fit.log_prefactor)),
        encoding="utf-8",
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_prep(args) -> int:
    strategy = resolve_strategy(args.strategy)
    if args.strategy == "fpaa":
        if args.delta is None or args.lambda_min is None:
            raise _UsageError("--delta and --lambda-min are required with --strategy fpaa")
    elif args.delta is not None or args.lambda_min is not None:
        raise _UsageError("--delta/--lambda-min apply only to --strategy fpaa")
    x = _load_input(args)
    rows = []
    for i in range(args.trials):
        tseed = _rng.hash2(args.seed, _TAG_CLI_TRIAL + i)
        if args.strategy == "naive":
            r = run_naive(x, tseed)
        elif args.strategy == "aa":
            r = run_known_amplitude_aa(x, tseed)
        else:
            r = run_fixed_point_aa(x, args.lambda_min, args.delta, tseed)
        rows.append({
            "strategy": strategy.value,
            "D": x.dimension,
            "queries": r.oracle_queries,
            "success": r.success,
            "p_attempt": r.success_probability_per_attempt,
            "fidelity": r.fidelity,
            "seed": tseed,
        })
    _write_output(args, ["strategy", "D", "queries", "success", "p_attempt", "fidelity", "seed"], rows)
    return 0


def cmd_sample(args) -> int:
    x = _load_input(args)
    cfg = SamplerConfig(args.entry_bound, args.seed, args.max_queries)
    idx, queries = l2_sample_many(x, cfg, args.n)
    rows = [
        {"index": int(i), "queries": int(q), "seed": args.seed}
        for i, q in zip(idx, queries)
    ]
    trailing = []
    if args.check_dist:
        exact = l2_distribution(x)
        counts = np.bincount(idx - 1, minlength=x.dimension)
        freq = counts / args.n
        tv = 0.5 * float(np.sum(np.abs(exact - freq)))
        for j in range(x.dimension):
            trailing.append(f"# dist: index={j + 1} exact={exact[j]!r} empirical={freq[j]!r}")
        trailing.append(f"# tv-distance: {tv!r}")
    _write_output(args, ["index", "queries", "seed"], rows, trailing)
    return 0


def cmd_smoothed(args) -> int:
    if (args.sigmas is None) == (args.dims is None):
        raise _UsageError("exactly one of --sigmas or --dims is required")
    if args.strategy == "fpaa" and (args.delta is None or args.lambda_min is None):
        raise _UsageError("--delta and --lambda-min are required with --strategy fpaa")
    if args.plot and args.out is None:
        raise _UsageError("--plot requires --out")
    strategy = resolve_strategy(args.strategy)
    kwargs = {}
    if args.strategy == "fpaa":
        kwargs = {"lambda_min": args.lambda_min, "delta": args.delta}
    x_factory = zero if args.x_template == "zero" else (lambda d: basis(d, 1))

    if args.sigmas is not None:
        estimates = sweep_sigma(strategy, x_factory(args.d), args.sigmas, args.trials,
                                args.seed, **kwargs)
        scales = list(args.sigmas)
        xlabel = "sigma"
    else:
        estimates = sweep_dimension(strategy, args.sigma, args.dims, args.trials,
                                    args.seed, x_factory=x_factory, **kwargs)
        scales = [float(d) for d in args.dims]
        xlabel = "D"

    rows = []
    for i, est in enumerate(estimates):
        rows.append({
            "strategy": est.strategy.value,
            "D": est.dimension,
            "sigma": est.sigma,
            "trials": est.trials,
            "mean_queries": est.mean_queries,
            "stderr": est.stderr_queries,
            "mean_inv_p": est.mean_inverse_p,
            "inv_mean_p": est.inverse_mean_p,
            "clip_fraction": est.clip_fraction,
            "seed": _rng.hash2(args.seed, i),
        })
    points = list(zip(scales, [e.mean_queries for e in estimates]))
    fit = fit_power_law(points)
    trailing = [
        f"# fit: exponent={fit.exponent!r} log_prefactor={fit.log_prefactor!r} "
        f"r2={fit.r_squared!r} n_points={fit.n_points}"
    ]
    _write_output(
        args,
        ["strategy", "D", "sigma", "trials", "mean_queries", "stderr",
         "mean_inv_p", "inv_mean_p", "clip_fraction", "seed"],
        rows,
        trailing,
    )
    if args.plot:
        _write_plot(args, points, fit, xlabel, f"{strategy.value}: mean queries vs {xlabel}")
    return 0


def cmd_rounding(args) -> int:
    x = _load_input(args)
    rows = []
    for mode in args.modes:
        for eps in args.epsilons:
            if mode == "standard":
                xp = round_standard(x, eps)
            elif mode == "offset":
                xp = round_offset(x, eps)
            else:
                xp = apply_white_noise_offset(x, eps, args.seed)
            p = success_probability(prepare_raw_state(xp))
            rows.append({
                "mode": mode,
                "epsilon": eps,
                "min_abs": float(np.min(np.abs(xp.entries))),
                "linf_delta": float(np.max(np.abs(xp.entries - x.entries))),
                "success_probability": p,
                "floor_ok": bool(p >= eps * eps / 4.0),
            })
    _write_output(
        args,
        ["mode", "epsilon", "min_abs", "linf_delta", "success_probability", "floor_ok"],
        rows,
    )
    return 0


def cmd_fit(args) -> int:
    with open(args.infile, encoding="utf-8") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise VectorFormatError(f"{args.infile}: no data rows")
    import csv as _csv

    reader = _csv.DictReader(lines)
    points = []
    for row in reader:
        if args.x not in row or args.y not in row:
            raise _UsageError(
                f"columns {args.x!r}/{args.y!r} not found; file has {sorted(row)}"
            )
        points.append((float(row[args.x]), float(row[args.y])))
    fit = fit_power_law(points)
    row = {
        "exponent": fit.exponent,
        "log_prefactor": fit.log_prefactor,
        "r2": fit.r_squared,
        "n_points": fit.n_points,
    }
    _write_output(args, ["exponent", "log_prefactor", "r2", "n_points"], [row])
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smoothprep",
        description="amplitude-encoding and rejection-sampling query-cost experiments",
    )
    parser.add_argument("--version", action="version", version=f"smoothprep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prep", help="state-preparation trials")
    _add_input_flags(p)
    p.add_argument("--strategy", choices=["naive", "aa", "fpaa"], default="naive")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, default=None, help="fpaa failure parameter in (0,1)")
    p.add_argument("--lambda-min", type=float, default=None,
                   help="fpaa lower bound on the success probability")
    _add_io_flags(p)
    p.set_defaults(func=cmd_prep)

    p = sub.add_parser("sample", help="squared-entry rejection sampling")
    _add_input_flags(p)
    p.add_argument("--n", type=int, default=1, help="number of samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entry-bound", type=_positive_float, default=1.0)
    p.add_argument("--max-queries", type=int, default=DEFAULT_MAX_QUERIES)
    p.add_argument("--check-dist", action="store_true",
                   help="append exact vs empirical distribution and TV distance")
    _add_io_flags(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("smoothed", help="query-cost sweeps under Gaussian perturbation")
    p.add_argument("--strategy", choices=["naive", "aa", "fpaa", "classical"], required=True)
    p.add_argument("--d", type=int, default=1024, help="dimension for --sigmas sweeps")
    p.add_argument("--sigmas", type=_float_list, default=None, help="comma-separated sigma grid")
    p.add_argument("--dims", type=_int_list, default=None, help="comma-separated dimension grid")
    p.add_argument("--sigma", type=float, default=0.1, help="sigma for --dims sweeps")
    p.add_argument("--x-template", choices=["zero", "basis1"], default="zero",
                   help="base vector per grid point")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--lambda-min", type=float, default=None)
    p.add_argument("--plot", action="store_true", help="also write a log-log SVG next to --out")
    _add_io_flags(p)
    p.set_defaults(func=cmd_smoothed)

    p = sub.add_parser("rounding", help="rounding conventions and the success floor")
    _add_input_flags(p)
    p.add_argument("--epsilons", type=_float_list, default=[0.2, 0.1, 0.05])
    p.add_argument("--modes", type=lambda t: t.split(","), default=["standard", "offset", "noise"])
    p.add_argument("--seed", type=int, default=0, help="master seed for the noise mode")
    _add_io_flags(p)
    p.set_defaults(func=cmd_rounding)

    p = sub.add_parser("fit", help="power-law fit over columns of an existing CSV")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--x", default="sigma", help="scale column name")
    p.add_argument("--y", default="mean_queries", help="value column name")
    _add_io_flags(p)
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the diagnostic
        return int(exc.code or 0)
    args._argv = argv
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ZeroVectorError, DivergentMeanError, AmplitudeBoundError, QueryBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except VectorFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
