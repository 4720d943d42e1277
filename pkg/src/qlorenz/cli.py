"""Command-line frontend.

Subcommands:
  curve      evaluate a population inequality curve on a grid
  gini       population coefficients for a model
  estimate   grid estimates from a CSV of incomes
  influence  influence-function profiles (CSV emitters)
  se         asymptotic standard errors via the influence integrals
  simulate   finite-sample sqrt(n)*SE study (seeded)
  ci         confidence-interval coverage/width study (seeded)
  transfer   poverty-line levy: parameters and coefficient deltas
  convexity  second-derivative sweep reports
  tables     machine-readable reproduction files for the reference tables

Exit codes: 0 success, 1 validation error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .coefficients import (REFERENCE_MODELS, all_coefficients, coefficient,
                           gini0, rank_table)
from .convexity import convexity_sweep, second_difference
from .curves import curve_table
from .distributions import HeavyTailError, ParetoI, parse_distribution
from .empirical import Grid, Sample, ZeroIncomeError, gini_hat, read_income_csv
from .influence import asymptotic_se, if_coefficient_profile, if_curve
from .simulation import StudyConfig, ci_study, sample_size_for_se, se_study
from .transfer import TransferredDistribution, levy_amount, transfer_effect

_INDEX_CHOICES = ("0", "1", "2", "3", "all")


def _indices(arg: str, allow_zero=True):
    if arg == "all":
        return (0, 1, 2, 3) if allow_zero else (1, 2, 3)
    i = int(arg)
    if i == 0 and not allow_zero:
        raise SystemExit2("index 0 is not supported by this subcommand")
    return (i,)


class SystemExit2(SystemExit):
    def __init__(self, message):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(2)


def _write_out(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_table(args, header, rows):
    """Write rows as .csv/.json per the --out extension, aligned text otherwise."""
    if args.out and args.out.endswith(".json"):
        _write_out(args, json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n")
    elif args.out and args.out.endswith(".csv"):
        lines = [",".join(header)] + [",".join(str(c) for c in r) for r in rows]
        _write_out(args, "\n".join(lines) + "\n")
    else:
        widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) for i, h in enumerate(header)]
        lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
        for r in rows:
            lines.append("  ".join(str(c).ljust(w) for c, w in zip(r, widths)))
        _write_out(args, "\n".join(lines) + "\n")


def _fmt(x, nd=6):
    return f"{x:.{nd}f}"


# --------------------------------------------------------------------------
# subcommand handlers
# --------------------------------------------------------------------------

def cmd_curve(args):
    model = parse_distribution(args.dist)
    grid = Grid(args.grid)
    for index in _indices(args.index):
        table = curve_table(model, index, grid, extend_heavy_tail=args.extend_heavy_tail)
        if args.out and args.index == "all":
            path = args.out.replace(".csv", f"_L{index}.csv")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(table.to_csv())
        elif args.out and args.out.endswith(".json"):
            _write_out(args, table.to_json() + "\n")
        else:
            _write_out(args, table.to_csv())
    return 0


def cmd_gini(args):
    model = parse_distribution(args.dist)
    rows = []
    for index in _indices(args.index):
        value = gini0(model, args.grid) if index == 0 else coefficient(model, index, args.grid)
        rows.append((index, _fmt(value)))
    _emit_table(args, ("index", "G"), rows)
    return 0


def cmd_estimate(args):
    sample = read_income_csv(args.data)
    grid = Grid(args.grid)
    rows = [(i, _fmt(gini_hat(sample, i, grid))) for i in _indices(args.index)]
    _emit_table(args, ("index", "G_hat"), rows)
    return 0


def cmd_influence(args):
    model = parse_distribution(args.dist)
    indices = _indices(args.index, allow_zero=False)
    if args.z is not None and args.p is None:
        # IF(z; G_i): one row per index at the given z, plus a profile if --grid
        rows = [(i, _fmt(float(if_coefficient_profile(model, i, [args.z])[0])))
                for i in indices]
        _emit_table(args, ("index", "IF_G"), rows)
    elif args.p is not None and args.z is None:
        zs = model.quantile((np.arange(1, args.grid + 1) - 0.5) / args.grid)
        header = ["z"] + [f"IF_L{i}" for i in indices]
        rows = [[_fmt(z)] + [_fmt(if_curve(model, i, args.p, z)) for i in indices]
                for z in np.asarray(zs)]
        _emit_table(args, header, rows)
    elif args.p is not None and args.z is not None:
        rows = [(i, _fmt(if_curve(model, i, args.p, args.z))) for i in indices]
        _emit_table(args, ("index", "IF_L"), rows)
    else:
        raise SystemExit2("influence needs --p (curve IF vs z), --z (coefficient IF), or both")
    return 0


def cmd_se(args):
    model = parse_distribution(args.dist)
    rows = [(i, _fmt(asymptotic_se(model, i, n_outer=args.outer)))
            for i in _indices(args.index, allow_zero=False)]
    _emit_table(args, ("index", "sigma"), rows)
    return 0


def cmd_simulate(args):
    config = StudyConfig(model_spec=args.dist,
                         indices=_indices(args.index),
                         n_values=tuple(args.n),
                         replicates=args.reps, J=args.grid,
                         seed=args.seed, workers=args.workers)
    result = se_study(config)
    _write_out(args, result.csv())
    return 0


def cmd_ci(args):
    indices = _indices(args.index, allow_zero=False)
    if args.sigma:
        sigma = {i: s for i, s in zip(indices, args.sigma)}
        if len(args.sigma) != len(indices):
            raise SystemExit2("--sigma needs one value per index")
    else:
        model = parse_distribution(args.dist)
        sigma = {i: asymptotic_se(model, i) for i in indices}
    config = StudyConfig(model_spec=args.dist, indices=indices,
                         n_values=tuple(args.n), replicates=args.reps,
                         J=args.grid, seed=args.seed, workers=args.workers)
    result = ci_study(config, sigma)
    _write_out(args, result.csv())
    return 0


def cmd_transfer(args):
    model = parse_distribution(args.dist)
    if args.p0_sweep:
        p0s = np.arange(0.005, 0.4951, 0.005)
        header = ("p0", "dG0", "dG1", "dG2", "dG3", "rG0", "rG1", "rG2", "rG3")
        rows = []
        for p0 in p0s:
            eff = transfer_effect(model, float(p0), args.grid)
            rows.append(tuple(_fmt(v) for v in (p0, *eff.absolute, *eff.relative)))
        _emit_table(args, header, rows)
        return 0
    spec = levy_amount(model, args.p0)
    t = TransferredDistribution(model, spec)
    eff = transfer_effect(model, args.p0, args.grid)
    rows = [
        ("poverty_line_b", _fmt(spec.b, 2)),
        ("levy_threshold_c", _fmt(spec.c, 2)),
        ("levy_amount_d", _fmt(spec.d, 2)),
        ("median_before", _fmt(model.median(), 2)),
        ("median_after", _fmt(t.median(), 2)),
    ]
    for i in range(4):
        rows.append((f"delta_G{i}", _fmt(eff.absolute[i])))
    _emit_table(args, ("quantity", "value"), rows)
    return 0


def cmd_convexity(args):
    if args.family:
        family = args.family.lower()
        if family != "paretoi":
            raise SystemExit2("family sweeps are supported for paretoI")
        params = np.arange(args.par_min, args.par_max + 1e-12, args.par_step)
        report = convexity_sweep(lambda a: ParetoI(a), int(args.index), parameter_grid=params)
    else:
        model = parse_distribution(args.dist)
        report = convexity_sweep(model, int(args.index))
    header = ("model", "index", "min_L2nd", "argmin_p", "argmin_par", "convex")
    rows = [(report.model_spec, report.index, _fmt(report.min_second_derivative),
             _fmt(report.argmin_p, 4),
             "" if report.argmin_parameter is None else f"{report.argmin_parameter:g}",
             report.convex)]
    _emit_table(args, header, rows)
    return 0


def cmd_tables(args):
    which = args.which
    if which == "table1":
        report = rank_table(REFERENCE_MODELS, J=args.grid)
        _write_out(args, report.csv())
    elif which == "table2":
        lines = ["model,sigma1,sigma2,sigma3"]
        for name, model in REFERENCE_MODELS:
            ses = [asymptotic_se(model, i) for i in (1, 2, 3)]
            lines.append(",".join([name] + [f"{s:.4f}" for s in ses]))
        _write_out(args, "\n".join(lines) + "\n")
    elif which == "table3":
        if args.seed is None:
            raise SystemExit2("tables table3 is stochastic; pass --seed")
        lines = ["model,index,n,coverage,width"]
        for spec, sigma in (("lognormal", {1: 0.417, 2: 0.351, 3: 0.322}),
                            ("paretoII:a=2", {1: 0.485, 2: 0.381, 3: 0.379})):
            config = StudyConfig(spec, (1, 2, 3), (25, 100, 400),
                                 args.reps, args.grid, args.seed, args.workers)
            result = ci_study(config, sigma)
            for c in result.cells:
                lines.append(f"{spec},{c.index},{c.n},{c.coverage:.4f},{c.ci_width:.4f}")
        _write_out(args, "\n".join(lines) + "\n")
    elif which in ("fig1", "fig2", "fig9"):
        specs = {
            "fig1": ("uniform", "lognormal", "chisq:k=1", "weibull:beta=0.5"),
            "fig2": ("paretoII:a=0.5", "paretoII:a=1", "paretoII:a=1.5", "paretoII:a=2"),
            "fig9": ("beta:alpha=0.1,beta=0.05",),
        }[which]
        lines = ["model,index,p,value"]
        for spec in specs:
            model = parse_distribution(spec)
            heavy = math.isinf(model.mean())
            for index in (0, 1, 2, 3):
                table = curve_table(model, index, Grid(args.grid), extend_heavy_tail=heavy)
                for p, v in zip(table.p, table.values):
                    lines.append(f"{spec},{index},{p:.6f},{v:.6f}")
        _write_out(args, "\n".join(lines) + "\n")
    elif which == "fig3":
        lines = ["model,p0,dG0,dG1,dG2,dG3,rG0,rG1,rG2,rG3"]
        for spec in ("paretoII:a=1.1", "paretoII:a=2"):
            model = parse_distribution(spec)
            for p0 in np.arange(0.005, 0.4951, 0.005):
                eff = transfer_effect(model, float(p0), args.grid)
                cells = [f"{v:.6f}" for v in (*eff.absolute, *eff.relative)]
                lines.append(",".join([spec, f"{p0:.3f}"] + cells))
        _write_out(args, "\n".join(lines) + "\n")
    elif which in ("fig4", "fig5"):
        if args.seed is None:
            raise SystemExit2(f"tables {which} is stochastic; pass --seed")
        lines = ["model,index,n,ln_n,sqrt_n_se"]
        if which == "fig4":
            specs = ("uniform", "lognormal", "chisq:k=1", "paretoII:a=2")
            ns = (20, 40, 80, 160, 400, 800, 1600)
            for spec in specs:
                config = StudyConfig(spec, (1, 2, 3), ns, args.reps,
                                     args.grid, args.seed, args.workers)
                for c in se_study(config).cells:
                    lines.append(f"{spec},{c.index},{c.n},{math.log(c.n):.4f},{c.root_n_se:.4f}")
        else:
            for a in np.arange(0.25, 2.51, 0.25):
                spec = f"paretoII:a={a:g}"
                config = StudyConfig(spec, (1, 2, 3), (400,), args.reps,
                                     args.grid, args.seed, args.workers)
                for c in se_study(config).cells:
                    lines.append(f"{spec},{c.index},{c.n},{math.log(c.n):.4f},{c.root_n_se:.4f}")
        _write_out(args, "\n".join(lines) + "\n")
    elif which in ("fig6", "fig7", "fig8"):
        model = parse_distribution(args.dist or "paretoII:a=1")
        lines = []
        if which == "fig6":
            lines.append("p,z,IF_L1,IF_L2,IF_L3")
            for p in (0.2, 0.4, 0.6, 0.8):
                for z in np.linspace(0.05, 8.0, 160):
                    vals = [if_curve(model, i, p, float(z)) for i in (1, 2, 3)]
                    lines.append(f"{p},{z:.4f}," + ",".join(f"{v:.6f}" for v in vals))
        elif which == "fig7":
            lines.append("z,p,IF_L1,IF_L2,IF_L3")
            for z in (0.5, 1.0, 2.0, 4.0):
                for p in np.linspace(0.01, 0.99, 99):
                    vals = [if_curve(model, i, float(p), z) for i in (1, 2, 3)]
                    lines.append(f"{z},{p:.4f}," + ",".join(f"{v:.6f}" for v in vals))
        else:
            lines.append("a,z,IF_G1,IF_G2,IF_G3")
            for a in (0.5, 1.0, 1.5, 2.0):
                m = parse_distribution(f"paretoII:a={a:g}")
                zs = np.linspace(0.05, 10.0, 200)
                cols = [if_coefficient_profile(m, i, zs) for i in (1, 2, 3)]
                for k, z in enumerate(zs):
                    lines.append(f"{a},{z:.4f},{cols[0][k]:.6f},{cols[1][k]:.6f},{cols[2][k]:.6f}")
        _write_out(args, "\n".join(lines) + "\n")
    else:
        raise SystemExit2(f"unknown table target {which!r}")
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlorenz",
        description="Quantile-based inequality curves, coefficients, and studies.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, dist=True, index_default="all", grid_default=1000, allow0=True):
        if dist:
            p.add_argument("--dist", required=True,
                           help="distribution spec, e.g. paretoII:a=2,sigma=100000")
        p.add_argument("--index", choices=_INDEX_CHOICES, default=index_default,
                       help="inequality index (default %(default)s)")
        p.add_argument("--grid", type=int, default=grid_default, metavar="J",
                       help="grid size J (default %(default)s)")
        p.add_argument("--out", help="output path; .csv/.json select the format")

    p = sub.add_parser("curve", help="population inequality curve values")
    add_common(p)
    p.add_argument("--extend-heavy-tail", action="store_true",
                   help="extend the Lorenz curve by 0 when the mean is infinite")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("gini", help="population coefficients")
    add_common(p)
    p.set_defaults(func=cmd_gini)

    p = sub.add_parser("estimate", help="grid estimates from income data")
    p.add_argument("--data", required=True, help="CSV: one income per line")
    add_common(p, dist=False)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("influence", help="influence-function values and profiles")
    add_common(p, index_default="all", grid_default=200)
    p.add_argument("--p", type=float, help="curve ordinate p")
    p.add_argument("--z", type=float, help="contamination point z")
    p.set_defaults(func=cmd_influence)

    p = sub.add_parser("se", help="asymptotic standard errors (influence integrals)")
    add_common(p)
    p.add_argument("--outer", type=int, default=20000,
                   help="outer integration grid size (default %(default)s)")
    p.set_defaults(func=cmd_se)

    p = sub.add_parser("simulate", help="finite-sample sqrt(n)*SE study")
    add_common(p)
    p.add_argument("--n", type=int, nargs="+", default=[25, 100], help="sample sizes")
    p.add_argument("--reps", type=int, default=1000, help="replicates (default %(default)s)")
    p.add_argument("--seed", type=int, required=True, help="master seed (required)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("ci", help="confidence-interval coverage and width study")
    add_common(p, index_default="all")
    p.add_argument("--n", type=int, nargs="+", default=[25, 100, 400])
    p.add_argument("--reps", type=int, default=10000)
    p.add_argument("--seed", type=int, required=True, help="master seed (required)")
    p.add_argument("--sigma", type=float, nargs="+",
                   help="asymptotic SEs per index (default: compute)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("transfer", help="poverty-line levy and coefficient deltas")
    add_common(p)
    p.add_argument("--p0", type=float, default=0.2, help="levy size (default %(default)s)")
    p.add_argument("--p0-sweep", action="store_true",
                   help="emit deltas over the p0 grid 0.005..0.495")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("convexity", help="second-derivative sweep report")
    p.add_argument("--dist", help="distribution spec (fixed-model sweep)")
    p.add_argument("--family", help="family sweep (paretoI)")
    p.add_argument("--par-min", type=float, default=1.0)
    p.add_argument("--par-max", type=float, default=10.0)
    p.add_argument("--par-step", type=float, default=1.0)
    p.add_argument("--index", choices=("1", "2", "3"), default="3")
    p.add_argument("--out")
    p.set_defaults(func=cmd_convexity)

    p = sub.add_parser("tables", help="reproduction files for reference tables/figures")
    p.add_argument("--which", required=True,
                   choices=("table1", "table2", "table3", "fig1", "fig2", "fig3",
                            "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"))
    p.add_argument("--dist", help="model for fig6/fig7 (default paretoII:a=1)")
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--seed", type=int, help="master seed (required for stochastic targets)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tables)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SystemExit2:
        return 2
    except (ValueError, ZeroIncomeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (HeavyTailError, ArithmeticError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
