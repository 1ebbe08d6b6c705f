"""Command-line front end: energy curves, wavefunction samples, verification, plots."""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import oracle, variational as var
from .errors import NumericalError
from .plots import PRESETS, fmt, nu_grid, write_preset
from .verify import CRITERIA, run_all
from .wavefunction import compare, sample_oracle, sample_trial

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3

# energy unit me^4/hbar^2 (one hartree) expressed in the selected output unit
UNIT_SCALE = {"dimensionless": 1.0, "hartree": 1.0, "eV": 27.211386245988}

STATE_PARITY = {"ground": "even", "excited": "odd"}
STATE_LEVEL = {"ground": 0, "excited": 1}
ENERGY_FIELDS = ("nu", "epsilon", "oracle", "delta")
WAVE_FIELDS = ("x_over_L", "psi_trial", "psi_oracle")


class UsageError(Exception):
    pass


class NumericFailure(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    state: str = "ground"
    method: str = "closed2"
    nus: tuple[float, ...] = ()
    order: int = 2
    grid_points: int = oracle.DEFAULT_GRID
    with_oracle: bool = False
    units: str = "dimensionless"

    def validate(self) -> None:
        if not self.nus:
            raise UsageError("no separations given; use --nu or --nu-range")
        if any(not (math.isfinite(nu) and nu > 0) for nu in self.nus):
            raise UsageError("every nu must be positive and finite")
        if self.method == "closed1" and self.state != "ground":
            raise UsageError("closed1 only describes the ground state")
        if self.method == "order-n" and self.order < 1:
            raise UsageError("--order must be at least 1")
        if self.grid_points < oracle.MIN_GRID:
            raise UsageError(f"--grid-points must be at least {oracle.MIN_GRID}")


def method_energy(cfg: RunConfig, nu: float) -> float:
    parity = STATE_PARITY[cfg.state]
    if cfg.method == "closed1":
        return var.epsilon1(nu).value
    if cfg.method == "closed2":
        return var.epsilon2(parity, nu)
    if cfg.method == "order-n":
        return var.optimize_order_n(parity, nu, cfg.order)[1]
    return oracle.oracle_energy(nu, STATE_LEVEL[cfg.state], cfg.grid_points)


def energy_row(cfg: RunConfig, nu: float) -> dict:
    try:
        e = method_energy(cfg, nu)
        ref = oracle.oracle_energy(nu, STATE_LEVEL[cfg.state], cfg.grid_points) if cfg.with_oracle else None
    except (NumericalError, ValueError, ZeroDivisionError, OverflowError) as exc:
        raise NumericFailure(f"{cfg.method} failed at nu={nu:g}: {exc}") from exc
    if not math.isfinite(e):
        raise NumericFailure(f"{cfg.method} gave a non-finite energy at nu={nu:g}")
    scale = UNIT_SCALE[cfg.units]
    row = {"nu": nu, "epsilon": e * scale, "oracle": None, "delta": None}
    if ref is not None:
        row["oracle"] = ref * scale
        row["delta"] = (e - ref) * scale
    return row


def _energy_row_star(args):
    return energy_row(*args)


def energy_table(cfg: RunConfig, jobs: int = 1) -> list[dict]:
    cfg.validate()
    tasks = [(cfg, nu) for nu in cfg.nus]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map preserves input order
            return list(pool.map(_energy_row_star, tasks))
    return [energy_row(cfg, nu) for nu in cfg.nus]


def _number(v):
    return None if v is None else float(fmt(v))


def render(rows: list[dict], fields: tuple[str, ...], fmt_name: str, comments=()) -> str:
    if fmt_name == "json":
        return json.dumps([{k: _number(r[k]) for k in fields} for r in rows], indent=2) + "\n"
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(fields))
    lines += [",".join(fmt(r[k]) for k in fields) for r in rows]
    return "\n".join(lines) + "\n"


def wavefunction_table(state: str, nu: float, order: int, samples: int, grid_points: int):
    parity = STATE_PARITY[state]
    try:
        t = var.trial_wavefunction(parity, nu, order)
        a = sample_trial(t, samples)
        b = sample_oracle(oracle.solve_spectrum(nu, grid_points), STATE_LEVEL[state], a.xs)
        cmp = compare(a, b)
    except (NumericalError, ZeroDivisionError, OverflowError) as exc:
        raise NumericFailure(f"wavefunction failed at nu={nu:g}: {exc}") from exc
    sign = -1.0 if float(a.values @ b.values) < 0 else 1.0
    rows = [
        {"x_over_L": x, "psi_trial": u, "psi_oracle": sign * v}
        for x, u, v in zip(a.xs, a.values, b.values)
    ]
    return rows, cmp


def emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
        return
    path = Path(output)
    try:
        path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def _positive_float(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be positive: {s!r}")
    return v


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {s!r}")
    return v


def collect_nus(args) -> tuple[float, ...]:
    nus = list(args.nu or [])
    if args.nu_range is not None:
        lo, hi, step = args.nu_range
        if step <= 0:
            raise UsageError("--nu-range step must be positive")
        if hi < lo:
            raise UsageError("--nu-range max is below min")
        nus += nu_grid(lo, hi, step)
    return tuple(nus)


def cmd_energy_curve(args) -> int:
    cfg = RunConfig(
        state=args.state, method=args.method, nus=collect_nus(args), order=args.order,
        grid_points=args.grid_points, with_oracle=args.with_oracle, units=args.units,
    )
    rows = energy_table(cfg, args.jobs)
    emit(render(rows, ENERGY_FIELDS, args.format), args.output)
    return EXIT_OK


def cmd_wavefunction(args) -> int:
    if args.samples < 3:
        raise UsageError("--samples must be at least 3")
    if args.grid_points < oracle.MIN_GRID:
        raise UsageError(f"--grid-points must be at least {oracle.MIN_GRID}")
    rows, cmp = wavefunction_table(args.state, args.nu, args.order, args.samples, args.grid_points)
    comments = [f"overlap={fmt(cmp.overlap)} l2_diff={fmt(cmp.l2_diff)} max_diff={fmt(cmp.max_diff)}"]
    emit(render(rows, WAVE_FIELDS, args.format, comments), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.criterion:
        checks = [c for k in args.criterion for c in CRITERIA[k]()]
    else:
        checks = list(run_all())
    for c in checks:
        print(c.line(), flush=True)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else 1


def cmd_box_demo(args) -> int:
    exact = math.pi**2 / 2
    lines = ["order,energy,exact,rel_error"]
    for order in range(1, args.max_order + 1):
        e = var.box_energy(order)
        label = f"{e.numerator}/{e.denominator}" if order == 1 and hasattr(e, "numerator") else fmt(e)
        lines.append(",".join([str(order), label, fmt(exact), fmt((float(e) - exact) / exact)]))
    emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_plot(args) -> int:
    if args.grid_points < oracle.MIN_GRID:
        raise UsageError(f"--grid-points must be at least {oracle.MIN_GRID}")
    try:
        paths = write_preset(args.preset, Path(args.output_dir), args.grid_points)
    except OSError as exc:
        raise UsageError(f"cannot write into {args.output_dir}: {exc}") from exc
    except NumericalError as exc:
        raise NumericFailure(f"preset {args.preset} failed: {exc}") from exc
    for p in paths:
        print(p)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="h2ion1d",
        description="Energy curves and wavefunctions of the one-dimensional hydrogen molecular ion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, state=True):
        if state:
            p.add_argument("--state", choices=tuple(STATE_PARITY), default="ground")
        p.add_argument("--grid-points", type=int, default=oracle.DEFAULT_GRID,
                       help="oracle finite-difference intervals (doubled for extrapolation)")
        p.add_argument("--output", "-o", default=None, help="output file (default stdout)")

    p = sub.add_parser("energy-curve", help="energy versus nu = L/a")
    common(p)
    p.add_argument("--method", choices=("closed1", "closed2", "order-n", "oracle"), default="closed2")
    p.add_argument("--nu", type=_positive_float, nargs="+", help="explicit separations")
    p.add_argument("--nu-range", type=float, nargs=3, metavar=("MIN", "MAX", "STEP"))
    p.add_argument("--order", type=int, default=2, help="series order for --method order-n")
    p.add_argument("--with-oracle", action="store_true", help="add oracle and delta columns")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--units", choices=tuple(UNIT_SCALE), default="dimensionless")
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker processes")
    p.set_defaults(func=cmd_energy_curve)

    p = sub.add_parser("wavefunction", help="trial and oracle wavefunction samples")
    common(p)
    p.add_argument("--nu", type=_positive_float, required=True)
    p.add_argument("--order", type=_positive_int, default=2)
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("verify", help="run the acceptance table")
    p.add_argument("--criterion", type=int, nargs="+", choices=sorted(CRITERIA))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("box-demo", help="series method on the particle in a box")
    p.add_argument("--max-order", type=_positive_int, default=4)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_box_demo)

    p = sub.add_parser("plot", help="write CSV + gnuplot script for a figure preset")
    p.add_argument("--preset", choices=tuple(PRESETS), required=True)
    p.add_argument("--output-dir", default=".")
    p.add_argument("--grid-points", type=int, default=oracle.DEFAULT_GRID)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"h2ion1d: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericFailure as exc:
        print(f"h2ion1d: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
