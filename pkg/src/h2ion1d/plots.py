"""Data + gnuplot scripts reproducing the energy-curve and wavefunction figures."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import oracle, variational as var
from .wavefunction import compare, sample_oracle, sample_trial


def fmt(v) -> str:
    if v is None:
        return ""
    v = float(v)
    # avoid printing negative zero
    return f"{v + 0.0:.12g}" if v != 0 else "0"


@dataclass(frozen=True)
class Preset:
    kind: str            # "curve", "orders" or "wave"
    parity: str
    title: str
    method: str = "closed2"
    nu: float = 0.0
    nu_range: tuple[float, float, float] = (0.1, 20.0, 0.1)
    yrange: tuple[float, float] = (-1.0, 1.0)
    inset: tuple[float, float] | None = None


PRESETS = {
    "fig1": Preset("curve", "even", "Ground state, order-1 closed form vs numerical", method="closed1"),
    "fig2": Preset("curve", "even", "Ground state, order-2 closed form vs numerical"),
    "fig3": Preset("wave", "even", "Ground state wavefunction, nu = 10", nu=10.0),
    "fig4": Preset("wave", "even", "Ground state wavefunction, nu = 2", nu=2.0),
    "fig5": Preset("orders", "even", "Ground state, series orders 2, 3, 4", nu_range=(0.5, 20.0, 0.1)),
    "fig6": Preset("curve", "odd", "First excited state, order-2 closed form vs numerical",
                   inset=(8.0, 11.0)),
    "fig7": Preset("wave", "odd", "First excited state wavefunction, nu = 15", nu=15.0),
    "fig8": Preset("wave", "odd", "First excited state wavefunction, nu = 6", nu=6.0),
    "fig9": Preset("orders", "odd", "First excited state, series orders 2, 3, 4", nu_range=(0.5, 20.0, 0.1)),
}


def nu_grid(lo: float, hi: float, step: float) -> list[float]:
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 10) for i in range(n)]


def curve_csv(p: Preset, grid_points: int) -> str:
    level = 0 if p.parity == "even" else 1
    lines = ["nu,epsilon,oracle,delta"]
    for nu in nu_grid(*p.nu_range):
        e = var.epsilon1(nu).value if p.method == "closed1" else var.epsilon2(p.parity, nu)
        ref = oracle.oracle_energy(nu, level, grid_points)
        lines.append(",".join([fmt(nu), fmt(e), fmt(ref), fmt(e - ref)]))
    return "\n".join(lines) + "\n"


def orders_csv(p: Preset) -> str:
    lines = ["nu,order2,order3,order4"]
    for nu in nu_grid(*p.nu_range):
        vals = [var.optimize_order_n(p.parity, nu, k)[1] for k in (2, 3, 4)]
        lines.append(",".join([fmt(nu)] + [fmt(v) for v in vals]))
    return "\n".join(lines) + "\n"


def wave_csv(p: Preset, grid_points: int, samples: int = 401) -> str:
    t = var.trial_wavefunction(p.parity, p.nu)
    a = sample_trial(t, samples)
    b = sample_oracle(oracle.solve_spectrum(p.nu, grid_points), 0 if p.parity == "even" else 1, a.xs)
    cmp = compare(a, b)
    sign = 1.0 if np.dot(a.values, b.values) >= 0 else -1.0
    lines = [f"# overlap={fmt(cmp.overlap)}", "x_over_L,psi_trial,psi_oracle"]
    for x, u, v in zip(a.xs, a.values, sign * b.values):
        lines.append(",".join([fmt(x), fmt(u), fmt(v)]))
    return "\n".join(lines) + "\n"


def script(name: str, p: Preset) -> str:
    data = f"{name}.csv"
    head = [
        "set terminal pngcairo size 800,600",
        f"set output '{name}.png'",
        'set datafile separator ","',
        "set key autotitle columnhead",
        f"set title '{p.title}'",
    ]
    if p.kind == "wave":
        body = [
            "set xlabel 'x/L'",
            "set ylabel 'sqrt(L) Psi'",
            f"plot '{data}' using 1:2 with lines lw 2 dt 2 title 'series trial', \\",
            f"     '{data}' using 1:3 with lines lw 2 lc rgb 'gray' title 'numerical'",
        ]
    elif p.kind == "orders":
        body = [
            "set xlabel 'nu = L/a'",
            "set ylabel 'epsilon'",
            f"set yrange [{p.yrange[0]}:{p.yrange[1]}]",
            f"plot '{data}' using 1:2 with lines dt 2 title 'through xi^2', \\",
            f"     '{data}' using 1:3 with lines lc rgb 'gray' title 'through xi^3', \\",
            f"     '{data}' using 1:4 with lines dt 3 title 'through xi^4'",
        ]
    else:
        plot = [
            f"plot '{data}' using 1:2 with lines dt 2 title 'closed form', \\",
            f"     '{data}' using 1:3 with lines lc rgb 'gray' title 'numerical'",
        ]
        body = [
            "set xlabel 'nu = L/a'",
            "set ylabel 'epsilon'",
            f"set yrange [{p.yrange[0]}:{p.yrange[1]}]",
        ]
        if p.inset is None:
            body += plot
        else:
            lo, hi = p.inset
            body = ["set multiplot"] + body + plot + [
                "set origin 0.45,0.15",
                "set size 0.45,0.4",
                f"set xrange [{lo}:{hi}]",
                "set autoscale y",
                "unset title",
                "unset key",
                "unset xlabel",
                "unset ylabel",
            ] + plot + ["unset multiplot"]
    return "\n".join(head + body) + "\n"


def write_preset(name: str, out_dir: Path, grid_points: int = oracle.DEFAULT_GRID) -> list[Path]:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    p = PRESETS[name]
    if p.kind == "curve":
        data = curve_csv(p, grid_points)
    elif p.kind == "orders":
        data = orders_csv(p)
    else:
        data = wave_csv(p, grid_points)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{name}.csv"
    gp_path = out_dir / f"{name}.gp"
    csv_path.write_text(data, encoding="utf-8", newline="\n")
    gp_path.write_text(script(name, p), encoding="utf-8", newline="\n")
    return [csv_path, gp_path]
