"""
Command-line front end.

    dressedwave dressed --config run.json
    dressedwave deflect --figure 3a --out out/
    dressedwave oracle  --figure 3a --config oracle.json --out out/
    dressedwave check   --config run.json
    dressedwave sweep   --config sweep.json --out sweep/ --workers 4

Exit codes: 0 success, 1 validation error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import itertools
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .adiabaticity import regime_report
from .config import ConfigError, RunConfig, load_config
from .dressed import (
    decompose_ground,
    dressed_states,
    quasienergies,
    raman_coefficients,
)
from .errors import NumericalError
from .io import SCHEMA_VERSION, csv_text, fmt, json_text, write_all
from .oracle import position_density, raman_nath_check, run_oracle
from .potentials import interaction_alpha, interaction_beta, potential_curves
from .raman_nath import deflect_W1, deflect_W2, peak_table

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2


def _coeffs(cfg: RunConfig):
    try:
        return cfg.params.coefficients()
    except ValueError as exc:
        raise ConfigError(f"dressed basis undefined: {exc}") from None


def dressed_report(cfg: RunConfig) -> dict:
    p = cfg.params
    coeffs = _coeffs(cfg)
    w1, w2 = quasienergies(cfg.levels["omega_g"], cfg.levels["omega_e"], p.delta, coeffs.omega_rabi)
    phi1, phi2 = dressed_states(coeffs, p.phi_L)
    c1, c2 = decompose_ground(coeffs, p.phi_L)
    report = {
        "schema_version": SCHEMA_VERSION,
        "omega0": coeffs.omega_rabi,
        "d": p.d,
        "a": coeffs.a,
        "b": coeffs.b,
        "a2": coeffs.a**2,
        "b2": coeffs.b**2,
        "quasienergies": {"omega_1": w1, "omega_2": w2},
        "dressed_states": {
            "Phi_1": {"g": phi1.coeff_g, "e": phi1.coeff_e},
            "Phi_2": {"g": phi2.coeff_g, "e": phi2.coeff_e},
        },
        "ground_decomposition": {"Phi_1": c1, "Phi_2": c2},
        "raman_coefficients": [list(row) for row in raman_coefficients(coeffs, p.phi_L)],
    }
    if p.t_int > 0:
        report["alpha"] = interaction_alpha(p)
        report["beta"] = interaction_beta(p)
    return report


def deflect_files(cfg: RunConfig, stem: str = "") -> dict[str, str]:
    """Rendered outputs of one deflection run, keyed by file name."""
    p = cfg.params
    if p.t_int <= 0:
        raise ConfigError("deflection needs a positive interaction time (params.gt or params.t_int)")
    coeffs = _coeffs(cfg)
    if cfg.config_tag == "A":
        shift = interaction_alpha(p)
        dist = deflect_W1(cfg.field, coeffs, shift, p.phase, cfg.k_dx, cfg.momentum_grid)
    else:
        shift = interaction_beta(p)
        dist = deflect_W2(cfg.field, coeffs, shift, p.phase, cfg.k_dx, cfg.momentum_grid,
                          cfg.phase_convention)
    peaks = {
        "schema_version": SCHEMA_VERSION,
        "config": cfg.config_tag,
        "figure": cfg.figure,
        "shift_name": "alpha" if cfg.config_tag == "A" else "beta",
        "shift": shift,
        "k_dx": cfg.k_dx,
        "weight_sum": dist.total_weight(),
        "integral": dist.integral(),
        "peaks": peak_table(dist),
    }
    density = csv_text(["p_bar", "W"], [dist.grid.points, dist.density])
    if stem:
        return {f"{stem}.csv": density, f"{stem}.peaks.json": json_text(peaks)}
    x = np.linspace(-math.pi, math.pi, 257)
    plus, minus = potential_curves(cfg.config_tag, 1, x, p)
    return {
        "density.csv": density,
        "peaks.json": json_text(peaks),
        "potential.csv": csv_text(["x", "U_plus", "U_minus"], [x, plus.U, minus.U]),
    }


def oracle_files(cfg: RunConfig) -> tuple[dict[str, str], dict]:
    o = cfg.oracle
    if "dt" not in o:
        raise ConfigError("oracle needs 'oracle.dt' in the config")
    if cfg.params.t_int <= 0:
        raise ConfigError("oracle needs a positive interaction time")
    _coeffs(cfg)
    eps = float(o.get("epsilon", cfg.params.epsilon))
    linearized = bool(o.get("linearized", False))
    center = float(o.get("center_x", 0.0))
    run = run_oracle(cfg.config_tag, cfg.field, cfg.params, cfg.k_dx, epsilon=eps, dt=float(o["dt"]),
                     linearized=linearized, center_x=center, momentum=cfg.momentum_grid)
    grid = run.final.grid
    report = {
        "schema_version": SCHEMA_VERSION,
        "config": cfg.config_tag,
        "figure": cfg.figure,
        "epsilon": eps,
        "dt": run.dt,
        "linearized": linearized,
        "center_x": center,
        "tv_distance": run.tv,
        "oracle_integral": run.oracle.integral(),
        "analytic_integral": run.analytic.integral(),
        "spatial_grid": {"x_min": grid.x_min, "x_max": grid.x_max, "n_points": grid.n_points},
        "channels": [{"label": ch.label, "weight": ch.weight} for ch in run.final.channels],
        "propagation": list(run.final.log),
    }
    if "epsilon_list" in o:
        report["raman_nath_check"] = raman_nath_check(
            cfg.params, cfg.field, cfg.config_tag, cfg.k_dx, o["epsilon_list"],
            linearized=linearized, dt=float(o["dt"]), center_x=center)
    p = run.analytic.grid.points
    files = {
        "oracle_density.csv": csv_text(["p_bar", "W"], [p, run.oracle.density]),
        "analytic_density.csv": csv_text(["p_bar", "W"], [p, run.analytic.density]),
        "position_density.csv": csv_text(
            ["x"] + [ch.label for ch in run.final.channels],
            [grid.points, *position_density(run.final)]),
        "oracle_report.json": json_text(report),
    }
    return files, report


def _point_name(overrides: dict) -> str:
    return "__".join(f"{k}={v!r}" for k, v in overrides.items())


def _sweep_point(args):
    cfg, overrides = args
    point = cfg.with_overrides(overrides)
    return deflect_files(point, _point_name(overrides))


def sweep_files(cfg: RunConfig, workers: int = 1) -> dict[str, str]:
    if not cfg.sweep:
        raise ConfigError("sweep needs at least one axis in 'sweep'")
    names = [name for name, _ in cfg.sweep]
    if len(set(names)) != len(names):
        raise ConfigError("sweep axes must be distinct")
    points = [dict(zip(names, combo)) for combo in itertools.product(*(v for _, v in cfg.sweep))]
    labels = [_point_name(pt) for pt in points]
    if len(set(labels)) != len(labels):
        raise ConfigError("sweep produces colliding output names (duplicate values?)")
    # validate every point before any computation
    for pt in points:
        cfg.with_overrides(pt)
    jobs = [(cfg, pt) for pt in points]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_point, jobs))
    else:
        results = [_sweep_point(job) for job in jobs]
    files = {}
    entries = []
    for pt, label, rendered in zip(points, labels, results):
        files.update(rendered)
        entries.append({"name": label, "overrides": pt, "files": sorted(rendered)})
    files["manifest.json"] = json_text({
        "schema_version": SCHEMA_VERSION,
        "config": cfg.config_tag,
        "axes": [{"name": n, "values": list(v)} for n, v in cfg.sweep],
        "points": entries,
    })
    return files


def check_report(cfg: RunConfig) -> dict:
    report = regime_report(cfg.params, cfg.threshold).to_dict()
    report["gt_upper_unbounded"] = math.isinf(report["gt_window"][1])
    report["gt_lower_unbounded"] = math.isinf(report["gt_window"][0])
    return {"schema_version": SCHEMA_VERSION, **report}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dressedwave", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("dressed", "dressed-state coefficients and quasienergies"),
        ("deflect", "closed-form deflection momentum distribution"),
        ("oracle", "wave-packet propagation compared with the closed form"),
        ("check", "validity-regime report"),
        ("sweep", "deflection over a grid of parameter values"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON run configuration")
        p.add_argument("--figure", choices=["3a", "3b", "4a", "4b"], help="figure preset")
        p.add_argument("--out", help="output directory")
        p.add_argument("--workers", type=int, default=1, help="parallel sweep workers")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.workers < 1:
            raise ConfigError("--workers must be at least 1")
        cfg = load_config(args.config, args.figure)
        out = args.out
        if args.command == "dressed":
            report = dressed_report(cfg)
            text = json_text(report)
            if out:
                write_all({"dressed.json": text}, out)
            sys.stdout.write(text)
        elif args.command == "check":
            text = json_text(check_report(cfg))
            if out:
                write_all({"regime.json": text}, out)
            sys.stdout.write(text)
        elif args.command == "deflect":
            files = deflect_files(cfg)
            write_all(files, out or "out")
            sys.stdout.write(files["peaks.json"])
        elif args.command == "oracle":
            files, _ = oracle_files(cfg)
            write_all(files, out or "out")
            sys.stdout.write(files["oracle_report.json"])
        elif args.command == "sweep":
            files = sweep_files(cfg, args.workers)
            write_all(files, out or "out")
            sys.stdout.write(files["manifest.json"])
    except NumericalError as exc:
        print(f"dressedwave: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, ValueError) as exc:
        print(f"dressedwave: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
