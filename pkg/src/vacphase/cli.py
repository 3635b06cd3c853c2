"""Command line front end.

    vacphase phase  --config exp.json [--format text|json] [--degrees] [--wrap]
    vacphase sweep  --config sweep.json --out result.csv
    vacphase verify --config exp.json
    vacphase modes  --eps1 2.5 --eps2 1.5 --eps3 2.0

Exit codes: 0 success, 1 verification or physics failure, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import ExperimentConfig, SweepSpec, load_json
from .errors import ConfigInvalid, EvanescentMode, IoFailure, VacPhaseError
from .geometry import cycle_period, polar_angle, precession_frequency, solid_angle
from .media import GyroelectricTensor, permittivity_matrix, refractive_indices, transverse_eigenmodes
from .phase_engine import total_phase

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

RESULT_COLUMNS = (
    "n_plus",
    "n_minus",
    "theta_rad",
    "omega_plus",
    "omega_minus",
    "phi0_R",
    "phi0_L",
    "phi_quantum",
    "phi_vac_R",
    "phi_vac_L",
    "phi_vac_total",
    "phi_total",
)


def wrap_phase(x: float) -> float:
    """Map an accumulated phase into (-pi, pi]."""
    y = math.remainder(x, 2 * math.pi)
    return math.pi if y == -math.pi else y


def final_time(config: ExperimentConfig) -> float:
    if config.time_mode == "seconds":
        return config.time_value
    n_plus, _ = refractive_indices(config.medium)
    return config.time_value * cycle_period(config.helix, n_plus)


def evaluate(config: ExperimentConfig) -> dict:
    """Everything ``phase`` reports, as a flat record of floats and labels."""
    t = final_time(config)
    b = total_phase(config.occupation, config.helix, config.medium, t, config.ordering)
    n_plus, n_minus = b.metadata["n_plus"], b.metadata["n_minus"]
    theta = polar_angle(config.helix)
    record = {
        "n_plus": n_plus,
        "n_minus": n_minus,
        "theta_rad": theta,
        "omega_plus": precession_frequency(config.helix, n_plus),
        "omega_minus": precession_frequency(config.helix, n_minus),
        "T_plus": cycle_period(config.helix, n_plus),
        "T_minus": cycle_period(config.helix, n_minus),
        "solid_angle": solid_angle(theta),
        "t_final": t,
    }
    record.update(b.as_dict())
    record["ordering"] = b.metadata["ordering"]
    record["turn_factor"] = b.metadata["turn_factor"]
    record["eps3"] = b.metadata["eps3"]
    return record


ANGLE_KEYS = {"theta_rad", "phi0_R", "phi0_L", "phi_quantum", "phi_vac_R", "phi_vac_L", "phi_vac_total", "phi_total"}
PHASE_KEYS = ANGLE_KEYS - {"theta_rad"}


def format_report(record: dict, config: ExperimentConfig, degrees=False, wrap=False) -> str:
    lines = ["# vacphase phase report"]
    for key, value in record.items():
        if isinstance(value, str):
            lines.append(f"{key:14s} = {value}")
            continue
        shown = value
        unit = ""
        if key in ANGLE_KEYS:
            shown, unit = (math.degrees(value), " deg") if degrees else (value, " rad")
        lines.append(f"{key:14s} = {shown:.12g}{unit}")
        if wrap and key in PHASE_KEYS:
            w = wrap_phase(value)
            w = math.degrees(w) if degrees else w
            lines.append(f"{key + ' (wrapped)':14s} = {w:.12g}{unit}")
    lines.append("# config")
    lines.append(json.dumps(config.raw, sort_keys=True))
    return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(v)
    # fold signed zero so equal values print identically
    return format(float(v) + 0.0, ".17g")


def _sweep_row(point):
    values, config = point
    try:
        record = evaluate(config)
    except EvanescentMode as exc:
        return [_fmt(v) for v in values] + [""] * len(RESULT_COLUMNS) + [str(exc)]
    return [_fmt(v) for v in values] + [_fmt(record[c]) for c in RESULT_COLUMNS] + [""]


def sweep_threads() -> int | None:
    raw = os.environ.get("VACPHASE_THREADS")
    if raw is None or raw == "":
        return None
    try:
        n = int(raw)
    except ValueError:
        raise ConfigInvalid("VACPHASE_THREADS", f"expected a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigInvalid("VACPHASE_THREADS", f"expected a positive integer, got {raw!r}")
    return n


def sweep_csv(spec: SweepSpec, threads: int | None = None) -> str:
    points = []
    for i, (values, raw) in enumerate(spec.points()):
        try:
            points.append((values, ExperimentConfig.from_dict(raw)))
        except ConfigInvalid as exc:
            raise ConfigInvalid(exc.path, f"grid point {i} {values}: {exc}") from None
    if threads == 1:
        rows = list(map(_sweep_row, points))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_sweep_row, points))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([a.path for a in spec.axes] + list(RESULT_COLUMNS) + ["error"])
    writer.writerows(rows)
    return buf.getvalue()


def run_phase(args) -> int:
    config = ExperimentConfig.from_dict(load_json(args.config))
    record = evaluate(config)
    if args.format == "json":
        out = dict(record, config=config.raw)
        sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(format_report(record, config, args.degrees, args.wrap))
    return EXIT_OK


def run_sweep(args) -> int:
    spec = SweepSpec.from_dict(load_json(args.config))
    text = sweep_csv(spec, sweep_threads())
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write {args.out}: {exc.strerror}") from exc
    return EXIT_OK


def run_verify(args) -> int:
    from .verification import run_suite

    config = ExperimentConfig.from_dict(load_json(args.config))
    checks = run_suite(config)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.measured}")
    failed = [c.name for c in checks if not c.passed]
    if failed:
        print(f"{len(failed)} of {len(checks)} checks failed: {', '.join(failed)}")
        return EXIT_FAIL
    print(f"all {len(checks)} checks passed (tolerance {config.oracle.tolerance:g})")
    return EXIT_OK


def _vec(v):
    return "(" + ", ".join(f"{z.real:+.6f}{z.imag:+.6f}i" for z in v) + ")"


def run_modes(args) -> int:
    medium = GyroelectricTensor(args.eps1, args.eps2, args.eps3)
    eps = permittivity_matrix(medium)
    print("permittivity tensor:")
    for row in eps:
        print("  " + "  ".join(f"{z.real:+10.4f}{z.imag:+10.4f}i" for z in row))
    for mode in transverse_eigenmodes(medium):
        hand = "right-handed" if mode.label == "R" else "left-handed"
        print(f"mode {mode.label} ({hand}): eigenvalue {mode.eigenvalue:.12g}, Jones vector {_vec(mode.vector)}")
    if medium.eps2 == 0:
        print("degenerate: eps2 = 0, both circular modes share n = sqrt(eps1)")
    try:
        n_plus, n_minus = refractive_indices(medium)
    except EvanescentMode:
        for name, value in (("n_plus", medium.eps1 + medium.eps2), ("n_minus", medium.eps1 - medium.eps2)):
            if value <= 0:
                sign = "+" if name == "n_plus" else "-"
                print(f"advisory: {name} evanescent (eps1 {sign} eps2 = {value:g})")
            else:
                print(f"{name} = {math.sqrt(value):.12g}")
        return EXIT_OK
    print(f"n_plus  = {n_plus:.12g}  (R)")
    print(f"n_minus = {n_minus:.12g}  (L)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vacphase", description=__doc__.split("\n")[0] or None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase", help="phases for a single configuration")
    p.add_argument("--config", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--degrees", action="store_true", help="show angles in degrees (text only)")
    p.add_argument("--wrap", action="store_true", help="also show phases wrapped into (-pi, pi]")
    p.set_defaults(func=run_phase)

    p = sub.add_parser("sweep", help="parameter sweep to CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=run_sweep)

    p = sub.add_parser("verify", help="run the oracle suite")
    p.add_argument("--config", required=True)
    p.set_defaults(func=run_verify)

    p = sub.add_parser("modes", help="circular eigenmodes of a gyroelectric medium")
    p.add_argument("--eps1", type=float, required=True)
    p.add_argument("--eps2", type=float, required=True)
    p.add_argument("--eps3", type=float, required=True)
    p.set_defaults(func=run_modes)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ConfigInvalid, IoFailure) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EvanescentMode as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except VacPhaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
