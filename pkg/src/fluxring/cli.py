"""Sweep-oriented command line: spectrum | gap | superpose | verify.

All energies are emitted dimensionless with the unit named in a
`# unit:` comment line (CSV) or a "unit" key (JSON).  Floats print as
%.12e and bools as 1/0, so identical requests produce byte-identical
files.  Exit codes: 0 success, 1 usage, 2 validation, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from .darkstate import FluxCase, case_of, classify_flux_case, epsilon_param
from .errors import (CaseError, ConvergenceError, DomainError, UsageError,
                     ValidationError, VerificationError)
from .harmonic import ground_quantum_numbers, harmonic_energy, harmonic_gap, mu
from .oracle import run_verification
from .params import FieldConfig, GeometryKind, GeometrySpec, as_geometry_kind, energy_unit
from .ring import ground_m, ring_gap, ring_spectrum_sweep
from .superposition import superpose_harmonic, superpose_ring

__all__ = ["main"]

_HARMONIC_N_VALUES = (0, 1, 2)  # radial levels tabulated by the harmonic sweep


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let grid values like -6:6:601 or -2,-1 pass as arguments
        self._negative_number_matcher = re.compile(r"^-\d|^-\.\d")

    def error(self, message):  # argparse would sys.exit(2); we own the exit codes
        raise UsageError(message)


def _parse_grid(text: str) -> np.ndarray:
    """Grid syntax: 'min:max:count' (inclusive, count >= 2), comma list, or one value."""
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise UsageError(f"range must be min:max:count, got {text!r}")
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 2:
                raise UsageError(f"range count must be >= 2, got {count}")
            values = np.linspace(lo, hi, count)
        elif "," in text:
            values = np.array([float(p) for p in text.split(",")])
        else:
            values = np.array([float(text)])
    except ValueError as exc:
        raise UsageError(f"could not parse grid {text!r}: {exc}") from exc
    if values.size == 0 or not np.all(np.isfinite(values)):
        raise UsageError(f"grid {text!r} must be non-empty and finite")
    return values


def _fmt_csv(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return "%.12e" % float(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, str):
        return value
    return float(value)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as handle:
            handle.write(text)


def _emit_table(unit: str, header: list[str], rows: list[tuple],
                fmt: str, out: str | None) -> None:
    if fmt == "csv":
        lines = [f"# unit: {unit}", ",".join(header)]
        lines.extend(",".join(_fmt_csv(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "unit": unit,
            "rows": [{k: _json_value(v) for k, v in zip(header, row)} for row in rows],
        }
        text = json.dumps(payload, indent=2) + "\n"
    _write(text, out)


def _unit_label(geometry: GeometryKind) -> str:
    spec = (GeometrySpec.ring() if geometry is GeometryKind.RING
            else GeometrySpec.harmonic())
    return energy_unit(spec).label


def _sigma_grid(args, ell: int, geometry: GeometryKind) -> np.ndarray:
    if args.sigma_ell is not None:
        return _parse_grid(args.sigma_ell)
    if geometry is GeometryKind.RING:
        return np.linspace(-6.0, 6.0, 601)
    if ell == 0:
        return np.array([0.0])
    return np.linspace(-float(ell), float(ell), 8 * ell + 1)


def _default_window(grid: np.ndarray) -> int:
    return math.ceil(float(np.max(np.abs(grid)))) + 2


def cmd_spectrum(args) -> int:
    geometry = as_geometry_kind(args.geometry)
    grid = _sigma_grid(args, args.ell, geometry)
    unit = _unit_label(geometry)
    if geometry is GeometryKind.RING:
        rows = [(r.sigma_ell, r.m, r.energy, r.is_ground, r.gap)
                for r in ring_spectrum_sweep(args.ell, grid, m_window=args.m_window)]
        _emit_table(unit, ["sigma_ell", "m", "energy", "is_ground", "gap"],
                    rows, args.format, args.out)
        return 0
    window = args.m_window if args.m_window is not None else _default_window(grid)
    window = int(window)
    worst = max(abs(ground_m(float(s))) for s in grid)
    if window < worst + 1:
        raise UsageError(
            f"m_window {window} does not cover the ground state and one neighbor "
            f"(need >= {worst + 1})")
    rows = []
    for s in grid:
        s = float(s)
        gap = harmonic_gap(args.ell, s)
        ground = ground_quantum_numbers(s)
        e_min = harmonic_energy(args.ell, s, *ground)
        for n in _HARMONIC_N_VALUES:
            for m in range(-window, window + 1):
                energy = harmonic_energy(args.ell, s, n, m)
                rows.append((s, n, m, mu(args.ell, s, m), energy,
                             energy == e_min, gap))
    _emit_table(unit, ["sigma_ell", "n", "m", "mu", "energy", "is_ground", "gap"],
                rows, args.format, args.out)
    return 0


def cmd_gap(args) -> int:
    geometry = as_geometry_kind(args.geometry)
    grid = _sigma_grid(args, args.ell, geometry)
    gap_of = ring_gap if geometry is GeometryKind.RING else harmonic_gap
    rows = [(float(s), gap_of(args.ell, float(s))) for s in grid]
    _emit_table(_unit_label(geometry), ["sigma_ell", "gap"], rows, args.format, args.out)
    return 0


def _superpose_point(args, geometry: GeometryKind) -> int:
    """Amplitude mode: classify the fields, then solve the single point."""
    missing = [flag for flag, value in (("--alpha-plus", args.alpha_plus),
                                        ("--alpha-minus", args.alpha_minus),
                                        ("--beta-mag2", args.beta_mag2))
               if value is None]
    if missing:
        raise UsageError(f"amplitude mode needs {', '.join(missing)}")
    if args.beta_mag2 < 0.0:
        raise DomainError(f"--beta-mag2 must be >= 0, got {args.beta_mag2}")
    config = FieldConfig(args.alpha_plus, args.alpha_minus,
                         beta=math.sqrt(args.beta_mag2),
                         theta=args.theta, ell=args.ell)
    verdict, spins = classify_flux_case(config)
    if verdict.case is FluxCase.NEITHER:
        raise CaseError(
            "amplitudes satisfy neither |beta|^2 = +a+a- nor |beta|^2 = -a+a- "
            f"(relative residual {verdict.residual})")
    if args.case != "auto" and case_of(args.case) is not verdict.case:
        raise CaseError(
            f"amplitudes classify as case ({verdict.case.value}), not ({args.case})")
    sigma = spins.sigma_plus
    delta_alpha = abs(args.alpha_plus - args.alpha_minus)
    eps = epsilon_param(delta_alpha, sigma, args.overlap_convention)
    solve = superpose_ring if geometry is GeometryKind.RING else superpose_harmonic
    result = solve(verdict.case, args.ell, sigma * args.ell, eps, args.theta)
    _write(json.dumps(result.to_dict(), indent=2) + "\n", args.out)
    return 0


def cmd_superpose(args) -> int:
    geometry = as_geometry_kind(args.geometry)
    if (args.alpha_plus is not None or args.alpha_minus is not None
            or args.beta_mag2 is not None):
        return _superpose_point(args, geometry)
    # sweep mode: integer sigma_ell list x delta_alpha grid
    if args.case == "auto":
        raise UsageError("--case auto needs field amplitudes; sweeps take --case i|ii")
    if args.sigma_ell is None or args.delta_alpha is None:
        raise UsageError("sweep mode needs --sigma-ell and --delta-alpha")
    if args.ell < 1:
        raise UsageError("sweep mode needs --ell >= 1")
    kind = case_of(args.case)
    sig_grid = _parse_grid(args.sigma_ell)
    da_grid = _parse_grid(args.delta_alpha)
    for s in sig_grid:
        if float(s) != int(s):
            raise UsageError(f"sigma_ell grid must be integers, got {float(s)}")
        if abs(s) >= args.ell:
            raise UsageError(
                f"|sigma_ell| = {abs(float(s))} must stay below ell = {args.ell}")
    solve = superpose_ring if geometry is GeometryKind.RING else superpose_harmonic
    rows = []
    for s in sig_grid:
        s = float(s)
        sigma = s / args.ell
        for da in da_grid:
            da = float(da)
            eps = epsilon_param(da, sigma, args.overlap_convention)
            result = solve(kind, args.ell, s, eps, args.theta)
            rows.append((kind.value, geometry.value, args.ell, s, da, eps,
                         result.delta_e, result.gap, result.mixing_ratio,
                         result.feasible))
    _emit_table(_unit_label(geometry),
                ["case", "geometry", "ell", "sigma_ell", "delta_alpha", "epsilon",
                 "delta_e", "gap", "mixing_ratio", "feasible"],
                rows, args.format, args.out)
    return 0


def cmd_verify(args) -> int:
    report = run_verification(ring_grid=args.ring_grid, radial_grid=args.radial_grid,
                              tolerance_scale=args.tolerance_scale)
    _write(json.dumps(report, indent=2) + "\n", args.out)
    if not report["all_passed"]:
        failing = [c["name"] for c in report["checks"] if not c["passed"]]
        print(f"verification failed: {', '.join(failing)}", file=sys.stderr)
        return 3
    return 0


def _add_output_flags(sub, with_format: bool = True) -> None:
    if with_format:
        sub.add_argument("--format", choices=["csv", "json"], default="csv",
                         help="table format (default csv)")
    sub.add_argument("--out", metavar="PATH",
                     help="write to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fluxring",
                     description="Spectra, gaps, and flux-tube superpositions of a "
                                 "dark-state atom in a light-induced gauge potential.")
    sub = parser.add_subparsers(dest="command", required=True)

    spectrum = sub.add_parser("spectrum", help="energy table over a sigma_ell grid")
    spectrum.add_argument("--geometry", choices=["ring", "harmonic"], required=True)
    spectrum.add_argument("--ell", type=int, required=True, help="winding number")
    spectrum.add_argument("--sigma-ell", metavar="GRID",
                          help="grid min:max:count, comma list, or value "
                               "(default ring -6:6:601, harmonic -ell:ell:8*ell+1)")
    spectrum.add_argument("--m-window", type=int,
                          help="tabulate |m| <= this (default ceil(max|sigma_ell|)+2)")
    _add_output_flags(spectrum)
    spectrum.set_defaults(func=cmd_spectrum)

    gap = sub.add_parser("gap", help="excitation gap over a sigma_ell grid")
    gap.add_argument("--geometry", choices=["ring", "harmonic"], required=True)
    gap.add_argument("--ell", type=int, required=True)
    gap.add_argument("--sigma-ell", metavar="GRID")
    _add_output_flags(gap)
    gap.set_defaults(func=cmd_gap)

    sup = sub.add_parser(
        "superpose",
        help="superposed flux-tube ground state: feasibility sweep or single point")
    sup.add_argument("--geometry", choices=["ring", "harmonic"], required=True)
    sup.add_argument("--case", choices=["i", "ii", "auto"], default="auto",
                     help="flux case; auto classifies from amplitudes")
    sup.add_argument("--ell", type=int, required=True)
    sup.add_argument("--sigma-ell", metavar="LIST",
                     help="integer sigma_ell values for the sweep")
    sup.add_argument("--delta-alpha", metavar="GRID",
                     help="coherent-amplitude separations for the sweep")
    sup.add_argument("--theta", type=float, default=0.0,
                     help="relative phase of the superposition (default 0)")
    sup.add_argument("--alpha-plus", type=float, help="amplitude of the +ell leg")
    sup.add_argument("--alpha-minus", type=float, help="amplitude of the -ell leg")
    sup.add_argument("--beta-mag2", type=float, help="|beta|^2 of the unwound leg")
    sup.add_argument("--overlap-convention", choices=["paper", "standard"],
                     default="paper",
                     help="epsilon damping exp(-da^2) (paper) or exp(-da^2/2)")
    _add_output_flags(sup)
    sup.set_defaults(func=cmd_superpose)

    verify = sub.add_parser("verify", help="run the numerical cross-check suite")
    verify.add_argument("--ring-grid", type=int, default=1024,
                        help="ring FD grid size (default 1024)")
    verify.add_argument("--radial-grid", type=int, default=4000,
                        help="radial FD grid size (default 4000)")
    verify.add_argument("--tolerance-scale", type=float, default=1.0,
                        help="multiply every check tolerance (default 1)")
    _add_output_flags(verify, with_format=False)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (VerificationError, ConvergenceError) as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
