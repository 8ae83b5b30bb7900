"""Command-line front-end.

Subcommands: levels, potential, sweep, validate, oracle-check.  Data streams
are deterministic (17-significant-digit CSV or sorted JSON, no timestamps);
only the validate report carries a timestamp, in a header comment.  Exit
codes: 0 success, 1 acceptance/check failure, 2 usage or parameter error,
3 no bound states at all.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone
from typing import Optional

import numpy as np

from . import validate as validate_mod
from .errors import GridTooCoarse, InvalidParameter, NoBoundState, ParseError, SolverError
from .molecules import Molecule, find_molecule, load_molecules, to_potential_params
from .nonrel import ParticleSpec, energy_nonrel, level_indices, spectrum_table
from .potential import PotentialParams, potential_curve
from .relativistic import (
    QuantumNumbers,
    kg_printed_eq_residual,
    kg_residual,
    pseudospin_printed_eq_residual,
    pseudospin_residual,
    solve_dirac_pseudospin,
    solve_dirac_spin,
    solve_kg_energy,
    spin_printed_eq_residual,
    spin_residual,
)
from .units import UnitConstants, read_config

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NO_BOUND_STATE = 3


def _fmt(x: Optional[float]) -> str:
    if x is None:
        return ""
    return f"{x:.17g}"


def _emit(stream, lines) -> None:
    for line in lines:
        print(line, file=stream)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--molecule", default=None, help="built-in or --molecule-file name")
    sub.add_argument("--molecule-file", default=None, help="CSV of molecule records")
    sub.add_argument("--a", type=float, default=0.0, help="Coulomb strength a (eV*A)")
    sub.add_argument("--b", type=float, default=0.0, help="Yukawa strength b (eV*A)")
    sub.add_argument("--alpha", type=float, default=0.025, help="screening parameter (1/A)")
    sub.add_argument("--De-cm", dest="De_cm", type=float, default=None, help="well depth (cm^-1), explicit mode")
    sub.add_argument("--re", type=float, default=None, help="equilibrium bond length (A), explicit mode")
    sub.add_argument("--mu-amu", dest="mu_amu", type=float, default=None, help="reduced mass (amu), explicit mode")
    sub.add_argument("--config", default=None, help="key = value file; unit constants and b_sign")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def _load_setup(args) -> tuple[str, PotentialParams, ParticleSpec, UnitConstants]:
    cfg = read_config(args.config) if args.config else {}
    units = UnitConstants.from_mapping(cfg)
    b_sign = float(cfg.get("b_sign", "1"))
    if args.molecule is not None:
        pool = load_molecules(args.molecule_file) if args.molecule_file else None
        molecule = find_molecule(args.molecule, pool)
    elif args.De_cm is not None and args.re is not None and args.mu_amu is not None:
        molecule = Molecule("custom", args.De_cm, args.re, args.mu_amu)
    else:
        raise InvalidParameter("provide --molecule or all of --De-cm/--re/--mu-amu")
    params, part = to_potential_params(molecule, args.a, args.b, args.alpha, units, b_sign)
    return molecule.name, params, part, units


def _parse_kappas(text: str) -> list[int]:
    try:
        kappas = [int(piece) for piece in text.split(",") if piece.strip()]
    except ValueError as exc:
        raise InvalidParameter(f"bad --kappa list {text!r}") from exc
    if not kappas or any(k == 0 for k in kappas):
        raise InvalidParameter("kappa list must be nonzero integers")
    return kappas


def cmd_levels(args, out) -> int:
    name, params, part, units = _load_setup(args)
    l_max = args.n_max if args.l_max is None else args.l_max
    rows: list[dict] = []
    any_ok = False
    if args.model == "nonrel":
        table = spectrum_table(
            name, params, part, args.n_max, l_max,
            oracle=args.oracle, oracle_points=args.grid_points, rectangular=args.rectangular,
        )
        for row in table.rows:
            rows.append({
                "molecule": row.molecule, "model": row.model, "n": row.n, "l": row.l,
                "kappa": None, "D": None, "E_eV": row.E_eV,
                "oracle_E_eV": row.oracle_E_eV, "abs_dev_eV": row.abs_dev_eV,
                "residual": None, "cross_check_residual": None, "status": "ok",
            })
        any_ok = bool(rows)
    else:
        if args.mass is None:
            raise InvalidParameter(f"--mass is required for model {args.model!r}")
        M = args.mass
        hc = units.hbar_c
        if args.model == "kg":
            for n, l in level_indices(args.n_max, l_max, args.rectangular):
                qn = QuantumNumbers(n=n, l=l, D=args.dimension)
                try:
                    for E in solve_kg_energy(params, M, qn, scan_points=args.scan_points, tol=args.tol, hbar_c=hc):
                        rows.append({
                            "molecule": name, "model": "kg", "n": n, "l": l, "kappa": None,
                            "D": args.dimension, "E_eV": E, "oracle_E_eV": None, "abs_dev_eV": None,
                            "residual": kg_residual(params, M, E, qn, hc),
                            "cross_check_residual": kg_printed_eq_residual(params, M, E, qn, hc),
                            "status": "ok",
                        })
                    any_ok = True
                except NoBoundState:
                    rows.append({
                        "molecule": name, "model": "kg", "n": n, "l": l, "kappa": None,
                        "D": args.dimension, "E_eV": None, "oracle_E_eV": None, "abs_dev_eV": None,
                        "residual": None, "cross_check_residual": None, "status": "no_bound_state",
                    })
        else:
            is_spin = args.model == "dirac-spin"
            solver = solve_dirac_spin if is_spin else solve_dirac_pseudospin
            Cx = args.cs if is_spin else args.cps
            for n in range(args.n_max + 1):
                for kappa in _parse_kappas(args.kappa):
                    try:
                        energies = solver(
                            params, M, kappa, Cx, n,
                            scan_points=args.scan_points, tol=args.tol,
                            all_roots=args.all_roots, hbar_c=hc,
                        )
                    except NoBoundState:
                        rows.append({
                            "molecule": name, "model": args.model, "n": n, "l": None, "kappa": kappa,
                            "D": None, "E_eV": None, "oracle_E_eV": None, "abs_dev_eV": None,
                            "residual": None, "cross_check_residual": None, "status": "no_bound_state",
                        })
                        continue
                    any_ok = True
                    for E in energies:
                        if is_spin:
                            res = spin_residual(params, M, E, kappa, Cx, n, hc)
                            cross = spin_printed_eq_residual(params, M, E, kappa, Cx, n, hc)
                        else:
                            res = pseudospin_residual(params, M, E, kappa, Cx, n, hc)
                            cross = pseudospin_printed_eq_residual(params, M, E, kappa, Cx, n, hc)
                        rows.append({
                            "molecule": name, "model": args.model, "n": n, "l": None, "kappa": kappa,
                            "D": None, "E_eV": E, "oracle_E_eV": None, "abs_dev_eV": None,
                            "residual": res, "cross_check_residual": cross, "status": "ok",
                        })
    if not any_ok:
        print("no bound states for any requested level", file=sys.stderr)
        return EXIT_NO_BOUND_STATE
    if args.format == "json":
        print(json.dumps({"rows": rows}, sort_keys=True, indent=None, separators=(",", ":"),
                         default=lambda v: None), file=out)
    else:
        if args.model == "nonrel":
            _emit(out, ["molecule,model,n,l,E_eV,oracle_E_eV,abs_dev_eV"])
            for r in rows:
                _emit(out, [f"{r['molecule']},{r['model']},{r['n']},{r['l']},{_fmt(r['E_eV'])},"
                            f"{_fmt(r['oracle_E_eV'])},{_fmt(r['abs_dev_eV'])}"])
        else:
            _emit(out, ["molecule,model,n,l,kappa,D,E_eV,residual,cross_check_residual"])
            for r in rows:
                l_txt = "" if r["l"] is None else str(r["l"])
                k_txt = "" if r["kappa"] is None else str(r["kappa"])
                d_txt = "" if r["D"] is None else str(r["D"])
                if r["status"] != "ok":
                    # keep data rows strictly on the documented columns;
                    # unsolved states surface as deterministic comments
                    _emit(out, [f"# {r['status']}: n={r['n']} l={l_txt} kappa={k_txt}"])
                else:
                    _emit(out, [f"{r['molecule']},{r['model']},{r['n']},{l_txt},{k_txt},{d_txt},"
                                f"{_fmt(r['E_eV'])},{_fmt(r['residual'])},{_fmt(r['cross_check_residual'])}"])
    return EXIT_OK


def cmd_potential(args, out) -> int:
    _, params, _, _ = _load_setup(args)
    curve = potential_curve(params, args.r_min, args.r_max, args.samples)
    if args.format == "json":
        print(json.dumps({"rows": [[f"{v:.17g}" for v in row] for row in curve]}, sort_keys=True), file=out)
    else:
        _emit(out, ["r,V_exact,V_approx"])
        for r, ve, va in curve:
            _emit(out, [f"{r:.17g},{ve:.17g},{va:.17g}"])
    return EXIT_OK


def _sweep_states(args, p_i: PotentialParams, part_i: ParticleSpec, units, pairs):
    """(n, second-label, E-or-None, status) for every requested state."""
    out = []
    if args.model == "nonrel":
        for n, l in pairs:
            out.append((n, l, energy_nonrel(p_i, part_i, n, l), "ok"))
        return out
    M = args.mass
    if args.model == "kg":
        for n, l in pairs:
            try:
                E = solve_kg_energy(p_i, M, QuantumNumbers(n=n, l=l, D=args.dimension),
                                    scan_points=args.scan_points, tol=args.tol, hbar_c=units.hbar_c)[0]
                out.append((n, l, E, "ok"))
            except NoBoundState:
                out.append((n, l, None, "no_bound_state"))
        return out
    is_spin = args.model == "dirac-spin"
    solver = solve_dirac_spin if is_spin else solve_dirac_pseudospin
    Cx = args.cs if is_spin else args.cps
    for n in range(args.n_max + 1):
        for kappa in _parse_kappas(args.kappa):
            try:
                E = solver(p_i, M, kappa, Cx, n, scan_points=args.scan_points,
                           tol=args.tol, all_roots=args.all_roots, hbar_c=units.hbar_c)[0]
                out.append((n, kappa, E, "ok"))
            except NoBoundState:
                out.append((n, kappa, None, "no_bound_state"))
    return out


def cmd_sweep(args, out) -> int:
    name, params, part, units = _load_setup(args)
    if args.steps < 2:
        raise InvalidParameter(f"--steps must be >= 2, got {args.steps!r}")
    if args.model != "nonrel" and args.mass is None:
        raise InvalidParameter(f"--mass is required for model {args.model!r}")
    values = np.linspace(args.start, args.stop, args.steps)
    l_max = args.n_max if args.l_max is None else args.l_max
    if args.model in ("nonrel", "kg"):
        pairs = level_indices(args.n_max, l_max, args.rectangular)
        keys = pairs
    else:
        pairs = None
        keys = [(n, kappa) for n in range(args.n_max + 1) for kappa in _parse_kappas(args.kappa)]
    rows = []
    series: dict[tuple[int, int], list[float]] = {key: [] for key in keys}
    for value in values:
        a, b, alpha = params.a, params.b, params.alpha
        De, re, mu = params.D_e, params.r_e, part.mu_energy
        if args.param == "a":
            a = float(value)
        elif args.param == "b":
            b = float(value)
        elif args.param == "alpha":
            alpha = float(value)
        elif args.param == "De":
            De = float(value) * units.cm_inv_to_ev
        elif args.param == "re":
            re = float(value)
        try:
            p_i = PotentialParams(a=a, b=b, D_e=De, r_e=re, alpha=alpha)
        except InvalidParameter:
            for key in keys:
                rows.append((float(value), key[0], key[1], None, "invalid_parameter"))
                series[key].append(math.nan)
            continue
        part_i = ParticleSpec(mu, units.hbar_c)
        for n, second, E, status in _sweep_states(args, p_i, part_i, units, pairs):
            rows.append((float(value), n, second, E, status))
            series[(n, second)].append(E if E is not None else math.nan)
    second_label = "l" if args.model in ("nonrel", "kg") else "kappa"
    shapes = []
    for (n, second), column in series.items():
        clean = [v for v in column if not math.isnan(v)]
        if len(clean) < 2:
            shape = "undetermined"
        elif all(y > x for x, y in zip(clean, clean[1:])):
            shape = "monotonic increasing"
        elif all(y < x for x, y in zip(clean, clean[1:])):
            shape = "monotonic decreasing"
        else:
            peak = values[int(np.nanargmax(np.array(column)))]
            shape = f"non-monotonic (max near {args.param} = {peak:.6g})"
        shapes.append(f"n={n} {second_label}={second}: {shape}")
    if args.format == "json":
        print(json.dumps({
            "param": args.param,
            "rows": [[f"{v:.17g}", n, second, None if E is None else f"{E:.17g}", status]
                     for v, n, second, E, status in rows],
            "shape": shapes,
        }, sort_keys=True), file=out)
    else:
        _emit(out, [f"{args.param},n,{second_label},E_eV,status"])
        for v, n, second, E, status in rows:
            _emit(out, [f"{v:.17g},{n},{second},{_fmt(E)},{status}"])
        for line in shapes:
            _emit(out, [f"# shape {line}"])
    return EXIT_OK


def cmd_validate(args, out) -> int:
    cfg = read_config(args.config) if args.config else {}
    units = UnitConstants.from_mapping(cfg)
    try:
        rows = validate_mod.load_reference(args.table2)
    except FileNotFoundError:
        print(f"reference file not found: {args.table2}", file=sys.stderr)
        return EXIT_USAGE
    validate_mod.check_reference_shape(rows)
    calibrated = None
    if args.calibrate:
        calibrated = validate_mod.calibrate(rows, args.alpha, grid=args.calibration_grid, u=units)
    stamp = None if args.no_timestamp else datetime.now(timezone.utc).isoformat()
    report = validate_mod.build_report(rows, calibrated, args.a, args.b, args.alpha, units,
                                       timestamp=stamp, grid=args.calibration_grid)
    print(report, end="", file=out)
    gates_ok = "gate E(n+1,l) > E(n,l) for n < 5, every molecule: PASS" in report and \
               "gate HCl n=1 ordering E(1,0) < E(1,1): PASS" in report
    return EXIT_OK if gates_ok else EXIT_CHECK_FAILED


def cmd_oracle_check(args, out) -> int:
    from .checks import MODEL_CHECKS, ORACLE_CSV_HEADER, oracle_comparison_rows, run_checks

    cfg = read_config(args.config) if args.config else {}
    units = UnitConstants.from_mapping(cfg)
    molecules = [find_molecule(name) for name in args.molecules.split(",") if name]
    models = [m for m in args.models.split(",") if m]
    if not models or not molecules:
        raise InvalidParameter("model and molecule lists must be nonempty")
    unknown = [m for m in models if m not in MODEL_CHECKS]
    if unknown:
        raise InvalidParameter(f"unknown models {unknown!r}")
    if args.details:
        _emit(out, [ORACLE_CSV_HEADER])
        for mol in molecules:
            _emit(out, [f"# molecule = {mol.name}"])
            rows, _ = oracle_comparison_rows(mol, args.alpha, units, args.grid_points)
            _emit(out, rows)
    try:
        checks = run_checks(molecules, models, args.alpha, units, args.grid_points)
    except GridTooCoarse as exc:
        print(f"grid too coarse: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    ok_all = True
    for name, ok, detail in checks:
        ok_all = ok_all and ok
        _emit(out, [f"{name} {'PASS' if ok else 'FAIL'} {detail}"])
    return EXIT_OK if ok_all else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hgmorse",
                                     description="Bound-state spectra for the Hellmann plus generalized-Morse potential")
    sub = parser.add_subparsers(dest="command", required=True)

    p_levels = sub.add_parser("levels", help="energy level table")
    _add_common(p_levels)
    p_levels.add_argument("--model", choices=("nonrel", "kg", "dirac-spin", "dirac-pseudospin"), default="nonrel")
    p_levels.add_argument("--n-max", dest="n_max", type=int, default=5)
    p_levels.add_argument("--l-max", dest="l_max", type=int, default=None)
    p_levels.add_argument("--rectangular", action="store_true", help="full (n, l) grid instead of l <= n")
    p_levels.add_argument("--mass", type=float, default=None, help="M (eV), relativistic models")
    p_levels.add_argument("--cs", type=float, default=0.0, help="spin-symmetry constant C_s (eV)")
    p_levels.add_argument("--cps", type=float, default=0.0, help="pseudospin constant C_ps (eV)")
    p_levels.add_argument("--kappa", default="-1", help="comma list of kappa values")
    p_levels.add_argument("--dimension", type=int, default=3, help="D for the kg model")
    p_levels.add_argument("--oracle", action="store_true", help="add FD-oracle deviation columns (nonrel)")
    p_levels.add_argument("--grid-points", dest="grid_points", type=int, default=20001)
    p_levels.add_argument("--scan-points", dest="scan_points", type=int, default=2000)
    p_levels.add_argument("--tol", type=float, default=1e-12)
    p_levels.add_argument("--all-roots", dest="all_roots", action="store_true")
    p_levels.set_defaults(func=cmd_levels)

    p_pot = sub.add_parser("potential", help="potential curve samples")
    _add_common(p_pot)
    p_pot.add_argument("--r-min", dest="r_min", type=float, default=0.5)
    p_pot.add_argument("--r-max", dest="r_max", type=float, default=10.0)
    p_pot.add_argument("--samples", type=int, default=200)
    p_pot.set_defaults(func=cmd_potential)

    p_sweep = sub.add_parser("sweep", help="parameter sweep of energy levels")
    _add_common(p_sweep)
    p_sweep.add_argument("--model", choices=("nonrel", "kg", "dirac-spin", "dirac-pseudospin"), default="nonrel")
    p_sweep.add_argument("--param", choices=("alpha", "a", "b", "De", "re"), required=True)
    p_sweep.add_argument("--from", dest="start", type=float, required=True)
    p_sweep.add_argument("--to", dest="stop", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--n-max", dest="n_max", type=int, default=0)
    p_sweep.add_argument("--l-max", dest="l_max", type=int, default=None)
    p_sweep.add_argument("--rectangular", action="store_true")
    p_sweep.add_argument("--mass", type=float, default=None, help="M (eV), relativistic models")
    p_sweep.add_argument("--cs", type=float, default=0.0)
    p_sweep.add_argument("--cps", type=float, default=0.0)
    p_sweep.add_argument("--kappa", default="-1")
    p_sweep.add_argument("--dimension", type=int, default=3)
    p_sweep.add_argument("--scan-points", dest="scan_points", type=int, default=2000)
    p_sweep.add_argument("--tol", type=float, default=1e-12)
    p_sweep.add_argument("--all-roots", dest="all_roots", action="store_true")
    p_sweep.set_defaults(func=cmd_sweep)

    p_val = sub.add_parser("validate", help="score against the shipped reference table")
    p_val.add_argument("--table2", default=None, help="reference CSV (default: packaged)")
    p_val.add_argument("--calibrate", action="store_true")
    p_val.add_argument("--calibration-grid", type=int, default=51)
    p_val.add_argument("--a", type=float, default=0.0)
    p_val.add_argument("--b", type=float, default=0.0)
    p_val.add_argument("--alpha", type=float, default=0.025)
    p_val.add_argument("--config", default=None)
    p_val.add_argument("--no-timestamp", action="store_true", help="omit the header timestamp comment")
    p_val.set_defaults(func=cmd_validate)

    p_chk = sub.add_parser("oracle-check", help="closed-form vs oracle comparisons")
    p_chk.add_argument("--molecules", default="CH", help="comma list of built-in molecules")
    p_chk.add_argument("--models", default="nonrel,kg",
                       help="comma list from {nonrel,kg,dirac-spin,dirac-pseudospin}")
    p_chk.add_argument("--alpha", type=float, default=0.025)
    p_chk.add_argument("--grid-points", dest="grid_points", type=int, default=20001)
    p_chk.add_argument("--config", default=None)
    p_chk.add_argument("--details", action="store_true",
                       help="also emit the per-level comparison CSV before the pass/fail lines")
    p_chk.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args, sys.stdout)
    except (InvalidParameter, ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoBoundState as exc:
        print(f"no bound states: {exc}", file=sys.stderr)
        return EXIT_NO_BOUND_STATE
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
