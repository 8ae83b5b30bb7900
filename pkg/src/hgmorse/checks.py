"""Closed-form-vs-oracle check battery behind the oracle-check subcommand.

Each check returns (criterion, passed, detail) so the CLI can emit one
pass/fail line per criterion; the pytest acceptance suite runs the same
comparisons at full matrix size with hard asserts.
"""

from __future__ import annotations

import math
import time
from typing import Iterable

import numpy as np

from .errors import NoBoundState
from .molecules import Molecule, to_potential_params
from .nonrel import ParticleSpec, energy_nonrel, make_wavefunction, radial_wavefunction
from .oracle import mismatch_sign_change, oracle_energies, richardson_extrapolate
from .potential import PotentialParams
from .relativistic import (
    QuantumNumbers,
    kg_ode_coefficient,
    kg_residual,
    kg_residual_nonrel_limit,
    pseudospin_ode_coefficient,
    pseudospin_residual,
    solve_dirac_pseudospin,
    solve_dirac_spin,
    solve_kg_energy,
    spin_ode_coefficient,
    spin_residual,
    spin_residual_nonrel_limit,
)
from .specfun import JacobiParams, jacobi_norm_integral, jacobi_poly
from .units import UnitConstants
from .wavefun import SWaveform, support_window

Check = tuple[str, bool, str]

MASS_MATRIX = (50.0, 500.0, 5000.0)
PSEUDOSPIN_B_FOLD = 10.0


def scaled_params(p: PotentialParams, part: ParticleSpec, M: float) -> PotentialParams:
    """Potential strengths rescaled by mu c^2/M, preserving the dimensionless
    well depth of the molecular problem at test mass M."""
    s = part.mu_energy / M
    return PotentialParams(a=p.a * s, b=p.b * s, D_e=p.D_e * s, r_e=p.r_e, alpha=p.alpha)


def pseudospin_params(p: PotentialParams, M: float, hbar_c: float) -> PotentialParams:
    """Pseudospin test configuration: the difference-potential sector binds
    through the Yukawa term, so b is set to a fixed multiple of the binding
    threshold (hbar c)^2 alpha/(2M) while D_e stays molecular (a stronger
    Morse term drives the radicand supercritical and kills every level)."""
    b = PSEUDOSPIN_B_FOLD * hbar_c**2 * p.alpha / (2.0 * M)
    return PotentialParams(a=0.0, b=b, D_e=p.D_e, r_e=p.r_e, alpha=p.alpha)


ORACLE_CSV_HEADER = "model,n,l,E_closed,E_oracle,abs_dev,grid_points,extrapolated"


def oracle_comparison_rows(mol: Molecule, alpha: float, u: UnitConstants, points: int,
                           strengths: Iterable[tuple[float, float]] = ((0.0, 0.0), (1.0, 1.0))):
    """Per-level closed-vs-FD comparison rows in the documented CSV layout."""
    rows: list[str] = []
    worst = 0.0
    for a, b in strengths:
        params, part = to_potential_params(mol, a, b, alpha, u)
        for l in range(3):
            fd, _ = oracle_energies(params, part, l, 4, points=points)
            for n in range(4):
                closed = energy_nonrel(params, part, n, l)
                dev = abs(closed - float(fd[n]))
                worst = max(worst, dev)
                rows.append(f"nonrel,{n},{l},{closed:.17g},{float(fd[n]):.17g},{dev:.17g},{points},True")
    return rows, worst


def check_oracle_equivalence(mol: Molecule, alpha: float, u: UnitConstants,
                             points: int, tol: float = 5e-4) -> Check:
    t0 = time.time()
    _, worst = oracle_comparison_rows(mol, alpha, u, points)
    return ("oracle-equivalence", worst <= tol,
            f"molecule={mol.name} max|closed - FD| = {worst:.3g} eV in {time.time() - t0:.1f} s")


def check_relativistic_residuals(p: PotentialParams, part: ParticleSpec, u: UnitConstants) -> Check:
    worst = 0.0
    flips_ok = True
    found = 0
    for M in MASS_MATRIX:
        ps = scaled_params(p, part, M)
        for n, l in ((0, 0), (1, 0), (1, 1)):
            qn = QuantumNumbers(n=n, l=l)
            E = solve_kg_energy(ps, M, qn, hbar_c=u.hbar_c)[0]
            worst = max(worst, abs(kg_residual(ps, M, E, qn, u.hbar_c)))
            flips_ok &= mismatch_sign_change(kg_ode_coefficient(ps, M, qn, u.hbar_c), E, 1e-8 * M)
            found += 1
        for kappa, n in ((1, 1), (-2, 1)):
            E = solve_dirac_spin(ps, M, kappa, 0.0, n, hbar_c=u.hbar_c)[0]
            worst = max(worst, abs(spin_residual(p=ps, M=M, E=E, kappa=kappa, Cs=0.0, n=n, hbar_c=u.hbar_c)))
            flips_ok &= mismatch_sign_change(spin_ode_coefficient(ps, M, kappa, 0.0, u.hbar_c), E, 1e-8 * M)
            found += 1
        pps = pseudospin_params(p, M, u.hbar_c)
        ps_found = 0
        for kappa, n in ((1, 0), (1, 1), (2, 0)):
            try:
                E = solve_dirac_pseudospin(pps, M, kappa, 0.0, n, hbar_c=u.hbar_c)[0]
            except NoBoundState:
                continue
            worst = max(worst, abs(pseudospin_residual(pps, M, E, kappa, 0.0, n, u.hbar_c)))
            flips_ok &= mismatch_sign_change(pseudospin_ode_coefficient(pps, M, kappa, 0.0, u.hbar_c), E, 1e-8 * M)
            ps_found += 1
        found += ps_found
        flips_ok &= ps_found >= 1
    ok = worst <= 1e-9 and flips_ok
    return ("relativistic-residuals", ok,
            f"{found} levels, max|residual| = {worst:.2g}, shooting flips within 1e-8*M: {flips_ok}")


def check_cross_identities(p: PotentialParams, part: ParticleSpec, u: UnitConstants) -> Check:
    worst_pair = 0.0
    ps = scaled_params(p, part, 500.0)
    for l, kappas in ((0, (-1,)), (1, (1, -2))):
        qn = QuantumNumbers(n=1, l=l)
        e_kg = solve_kg_energy(ps, 500.0, qn, hbar_c=u.hbar_c)[0]
        for kappa in kappas:
            e_sp = solve_dirac_spin(ps, 500.0, kappa, 0.0, 1, hbar_c=u.hbar_c)[0]
            worst_pair = max(worst_pair, abs(e_kg - e_sp))
    worst_limit = 0.0
    for n in range(4):
        for l in range(3):
            E = energy_nonrel(p, part, n, l)
            worst_limit = max(worst_limit, abs(kg_residual_nonrel_limit(p, part, E, n, l)),
                              abs(spin_residual_nonrel_limit(p, part, E, n, l)))
    ok = worst_pair <= 1e-10 and worst_limit <= 1e-10
    return ("cross-identities", ok,
            f"KG/spin max|dE| = {worst_pair:.2g} eV, nonrel-limit max|residual| = {worst_limit:.2g}")


def check_special_functions() -> Check:
    rng = np.random.default_rng(20240817)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(0, 11))
        theta = float(rng.uniform(-0.9, 50.0))
        varth = float(rng.uniform(-0.9, 50.0))
        x = float(rng.uniform(-1.0, 1.0))
        direct = jacobi_poly(JacobiParams(theta, varth, n), x)
        rec = _jacobi_recurrence(n, theta, varth, x)
        scale = max(1.0, abs(rec))
        worst = max(worst, abs(direct - rec) / scale)
    third = abs(jacobi_norm_integral(1.0, 1.0, 0) - 1.0 / 3.0)
    ok = worst <= 1e-12 and third <= 1e-12
    return ("special-functions", ok, f"jacobi-vs-recurrence max rel dev = {worst:.2g}, |I(0;1,1) - 1/3| = {third:.2g}")


def _jacobi_recurrence(n: int, a: float, b: float, x: float) -> float:
    if n == 0:
        return 1.0
    p_prev = 1.0
    p = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for k in range(2, n + 1):
        c1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0)
        c2 = (2.0 * k + a + b - 1.0) * ((2.0 * k + a + b) * (2.0 * k + a + b - 2.0) * x + a * a - b * b)
        c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b)
        p, p_prev = (c2 * p - c3 * p_prev) / c1, p
    return p


def check_normalization(p: PotentialParams, part: ParticleSpec) -> Check:
    from scipy.integrate import quad

    worst = 0.0
    for n, l in ((0, 0), (1, 0), (2, 1)):
        spec = make_wavefunction(p, part, n, l)
        w = SWaveform(spec.omega, spec.phi_exp, n, p.alpha)
        r_lo, r_hi = support_window(w)
        integral, _ = quad(lambda r: radial_wavefunction(spec, r) ** 2, r_lo, r_hi, limit=400)
        worst = max(worst, abs(integral - 1.0))
    return ("normalization", worst <= 1e-6, f"max |quad norm - 1| = {worst:.2g}")


def check_box_self_test(part: ParticleSpec) -> Check:
    from scipy.linalg import eigh_tridiagonal

    c = part.kinetic_scale
    L = 10.0
    levels = {}
    for pts in (2001, 4001):
        r = np.linspace(0.0, L, pts)
        h = r[1] - r[0]
        size = pts - 2
        vals = eigh_tridiagonal(np.full(size, 2.0 * c / h**2), np.full(size - 1, -c / h**2),
                                select="i", select_range=(0, 3), eigvals_only=True)
        levels[pts] = vals
    worst = 0.0
    for m in range(1, 5):
        exact = c * math.pi**2 * m**2 / L**2
        extrap, _ = richardson_extrapolate(float(levels[2001][m - 1]), float(levels[4001][m - 1]), 2.0, 2)
        worst = max(worst, abs(extrap / exact - 1.0))
    return ("box-self-test", worst <= 1e-6, f"max rel dev after extrapolation = {worst:.2g}")


MODEL_CHECKS = ("nonrel", "kg", "dirac-spin", "dirac-pseudospin")


def run_checks(molecules: list[Molecule], models: list[str], alpha: float, u: UnitConstants,
               points: int) -> list[Check]:
    """Assemble the battery for the requested model families."""
    out: list[Check] = []
    base_params, base_part = to_potential_params(molecules[0], 1.0, 1.0, alpha, u)
    if "nonrel" in models:
        for mol in molecules:
            out.append(check_oracle_equivalence(mol, alpha, u, points))
        out.append(check_box_self_test(base_part))
        out.append(check_special_functions())
        out.append(check_normalization(base_params, base_part))
    if any(name in models for name in ("kg", "dirac-spin", "dirac-pseudospin")):
        out.append(check_relativistic_residuals(base_params, base_part, u))
        out.append(check_cross_identities(base_params, base_part, u))
    return out
