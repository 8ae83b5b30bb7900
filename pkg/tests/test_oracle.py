import math

import numpy as np
import pytest

from hgmorse.errors import GridTooCoarse, InvalidParameter, NonConvergence
from hgmorse.nonrel import energy_nonrel, schrodinger_ode_coefficient
from hgmorse.oracle import (
    RadialGrid,
    adapted_range,
    default_grid,
    fd_schrodinger_eigen,
    fd_schrodinger_modes,
    oracle_energies,
    richardson_extrapolate,
    shoot_mismatch,
    shooting_grid,
)
from hgmorse.potential import PotentialParams
from hgmorse.rootfind import bisect, scan_brackets


def box_setup():
    """V = 0 box: a = b = D_e = 0 with a huge screening range."""
    p = PotentialParams(a=0.0, b=0.0, D_e=0.0, r_e=1.0, alpha=1e-6)
    return p


def test_radial_grid_validation():
    g = RadialGrid(1e-3, 10.0, 101)
    assert g.spacing == pytest.approx((10.0 - 1e-3) / 100)
    assert g.refined().points == 201
    with pytest.raises(InvalidParameter):
        RadialGrid(0.0, 1.0, 101)
    with pytest.raises(InvalidParameter):
        RadialGrid(1e-3, 10.0, 50)


def test_default_grid_range():
    g = default_grid(0.025)
    assert g.r_max == pytest.approx(1600.0)
    assert g.points == 20001


def test_box_eigenvalues_and_extrapolation(ch_free):
    _, part = ch_free
    p = box_setup()
    L = 10.0
    exact = [part.kinetic_scale * math.pi**2 * m**2 / L**2 for m in (1, 2, 3)]
    coarse = fd_schrodinger_eigen(p, part, 0, RadialGrid(1e-9, L + 1e-9, 2001), 3)
    fine = fd_schrodinger_eigen(p, part, 0, RadialGrid(1e-9, L + 1e-9, 4001), 3)
    for m in range(3):
        extrap, err = richardson_extrapolate(float(coarse[m]), float(fine[m]), 2.0, 2)
        assert extrap == pytest.approx(exact[m], rel=1e-6)
        assert abs(extrap - exact[m]) < abs(float(fine[m]) - exact[m])


def test_box_node_counts(ch_free):
    _, part = ch_free
    p = box_setup()
    _, vecs = fd_schrodinger_modes(p, part, 0, RadialGrid(1e-9, 10.0, 2001), 4)
    for m in range(4):
        v = vecs[:, m]
        keep = np.abs(v) > 1e-8 * np.abs(v).max()
        signs = np.sign(v[keep])
        assert int(np.sum(signs[1:] * signs[:-1] < 0)) == m


def test_fd_matches_closed_form_ground_state(ch_free):
    p, part = ch_free
    fd, err = oracle_energies(p, part, 0, 1)
    assert abs(float(fd[0]) - energy_nonrel(p, part, 0, 0)) <= 5e-4
    assert err[0] < 1e-6


def test_default_grid_resolves_ch_ground(ch_free):
    # the stock 40/alpha range at 20001 points resolves the CH ground level:
    # the extrapolated value is stable under a further doubling and lands on
    # the closed form well inside 5e-4 eV (the raw doubling difference alone
    # is ~1e-3, so extrapolation is part of the contract)
    p, part = ch_free
    g = default_grid(p.alpha)
    e1 = float(fd_schrodinger_eigen(p, part, 0, g, 1)[0])
    e2 = float(fd_schrodinger_eigen(p, part, 0, g.refined(), 1)[0])
    e3 = float(fd_schrodinger_eigen(p, part, 0, g.refined().refined(), 1)[0])
    x12, _ = richardson_extrapolate(e1, e2, 2.0, 2)
    x23, _ = richardson_extrapolate(e2, e3, 2.0, 2)
    assert abs(x12 - x23) < 5e-4
    assert abs(x12 - energy_nonrel(p, part, 0, 0)) < 5e-4


def test_fd_grid_convergence_is_one_signed(ch_free):
    p, part = ch_free
    r_max = adapted_range(p, part, 0, 1)
    values = []
    for points in (2001, 4001, 8001, 16001):
        values.append(float(fd_schrodinger_eigen(p, part, 0, RadialGrid(1e-3, r_max, points), 1)[0]))
    diffs = np.diff(values)
    assert np.all(diffs > 0) or np.all(diffs < 0)
    extrap, err = richardson_extrapolate(values[-2], values[-1], 2.0, 2)
    assert min(values[-2], values[-1]) - err <= extrap <= max(values[-2], values[-1]) + err


def test_fd_r_min_insensitivity(ch_free):
    p, part = ch_free
    r_max = adapted_range(p, part, 0, 1)
    e3 = fd_schrodinger_eigen(p, part, 0, RadialGrid(1e-3, r_max, 20001), 1)[0]
    e4 = fd_schrodinger_eigen(p, part, 0, RadialGrid(1e-4, r_max, 20001), 1)[0]
    assert abs(float(e3) - float(e4)) < 5e-4


def test_fd_rejects_too_many_levels(ch_free):
    p, part = ch_free
    with pytest.raises(GridTooCoarse):
        fd_schrodinger_eigen(p, part, 0, RadialGrid(1e-3, 10.0, 101), 20)


def test_richardson_trivial_and_synthetic():
    assert richardson_extrapolate(2.0, 2.0, 2.0, 2) == (2.0, 0.0)
    exact, c = 1.37, 0.4
    coarse = exact + c * 0.1**2
    fine = exact + c * 0.05**2
    extrap, err = richardson_extrapolate(coarse, fine, 2.0, 2)
    assert extrap == pytest.approx(exact, abs=1e-14)
    assert err == pytest.approx(abs(fine - coarse))
    with pytest.raises(InvalidParameter):
        richardson_extrapolate(1.0, 1.0, 0.5, 2)


def test_shooting_flips_at_fd_eigenvalue(ch_free):
    # mutual consistency of the two oracle routes on the same equation
    p, part = ch_free
    W = schrodinger_ode_coefficient(p, part, 0)
    E0_fd = float(oracle_energies(p, part, 0, 1)[0][0])
    grid, r_match = shooting_grid(W, E0_fd)
    lo = shoot_mismatch(W, E0_fd - 1e-6, grid, r_match)
    hi = shoot_mismatch(W, E0_fd + 1e-6, grid, r_match)
    assert lo * hi < 0.0


def test_shooting_locates_same_energy_as_fd(ch_free):
    p, part = ch_free
    W = schrodinger_ode_coefficient(p, part, 0)
    E0_fd = float(oracle_energies(p, part, 0, 1)[0][0])
    grid, r_match = shooting_grid(W, E0_fd)
    f = lambda E: shoot_mismatch(W, E, grid, r_match)
    bracket = scan_brackets(f, E0_fd - 1e-3, E0_fd + 1e-3, 41)
    assert len(bracket) == 1
    root, _ = bisect(f, bracket[0], 1e-10)
    assert abs(root - E0_fd) < 2e-6


def test_no_false_roots_between_eigenvalues(ch_free):
    # every mismatch sign flip strictly between consecutive levels must be a
    # pole (|mismatch| growing), never a root
    p, part = ch_free
    W = schrodinger_ode_coefficient(p, part, 0)
    levels, _ = oracle_energies(p, part, 0, 2)
    E0, E1 = float(levels[0]), float(levels[1])
    grid, r_match = shooting_grid(W, E0)
    margin = 1e-4 * (E1 - E0)
    f = lambda E: shoot_mismatch(W, E, grid, r_match)
    for bracket in scan_brackets(f, E0 + margin, E1 - margin, 100):
        root, f_root = bisect(f, bracket, 1e-10)
        assert abs(f_root) >= min(abs(bracket.f_lo), abs(bracket.f_hi))


def test_shoot_mismatch_validates_match_point(ch_free):
    p, part = ch_free
    W = schrodinger_ode_coefficient(p, part, 0)
    g = RadialGrid(0.1, 5.0, 501)
    with pytest.raises(InvalidParameter):
        shoot_mismatch(W, 0.1, g, 7.0)


def test_shooting_grid_requires_allowed_region(ch_free):
    p, part = ch_free
    W = schrodinger_ode_coefficient(p, part, 0)
    with pytest.raises(NonConvergence):
        shooting_grid(W, -10.0)  # far below the well: nowhere classically allowed
