"""Closed-form nonrelativistic energies and normalized radial wavefunctions.

The energy formula is the nonrelativistic reduction of the equal
scalar-vector relativistic spectrum.  With T = 2 mu/hbar^2, q the Morse
range parameter, kap2 = hbar^2 alpha^2/(2 mu) and

    delta = sqrt(1/4 + l(l+1) + T D_e q^2/alpha^2),    P = n + 1/2 + delta,
    N = P^2 + T (b/alpha - a/alpha - 2 D_e q/alpha^2 - D_e q^2/alpha^2) + l(l+1),

the level is

    E(n, l) = D_e - a alpha + kap2 l(l+1) - (kap2/4) (N/P)^2.

The sign of the D_e q^2/alpha^2 coupling term here differs from one printed
variant of this formula; the finite-difference oracle selects this one
decisively (the other is off by ~0.2 eV for CH), and the eliminated variant
is kept as `_energy_nonrel_printed` so validation reports can quantify the
difference.  Wavefunctions are the standard s = e^(-alpha r) hypergeometric
forms, normalized by quadrature (the closed-form constant is exact at n = 0
but inherits a flawed norm identity at n >= 1, so it is logged, not used).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import wavefun
from .errors import InvalidParameter, NoBoundState
from .oracle import oracle_energies
from .potential import PotentialParams, centrifugal_approx, potential_approx
from .specfun import ln_gamma
from .units import HBAR_C_EV_ANGSTROM


@dataclass(frozen=True)
class ParticleSpec:
    """Reduced mass-energy mu*c^2 (eV) plus the hbar*c it is used with."""

    mu_energy: float
    hbar_c: float = HBAR_C_EV_ANGSTROM

    def __post_init__(self) -> None:
        if not self.mu_energy > 0.0:
            raise InvalidParameter(f"mu_energy must be > 0, got {self.mu_energy!r}")

    @property
    def kinetic_scale(self) -> float:
        """hbar^2/(2 mu) in eV*A^2."""
        return self.hbar_c**2 / (2.0 * self.mu_energy)

    @property
    def two_mu_over_hbar2(self) -> float:
        """T = 2 mu/hbar^2 in 1/(eV*A^2)."""
        return 2.0 * self.mu_energy / self.hbar_c**2


def _bracket_pieces(p: PotentialParams, part: ParticleSpec, n: int, l: int, phi_sign: float):
    T = part.two_mu_over_hbar2
    a2 = p.alpha**2
    phi = T * p.D_e * p.q**2 / a2
    delta = math.sqrt(0.25 + l * (l + 1) + phi)
    P = n + 0.5 + delta
    coupling = T * (p.b / p.alpha - p.a / p.alpha - 2.0 * p.D_e * p.q / a2 + phi_sign * p.D_e * p.q**2 / a2)
    N = P * P + coupling + l * (l + 1)
    return P, N


def energy_nonrel(p: PotentialParams, part: ParticleSpec, n: int, l: int) -> float:
    """Closed-form level E(n, l) in eV (oracle-verified transcription)."""
    if n < 0 or l < 0:
        raise InvalidParameter(f"quantum numbers must be >= 0, got (n={n!r}, l={l!r})")
    P, N = _bracket_pieces(p, part, n, l, phi_sign=-1.0)
    kap2 = part.kinetic_scale * p.alpha**2
    return p.D_e - p.a * p.alpha + kap2 * l * (l + 1) - 0.25 * kap2 * (N / P) ** 2


def _energy_nonrel_printed(p: PotentialParams, part: ParticleSpec, n: int, l: int) -> float:
    """The rejected printed variant (+ sign on the D_e q^2 coupling term).

    Fails the oracle by ~0.2 eV; retained only so reports can document it.
    """
    if n < 0 or l < 0:
        raise InvalidParameter(f"quantum numbers must be >= 0, got (n={n!r}, l={l!r})")
    P, N = _bracket_pieces(p, part, n, l, phi_sign=+1.0)
    kap2 = part.kinetic_scale * p.alpha**2
    return p.D_e - p.a * p.alpha + kap2 * l * (l + 1) - 0.25 * kap2 * (N / P) ** 2


def wavefunction_exponents(p: PotentialParams, part: ParticleSpec, E: float, l: int) -> tuple[float, float]:
    """(omega, phi_exp): the s -> 0 and s -> 1 exponents of the eigenfunction.

    omega = sqrt(T (D_e - E)/alpha^2 + l(l+1) - T a/alpha); raises
    NoBoundState when the radicand is negative or omega is not positive
    (threshold or unbound energy).
    """
    if l < 0:
        raise InvalidParameter(f"l must be >= 0, got {l!r}")
    T = part.two_mu_over_hbar2
    a2 = p.alpha**2
    phi_exp = 0.5 + math.sqrt(0.25 + l * (l + 1) + T * p.D_e * p.q**2 / a2)
    radicand = T * (p.D_e - E) / a2 + l * (l + 1) - T * p.a / p.alpha
    if radicand <= 0.0:
        raise NoBoundState(f"omega radicand {radicand!r} <= 0 at E = {E!r}")
    return math.sqrt(radicand), phi_exp


@dataclass(frozen=True)
class WavefunctionSpec:
    """Exponents, degree and normalization of one radial eigenfunction.

    The normalization constant is stored as log_norm because molecular
    exponents overflow a double (log N ~ +1e3); `norm` is provided for
    convenience and may overflow to inf.
    """

    omega: float
    phi_exp: float
    n: int
    alpha: float
    log_norm: float

    def __post_init__(self) -> None:
        wavefun.SWaveform(self.omega, self.phi_exp, self.n, self.alpha)  # invariant check
        if not math.isfinite(self.log_norm):
            raise InvalidParameter(f"log_norm must be finite, got {self.log_norm!r}")

    @property
    def norm(self) -> float:
        return math.exp(self.log_norm)

    def _waveform(self) -> wavefun.SWaveform:
        return wavefun.SWaveform(self.omega, self.phi_exp, self.n, self.alpha)


@dataclass(frozen=True)
class NormalizationResult:
    """Quadrature-authoritative log norm plus the logged closed-form value."""

    log_quadrature: float
    log_closed_form: Optional[float]

    @property
    def closed_over_quadrature(self) -> Optional[float]:
        if self.log_closed_form is None:
            return None
        return math.exp(self.log_closed_form - self.log_quadrature)


def log_norm_closed_form(omega: float, phi_exp: float, n: int, alpha: float) -> float:
    """log of the closed-form constant sqrt(n! 2w a G(2w+2f+n+1)/(G(2w+n+1) G(2f+n+1))).

    Exact at n = 0; at n >= 1 it inherits a flawed weighted-norm identity and
    is only logged against the quadrature value.
    """
    return 0.5 * (
        ln_gamma(n + 1.0)
        + math.log(2.0 * omega)
        + math.log(alpha)
        + ln_gamma(2.0 * omega + 2.0 * phi_exp + n + 1.0)
        - ln_gamma(2.0 * omega + n + 1.0)
        - ln_gamma(2.0 * phi_exp + n + 1.0)
    )


def normalization_constant(omega: float, phi_exp: float, n: int, alpha: float) -> NormalizationResult:
    """Quadrature normalization (authoritative) and the closed form (logged).

    Raises NoBoundState for non-normalizable exponents (omega <= 0 or
    phi_exp <= 1/2).
    """
    w = wavefun.SWaveform(omega, phi_exp, n, alpha)
    return NormalizationResult(
        log_quadrature=wavefun.log_norm_quadrature(w),
        log_closed_form=log_norm_closed_form(omega, phi_exp, n, alpha),
    )


def make_wavefunction(p: PotentialParams, part: ParticleSpec, n: int, l: int) -> WavefunctionSpec:
    """Energy + exponents + quadrature normalization for the (n, l) level."""
    E = energy_nonrel(p, part, n, l)
    omega, phi_exp = wavefunction_exponents(p, part, E, l)
    norm = normalization_constant(omega, phi_exp, n, p.alpha)
    return WavefunctionSpec(omega, phi_exp, n, p.alpha, norm.log_quadrature)


def radial_wavefunction(spec: WavefunctionSpec, r: float) -> float:
    """Normalized u(r); vanishes at both ends of (0, infinity)."""
    return wavefun.value(spec._waveform(), spec.log_norm, r)


def schrodinger_ode_coefficient(p: PotentialParams, part: ParticleSpec, l: int):
    """W(r; E) of u'' + W u = 0 for the approximated radial equation."""
    T = part.two_mu_over_hbar2

    def W(r, E):
        return T * (E - potential_approx(p, r)) - centrifugal_approx(p.alpha, r, float(l * (l + 1)))

    return W


@dataclass(frozen=True)
class SpectrumRow:
    molecule: str
    model: str
    n: int
    l: int
    E_eV: float
    method: str = "closed-form"
    oracle_E_eV: Optional[float] = None
    abs_dev_eV: Optional[float] = None
    status: str = "ok"


@dataclass(frozen=True)
class SpectrumTable:
    rows: tuple

    CSV_HEADER = "molecule,model,n,l,E_eV,oracle_E_eV,abs_dev_eV"

    def to_csv_lines(self) -> Iterable[str]:
        yield self.CSV_HEADER
        for row in self.rows:
            oe = "" if row.oracle_E_eV is None else f"{row.oracle_E_eV:.17g}"
            dv = "" if row.abs_dev_eV is None else f"{row.abs_dev_eV:.17g}"
            yield f"{row.molecule},{row.model},{row.n},{row.l},{row.E_eV:.17g},{oe},{dv}"


def level_indices(n_max: int, l_max: int, rectangular: bool = False) -> list[tuple[int, int]]:
    """Triangular (l <= n) or rectangular (n, l) iteration order."""
    if n_max < 0 or l_max < 0:
        raise InvalidParameter(f"n_max and l_max must be >= 0, got ({n_max!r}, {l_max!r})")
    out = []
    for n in range(n_max + 1):
        top = l_max if rectangular else min(n, l_max)
        for l in range(top + 1):
            out.append((n, l))
    return out


def spectrum_table(
    molecule_name: str,
    p: PotentialParams,
    part: ParticleSpec,
    n_max: int,
    l_max: int,
    oracle: bool = False,
    oracle_points: int = 20001,
    rectangular: bool = False,
) -> SpectrumTable:
    """Closed-form levels laid out triangularly, with optional oracle deviations.

    In oracle mode one extrapolated FD solve per l column supplies every n.
    """
    pairs = level_indices(n_max, l_max, rectangular)
    oracle_cols: dict[int, np.ndarray] = {}
    if oracle:
        for l in sorted({l for _, l in pairs}):
            k = max(n for n, ll in pairs if ll == l) + 1
            oracle_cols[l], _ = oracle_energies(p, part, l, k, points=oracle_points)
    rows = []
    for n, l in pairs:
        E = energy_nonrel(p, part, n, l)
        if oracle:
            oe = float(oracle_cols[l][n])
            rows.append(SpectrumRow(molecule_name, "nonrel", n, l, E, "closed-form", oe, abs(E - oe)))
        else:
            rows.append(SpectrumRow(molecule_name, "nonrel", n, l, E))
    return SpectrumTable(tuple(rows))
