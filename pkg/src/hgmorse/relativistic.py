"""Klein-Gordon and Dirac (spin / pseudospin symmetry) bound-state solvers.

All three wave equations reduce, in the s = e^(-alpha r) variable, to the
same quadratic-coefficient eigenvalue structure.  With dimensionless fields
(eps, beta, eta, chi, phi, gamma) built from the energy, the quantization
condition reads

    eps = beta - gamma + (1/4) [(P^2 - beta + eta - chi + gamma - phi)/P]^2,
    P   = n + 1/2 + sqrt(1/4 + phi + gamma),

which is implicit in E because every field carries an energy-dependent
prefactor.  Residual functions return the normalized defect

    f(E) = (lhs - rhs) / (1 + |lhs| + |rhs|),

whose roots and signs match the raw equation while keeping magnitudes O(1)
across mass scales (the raw fields reach ~1e8 for molecular parameters, far
beyond what float64 root contracts could express).  Being a squared
equation, it admits spurious roots; genuine levels additionally satisfy
N <= 0 for the bracket numerator N (equivalently the pre-squared relation
2 P sqrt(eps - beta + gamma) = -N with a nonnegative left side), and the
solvers drop the rest.  Every accepted root can be cross-checked by the
shooting oracle on the corresponding radial equation.

The fully expanded printed variants of the three eigenvalue equations carry
typesetting defects (a dropped coupling term, a sign flip, a missing 1/4);
they are evaluated here only as logged cross-checks, never solved.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

from . import wavefun
from .errors import InvalidParameter, NoBoundState, NonConvergence
from .nonrel import NormalizationResult, ParticleSpec, log_norm_closed_form
from .potential import PotentialParams, centrifugal_approx, potential_approx
from .rootfind import RootBracket, bisect, scan_brackets
from .specfun import ln_gamma
from .units import HBAR_C_EV_ANGSTROM

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuantumNumbers:
    """State labels: radial n, orbital l, spin-orbit kappa, dimension D."""

    n: int
    l: int = 0
    kappa: Optional[int] = None
    D: int = 3

    def __post_init__(self) -> None:
        if self.n < 0 or self.l < 0:
            raise InvalidParameter(f"n and l must be >= 0, got ({self.n!r}, {self.l!r})")
        if self.D < 1:
            raise InvalidParameter(f"dimension must be >= 1, got {self.D!r}")
        if self.kappa == 0:
            raise InvalidParameter("kappa must be a nonzero integer")


def lambda_D(D: int, l: int) -> float:
    """Angular coefficient (D+2l-1)(D+2l-3)/4; equals l(l+1) at D = 3."""
    if D < 1 or l < 0:
        raise InvalidParameter(f"need D >= 1 and l >= 0, got ({D!r}, {l!r})")
    return (D + 2 * l - 1) * (D + 2 * l - 3) / 4.0


# ---------------------------------------------------------------------------
# shared quantization core
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _NUFields:
    """Dimensionless coefficient set of the s-space radial equation."""

    eps: float
    beta: float
    eta: float
    chi: float
    phi: float
    gamma: float


def _nu_eval(f: _NUFields, n: int) -> Optional[tuple[float, float, float]]:
    """(normalized residual, bracket numerator N, denominator P) or None.

    None marks a domain hole: negative radicand 1/4 + phi + gamma.
    """
    radicand = 0.25 + f.phi + f.gamma
    if radicand < 0.0:
        return None
    P = n + 0.5 + math.sqrt(radicand)
    N = P * P - f.beta + f.eta - f.chi + f.gamma - f.phi
    lhs = f.eps
    rhs = f.beta - f.gamma + 0.25 * (N / P) ** 2
    return (lhs - rhs) / (1.0 + abs(lhs) + abs(rhs)), N, P


def _bound_exponents(f: _NUFields) -> tuple[float, float]:
    """(leading, edge) exponents; NoBoundState when not normalizable."""
    C = f.eps - f.beta + f.gamma
    radicand = 0.25 + f.phi + f.gamma
    if C <= 0.0 or radicand < 0.0:
        raise NoBoundState(f"exponent radicands (C={C!r}, R={radicand!r}) do not give a bound state")
    return math.sqrt(C), 0.5 + math.sqrt(radicand)


# ---------------------------------------------------------------------------
# Klein-Gordon (equal scalar and vector potentials, D dimensions)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KGAnsatz:
    """Dimensionless coefficients of the Klein-Gordon radial equation.

    eps stores the equation's leading coefficient with its defining sign,
    ((E^2 - M^2) - D_e (E+M))/(hbar c alpha)^2, i.e. minus the bound-state
    parameter; kg_phi and gamma_rot feed the quantization denominator
    through delta_kg = sqrt(1/4 + kg_phi + Lambda).
    """

    eps: float
    beta: float
    eta: float
    chi: float
    kg_phi: float
    gamma_rot: float
    Lambda: float
    delta_kg: float


def kg_ansatz(
    p: PotentialParams, M: float, E: float, qn: QuantumNumbers, hbar_c: float = HBAR_C_EV_ANGSTROM
) -> KGAnsatz:
    """Fill every ansatz field at energy E (pure arithmetic, no validation)."""
    S = (E + M) / hbar_c**2
    a2 = p.alpha**2
    lam = lambda_D(qn.D, qn.l)
    kg_phi = S * p.D_e * p.q**2 / a2
    radicand = 0.25 + kg_phi + lam
    return KGAnsatz(
        eps=-S * (M - E + p.D_e) / a2,
        beta=S * p.a / p.alpha,
        eta=S * p.b / p.alpha,
        chi=2.0 * S * p.D_e * p.q / a2,
        kg_phi=kg_phi,
        gamma_rot=lam,
        Lambda=lam,
        delta_kg=math.sqrt(radicand) if radicand >= 0.0 else math.nan,
    )


def _kg_fields(ans: KGAnsatz) -> _NUFields:
    return _NUFields(-ans.eps, ans.beta, ans.eta, ans.chi, ans.kg_phi, ans.gamma_rot)


def kg_residual(
    p: PotentialParams, M: float, E: float, qn: QuantumNumbers, hbar_c: float = HBAR_C_EV_ANGSTROM
) -> Optional[float]:
    """Normalized quantization defect at E; None on a domain hole."""
    if (E + M) / hbar_c**2 <= 0.0:
        return None
    out = _nu_eval(_kg_fields(kg_ansatz(p, M, E, qn, hbar_c)), qn.n)
    return None if out is None else out[0]


def kg_residual_nonrel_limit(p: PotentialParams, part: ParticleSpec, E_nl: float, n: int, l: int) -> float:
    """kg_residual under the substitutions M+E -> 2 mu/hbar^2, M-E -> -E_nl.

    Evaluated at a closed-form nonrelativistic level this is an algebraic
    identity and returns rounding noise (~1e-16).
    """
    S = part.two_mu_over_hbar2
    a2 = p.alpha**2
    fields = _NUFields(
        eps=S * (-E_nl + p.D_e) / a2,
        beta=S * p.a / p.alpha,
        eta=S * p.b / p.alpha,
        chi=2.0 * S * p.D_e * p.q / a2,
        phi=S * p.D_e * p.q**2 / a2,
        gamma=float(l * (l + 1)),
    )
    out = _nu_eval(fields, n)
    if out is None:
        raise NoBoundState("substituted residual undefined")
    return out[0]


def kg_printed_eq_residual(
    p: PotentialParams, M: float, E: float, qn: QuantumNumbers, hbar_c: float = HBAR_C_EV_ANGSTROM
) -> float:
    """Normalized defect of the printed expanded KG equation (logged only).

    Transcribed with minimal unit restoration (each energy*energy product
    divided by (hbar c)^2); its coupling bracket lacks the D_e q^2/alpha
    term entirely, so the defect is nonzero at genuine roots.
    """
    hc2 = hbar_c**2
    a2 = p.alpha**2
    lam = lambda_D(qn.D, qn.l)
    delta = math.sqrt(0.25 + p.D_e * (E + M) * p.q**2 / (a2 * hc2) + lam)
    P = qn.n + 0.5 + delta
    num = P * P - (E + M) * (p.a - p.b + 2.0 * p.D_e * p.q / p.alpha) / (p.alpha * hc2) + lam
    lhs = E * E - M * M
    rhs = (p.D_e - p.a * p.alpha) * (E + M) + a2 * hc2 * lam - 0.25 * a2 * hc2 * (num / P) ** 2
    return (lhs - rhs) / (1.0 + abs(lhs) + abs(rhs))


# ---------------------------------------------------------------------------
# Dirac, spin symmetry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpinAnsatz:
    """Coefficients of the upper-spinor equation under spin symmetry.

    beta0, beta2 are energy sums/differences in eV; the rest dimensionless.
    beta1 = kappa(kappa+1) plays the angular role.
    """

    beta0: float
    beta1: float
    beta2: float
    delta0: float
    delta1: float
    delta2: float
    gamma0: float
    gamma1: float
    Cs: float


def spin_ansatz(
    p: PotentialParams, M: float, E: float, kappa: int, Cs: float = 0.0, hbar_c: float = HBAR_C_EV_ANGSTROM
) -> SpinAnsatz:
    if kappa == 0:
        raise InvalidParameter("kappa must be nonzero")
    b0 = M + E - Cs
    b2 = M - E
    S = b0 / hbar_c**2
    a2 = p.alpha**2
    return SpinAnsatz(
        beta0=b0,
        beta1=float(kappa * (kappa + 1)),
        beta2=b2,
        delta0=2.0 * S * p.D_e * p.q / a2,
        delta1=S * p.a / p.alpha,
        delta2=S * p.b / p.alpha,
        gamma0=S * p.D_e * p.q**2 / a2,
        gamma1=S * (b2 + p.D_e) / a2,
        Cs=Cs,
    )


def _spin_fields(ans: SpinAnsatz) -> _NUFields:
    return _NUFields(ans.gamma1, ans.delta1, ans.delta2, ans.delta0, ans.gamma0, ans.beta1)


def spin_residual(
    p: PotentialParams,
    M: float,
    E: float,
    kappa: int,
    Cs: float = 0.0,
    n: int = 0,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> Optional[float]:
    """Normalized spin-symmetry quantization defect at E; None on a hole.

    At Cs = 0 with kappa(kappa+1) = l(l+1) this function is float-identical
    to kg_residual at D = 3.
    """
    if (M + E - Cs) / hbar_c**2 <= 0.0:
        return None
    out = _nu_eval(_spin_fields(spin_ansatz(p, M, E, kappa, Cs, hbar_c)), n)
    return None if out is None else out[0]


def spin_residual_nonrel_limit(p: PotentialParams, part: ParticleSpec, E_nl: float, n: int, l: int) -> float:
    """spin_residual (Cs = 0, kappa -> l) under the nonrelativistic substitutions."""
    return kg_residual_nonrel_limit(p, part, E_nl, n, l)


def spin_printed_eq_residual(
    p: PotentialParams,
    M: float,
    E: float,
    kappa: int,
    Cs: float = 0.0,
    n: int = 0,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> float:
    """Normalized defect of the printed expanded spin-symmetry equation.

    Transcribed with unit restoration and the lone "alpha" first right-hand
    term read as a*alpha (its strength factor was dropped in typesetting).
    Keeps the printed +D_e q^2/alpha^2 coupling sign, which the compact
    chain and the oracle both reject, so nonzero defects at roots are
    expected and logged.
    """
    hc2 = hbar_c**2
    a2 = p.alpha**2
    b0 = M + E - Cs
    b1 = float(kappa * (kappa + 1))
    delta = math.sqrt(0.25 + b1 + b0 * p.D_e * p.q**2 / (a2 * hc2))
    P = n + 0.5 + delta
    num = P * P + b0 * (p.b / p.alpha - 2.0 * p.D_e * p.q / a2 - p.a / p.alpha + p.D_e * p.q**2 / a2) / hc2 + b1
    lhs = b0 * (M - E + p.D_e)
    rhs = b0 * p.a * p.alpha - a2 * hc2 * b1 + 0.25 * a2 * hc2 * (num / P) ** 2
    return (lhs - rhs) / (1.0 + abs(lhs) + abs(rhs))


# ---------------------------------------------------------------------------
# Dirac, pseudospin symmetry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PseudospinAnsatz:
    """Coefficients of the lower-spinor equation under pseudospin symmetry.

    lambda0 = M - E + Cps and lambda2 = M + E in eV; lambda1 = kappa(kappa-1)
    is the angular coefficient; the chi/theta fields are dimensionless.
    """

    lambda0: float
    lambda1: float
    lambda2: float
    chi0: float
    chi1: float
    chi2: float
    theta1: float
    theta2: float
    Cps: float


def pseudospin_ansatz(
    p: PotentialParams, M: float, E: float, kappa: int, Cps: float = 0.0, hbar_c: float = HBAR_C_EV_ANGSTROM
) -> PseudospinAnsatz:
    if kappa == 0:
        raise InvalidParameter("kappa must be nonzero")
    lam0 = M - E + Cps
    lam2 = M + E
    S = lam0 / hbar_c**2
    a2 = p.alpha**2
    return PseudospinAnsatz(
        lambda0=lam0,
        lambda1=float(kappa * (kappa - 1)),
        lambda2=lam2,
        chi0=S * (lam2 - p.D_e) / a2,
        chi1=S * p.a / p.alpha,
        chi2=S * p.b / p.alpha,
        theta1=S * p.D_e * p.q**2 / a2,
        theta2=2.0 * S * p.D_e * p.q / a2,
        Cps=Cps,
    )


def _pseudospin_fields(ans: PseudospinAnsatz) -> _NUFields:
    # the difference potential enters the lower-spinor equation with the
    # opposite sign, flipping every coupling field relative to the spin case
    return _NUFields(ans.chi0, -ans.chi1, -ans.chi2, -ans.theta2, -ans.theta1, ans.lambda1)


def pseudospin_residual(
    p: PotentialParams,
    M: float,
    E: float,
    kappa: int,
    Cps: float = 0.0,
    n: int = 0,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> Optional[float]:
    """Normalized pseudospin quantization defect; None on a domain hole.

    The hole radicand is 1/4 - theta1 + lambda1 as forced by the coefficient
    chain (and by the printed spinor exponents); molecular-strength wells
    drive it negative on most of the energy axis, which is the supercritical
    1/r^2 collapse region where no bound state exists.
    """
    if (M - E + Cps) / hbar_c**2 <= 0.0:
        return None
    out = _nu_eval(_pseudospin_fields(pseudospin_ansatz(p, M, E, kappa, Cps, hbar_c)), n)
    return None if out is None else out[0]


def pseudospin_printed_eq_residual(
    p: PotentialParams,
    M: float,
    E: float,
    kappa: int,
    Cps: float = 0.0,
    n: int = 0,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> float:
    """Normalized defect of the printed expanded pseudospin equation (logged).

    Printed defects kept as-is: no 1/4 on the squared bracket, +theta1 in
    the radicand, and the flipped coupling signs; the angular term printed
    inside the coupling parentheses is read at its dimensionally consistent
    position in the numerator.
    """
    hc2 = hbar_c**2
    a2 = p.alpha**2
    lam0 = M - E + Cps
    lam1 = float(kappa * (kappa - 1))
    radicand = 0.25 + p.D_e * p.q**2 * lam0 / (a2 * hc2) + lam1
    if radicand < 0.0:
        return math.nan
    P = n + 0.5 + math.sqrt(radicand)
    num = P * P + lam0 * (p.a / p.alpha - p.b / p.alpha + 2.0 * p.D_e * p.q / a2 + p.D_e * p.q**2 / a2) / hc2 + lam1
    lhs = (p.D_e - M - E) * lam0
    rhs = lam1 * a2 * hc2 + lam0 * p.a * p.alpha - a2 * hc2 * (num / P) ** 2
    return (lhs - rhs) / (1.0 + abs(lhs) + abs(rhs))


# ---------------------------------------------------------------------------
# solvers
# ---------------------------------------------------------------------------


def default_search_interval(p: PotentialParams, M: float) -> tuple[float, float]:
    """Bound-state window (-M, M + D_e - a*alpha), shrunk by 1e-6*M margins.

    The approximate potential tends to D_e - a*alpha at infinity, so bound
    energies satisfy (E+M)(E - M - D_e + a*alpha) < 0 rather than lying in
    the bare mass gap.
    """
    margin = 1e-6 * abs(M)
    v_inf = max(p.D_e - p.a * p.alpha, 0.0)
    lo = -M + margin
    hi = M + v_inf - margin
    if hi <= lo:
        hi = M - margin
    return lo, hi


def _solve_quantization(
    evaluate: Callable[[float], Optional[tuple[float, float, float]]],
    lo: float,
    hi: float,
    scan_points: int,
    tol: float,
) -> list[tuple[float, float]]:
    """Scan + bisect + filter; returns ascending (root, residual) pairs.

    Rejects pole brackets (|f| grows under bisection, e.g. across a
    scale-factor zero) and squared-equation artifacts (bracket numerator
    N > 0 at the root).
    """

    def f(E: float) -> Optional[float]:
        out = evaluate(E)
        return None if out is None else out[0]

    def resolve(b: RootBracket) -> Optional[tuple[float, float]]:
        root, f_root = bisect(f, b, tol)
        if abs(f_root) >= min(abs(b.f_lo), abs(b.f_hi)):
            log.debug("rejected pole bracket at E=%r (|f|=%r)", root, abs(f_root))
            return None
        out = evaluate(root)
        if out is None:
            return None
        _, N, _ = out
        if N > 0.0:
            log.debug("rejected spurious squared-equation root at E=%r (N=%r)", root, N)
            return None
        return root, f_root

    roots: list[tuple[float, float]] = []
    for bracket in scan_brackets(f, lo, hi, scan_points):
        try:
            hit = resolve(bracket)
        except NonConvergence:
            # domain hole narrower than the scan step: rescan the bracket finer
            hit = None
            for sub in scan_brackets(f, bracket.lo, bracket.hi, 65):
                try:
                    hit = resolve(sub)
                except NonConvergence:
                    continue
                if hit is not None:
                    break
        if hit is not None:
            roots.append(hit)
    roots.sort(key=lambda pair: pair[0])
    return roots


def solve_kg_energy(
    p: PotentialParams,
    M: float,
    qn: QuantumNumbers,
    search_lo: Optional[float] = None,
    search_hi: Optional[float] = None,
    scan_points: int = 2000,
    tol: float = 1e-12,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> list[float]:
    """All Klein-Gordon levels for (n, l, D) in the search window, ascending.

    Raises NoBoundState when the window contains no genuine root.  For each
    root the compact and the printed expanded equation defects are logged.
    """
    lo, hi = default_search_interval(p, M)
    lo = lo if search_lo is None else search_lo
    hi = hi if search_hi is None else search_hi

    def evaluate(E: float):
        if (E + M) / hbar_c**2 <= 0.0:
            return None
        return _nu_eval(_kg_fields(kg_ansatz(p, M, E, qn, hbar_c)), qn.n)

    roots = _solve_quantization(evaluate, lo, hi, scan_points, tol)
    if not roots:
        raise NoBoundState(f"no Klein-Gordon level in [{lo!r}, {hi!r}] for {qn!r}")
    for E, res in roots:
        log.debug(
            "KG root E=%.12g residual=%.3g printed-form defect=%.3g",
            E, res, kg_printed_eq_residual(p, M, E, qn, hbar_c),
        )
    return [E for E, _ in roots]


def solve_dirac_spin(
    p: PotentialParams,
    M: float,
    kappa: int,
    Cs: float = 0.0,
    n: int = 0,
    search_lo: Optional[float] = None,
    search_hi: Optional[float] = None,
    scan_points: int = 2000,
    tol: float = 1e-12,
    all_roots: bool = False,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> list[float]:
    """Spin-symmetry levels; positive-energy branch unless all_roots."""
    lo, hi = default_search_interval(p, M)
    lo = lo if search_lo is None else search_lo
    hi = hi if search_hi is None else search_hi

    def evaluate(E: float):
        if (M + E - Cs) / hbar_c**2 <= 0.0:
            return None
        return _nu_eval(_spin_fields(spin_ansatz(p, M, E, kappa, Cs, hbar_c)), n)

    roots = _solve_quantization(evaluate, lo, hi, scan_points, tol)
    if not all_roots:
        roots = [(E, r) for E, r in roots if E > 0.0]
    if not roots:
        raise NoBoundState(f"no spin-symmetry level in [{lo!r}, {hi!r}] for kappa={kappa!r}, n={n!r}")
    for E, res in roots:
        log.debug(
            "spin root E=%.12g residual=%.3g printed-form defect=%.3g",
            E, res, spin_printed_eq_residual(p, M, E, kappa, Cs, n, hbar_c),
        )
    return [E for E, _ in roots]


def solve_dirac_pseudospin(
    p: PotentialParams,
    M: float,
    kappa: int,
    Cps: float = 0.0,
    n: int = 0,
    search_lo: Optional[float] = None,
    search_hi: Optional[float] = None,
    scan_points: int = 2000,
    tol: float = 1e-12,
    all_roots: bool = False,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> list[float]:
    """Pseudospin-symmetry levels; negative-energy branch unless all_roots."""
    lo, hi = default_search_interval(p, M)
    lo = lo if search_lo is None else search_lo
    hi = hi if search_hi is None else search_hi

    def evaluate(E: float):
        if (M - E + Cps) / hbar_c**2 <= 0.0:
            return None
        return _nu_eval(_pseudospin_fields(pseudospin_ansatz(p, M, E, kappa, Cps, hbar_c)), n)

    roots = _solve_quantization(evaluate, lo, hi, scan_points, tol)
    if not all_roots:
        roots = [(E, r) for E, r in roots if E < 0.0]
    if not roots:
        raise NoBoundState(f"no pseudospin level in [{lo!r}, {hi!r}] for kappa={kappa!r}, n={n!r}")
    for E, res in roots:
        log.debug(
            "pseudospin root E=%.12g residual=%.3g printed-form defect=%.3g",
            E, res, pseudospin_printed_eq_residual(p, M, E, kappa, Cps, n, hbar_c),
        )
    return [E for E, _ in roots]


# ---------------------------------------------------------------------------
# radial spinor components and normalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RelWavefunctionSpec:
    """Exponents, degree and log normalization of one relativistic radial part."""

    leading_exp: float
    edge_exp: float
    n: int
    alpha: float
    log_norm: float

    def _waveform(self) -> wavefun.SWaveform:
        return wavefun.SWaveform(self.leading_exp, self.edge_exp, self.n, self.alpha)


def rel_radial_value(spec: RelWavefunctionSpec, r: float) -> float:
    """Normalized radial component at r."""
    return wavefun.value(spec._waveform(), spec.log_norm, r)


def _build_spec(fields: _NUFields, n: int, alpha: float) -> RelWavefunctionSpec:
    leading, edge = _bound_exponents(fields)
    w = wavefun.SWaveform(leading, edge, n, alpha)
    return RelWavefunctionSpec(leading, edge, n, alpha, wavefun.log_norm_quadrature(w))


def kg_wavefunction_spec(
    p: PotentialParams, M: float, E: float, qn: QuantumNumbers, hbar_c: float = HBAR_C_EV_ANGSTROM
) -> RelWavefunctionSpec:
    """Quadrature-normalized Klein-Gordon radial component at a bound E."""
    return _build_spec(_kg_fields(kg_ansatz(p, M, E, qn, hbar_c)), qn.n, p.alpha)


def kg_wavefunction(
    p: PotentialParams, M: float, E: float, qn: QuantumNumbers, r: float, hbar_c: float = HBAR_C_EV_ANGSTROM
) -> float:
    """Convenience single-point evaluation (builds the spec each call)."""
    return rel_radial_value(kg_wavefunction_spec(p, M, E, qn, hbar_c), r)


def kg_norm(
    p: PotentialParams, M: float, E: float, qn: QuantumNumbers, hbar_c: float = HBAR_C_EV_ANGSTROM
) -> NormalizationResult:
    """Quadrature norm plus the printed closed form (undefined symbol read as A).

    The printed constant references Gamma(lambda + n) with lambda undefined;
    it is evaluated with lambda -> A = 2*leading_exp and logged.  None is
    returned for the closed form when A <= 1 makes its (A-1) factor
    nonpositive.
    """
    fields = _kg_fields(kg_ansatz(p, M, E, qn, hbar_c))
    leading, edge = _bound_exponents(fields)
    w = wavefun.SWaveform(leading, edge, qn.n, p.alpha)
    log_quad = wavefun.log_norm_quadrature(w)
    A = 2.0 * leading
    d = edge - 0.5
    closed: Optional[float] = None
    if A > 1.0:
        closed = 0.5 * (
            ln_gamma(qn.n + 1.0)
            + math.log(p.alpha)
            + math.log(A - 1.0)
            + ln_gamma(A + d + qn.n + 1.0)
            - ln_gamma(A + qn.n)
            - ln_gamma(d + qn.n + 2.0)
        )
    return NormalizationResult(log_quadrature=log_quad, log_closed_form=closed)


def upper_spinor_spec(
    p: PotentialParams, M: float, E: float, kappa: int, Cs: float = 0.0, n: int = 0,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> RelWavefunctionSpec:
    """Quadrature-normalized upper-spinor radial component F(r)."""
    return _build_spec(_spin_fields(spin_ansatz(p, M, E, kappa, Cs, hbar_c)), n, p.alpha)


def upper_spinor(
    p: PotentialParams, M: float, E: float, kappa: int, Cs: float, n: int, r: float,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> float:
    return rel_radial_value(upper_spinor_spec(p, M, E, kappa, Cs, n, hbar_c), r)


def upper_spinor_norm(
    p: PotentialParams, M: float, E: float, kappa: int, Cs: float = 0.0, n: int = 0,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> NormalizationResult:
    """Quadrature norm plus the logged closed-form constant (exact at n = 0)."""
    fields = _spin_fields(spin_ansatz(p, M, E, kappa, Cs, hbar_c))
    leading, edge = _bound_exponents(fields)
    w = wavefun.SWaveform(leading, edge, n, p.alpha)
    return NormalizationResult(
        log_quadrature=wavefun.log_norm_quadrature(w),
        log_closed_form=log_norm_closed_form(leading, edge, n, p.alpha),
    )


def lower_spinor_spec(
    p: PotentialParams, M: float, E: float, kappa: int, Cps: float = 0.0, n: int = 0,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> RelWavefunctionSpec:
    """Quadrature-normalized lower-spinor radial component G(r).

    No closed-form constant exists for this branch; quadrature only.
    """
    return _build_spec(_pseudospin_fields(pseudospin_ansatz(p, M, E, kappa, Cps, hbar_c)), n, p.alpha)


def lower_spinor(
    p: PotentialParams, M: float, E: float, kappa: int, Cps: float, n: int, r: float,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> float:
    return rel_radial_value(lower_spinor_spec(p, M, E, kappa, Cps, n, hbar_c), r)


def lower_spinor_norm(
    p: PotentialParams, M: float, E: float, kappa: int, Cps: float = 0.0, n: int = 0,
    hbar_c: float = HBAR_C_EV_ANGSTROM,
) -> NormalizationResult:
    fields = _pseudospin_fields(pseudospin_ansatz(p, M, E, kappa, Cps, hbar_c))
    leading, edge = _bound_exponents(fields)
    w = wavefun.SWaveform(leading, edge, n, p.alpha)
    return NormalizationResult(log_quadrature=wavefun.log_norm_quadrature(w), log_closed_form=None)


# ---------------------------------------------------------------------------
# radial-equation coefficients for the shooting oracle
# ---------------------------------------------------------------------------


def kg_ode_coefficient(p: PotentialParams, M: float, qn: QuantumNumbers, hbar_c: float = HBAR_C_EV_ANGSTROM):
    """W(r; E) of u'' + W u = 0 for the Klein-Gordon radial equation."""
    lam = lambda_D(qn.D, qn.l)
    hc2 = hbar_c**2

    def W(r, E):
        return ((E * E - M * M) - potential_approx(p, r) * (E + M)) / hc2 - centrifugal_approx(p.alpha, r, lam)

    return W


def spin_ode_coefficient(
    p: PotentialParams, M: float, kappa: int, Cs: float = 0.0, hbar_c: float = HBAR_C_EV_ANGSTROM
):
    """W(r; E) for the upper-spinor equation under spin symmetry."""
    b1 = float(kappa * (kappa + 1))
    hc2 = hbar_c**2

    def W(r, E):
        return -(M + E - Cs) * ((M - E) + potential_approx(p, r)) / hc2 - centrifugal_approx(p.alpha, r, b1)

    return W


def pseudospin_ode_coefficient(
    p: PotentialParams, M: float, kappa: int, Cps: float = 0.0, hbar_c: float = HBAR_C_EV_ANGSTROM
):
    """W(r; E) for the lower-spinor equation under pseudospin symmetry."""
    lam1 = float(kappa * (kappa - 1))
    hc2 = hbar_c**2

    def W(r, E):
        return -(M + E - potential_approx(p, r)) * (M - E + Cps) / hc2 - centrifugal_approx(p.alpha, r, lam1)

    return W
