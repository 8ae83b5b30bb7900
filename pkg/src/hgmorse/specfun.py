"""Special-function kernel: log-gamma, Pochhammer, terminating 2F1, Jacobi.

Everything here is elementary and exact-degree: the hypergeometric series
always terminates (first parameter is a nonpositive integer), so Jacobi
polynomials are evaluated by summing n+1 terms rather than by recurrence.
The three-term recurrence lives in the test suite as an independent oracle.
Gamma-function ratios are taken as exp of log-gamma differences because the
exponents arising from molecular parameters push arguments to ~2e4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameter


def ln_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if not x > 0.0:
        raise InvalidParameter(f"ln_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def pochhammer(x: float, n: int) -> float:
    """Rising factorial x(x+1)...(x+n-1); empty product is 1."""
    if n < 0:
        raise InvalidParameter(f"pochhammer requires n >= 0, got {n!r}")
    out = 1.0
    for k in range(n):
        out *= x + k
    return out


def _hyp2f1_exact(n: int, B: float, C: float, s: float) -> float:
    # float inputs are exact rationals, so the terminating sum can be done
    # without rounding and converted once at the end
    from fractions import Fraction

    Bf, Cf, sf = Fraction(B), Fraction(C), Fraction(s)
    total = Fraction(1)
    term = Fraction(1)
    for k in range(n):
        term *= Fraction(-n + k) * (Bf + k) / ((Cf + k) * (k + 1)) * sf
        total += term
    return float(total)


def hyp2f1_terminating(n: int, B: float, C: float, s: float) -> float:
    """2F1(-n, B; C; s) summed term by term over its n+1 terms.

    C must avoid {0, -1, ..., -(n-1)} so no denominator in range vanishes.
    The alternating sum can cancel catastrophically when B/C is large; such
    cases are detected and redone in exact rational arithmetic.
    """
    if n < 0:
        raise InvalidParameter(f"degree must be >= 0, got {n!r}")
    for k in range(n):
        if C + k == 0.0:
            raise InvalidParameter(f"C = {C!r} hits a nonpositive integer within {n} terms")
    total = 1.0
    term = 1.0
    largest = 1.0
    for k in range(n):
        term *= (-n + k) * (B + k) / ((C + k) * (k + 1.0)) * s
        total += term
        largest = max(largest, abs(term))
    if abs(total) < 0.05 * largest:
        return _hyp2f1_exact(n, B, C, s)
    return total


@dataclass(frozen=True)
class JacobiParams:
    """Degree and exponent pair (theta, vartheta) of a Jacobi polynomial."""

    theta: float
    vartheta: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidParameter(f"degree must be >= 0, got {self.n!r}")


def jacobi_poly(p: JacobiParams, x: float) -> float:
    """P_n^(theta, vartheta)(x) via the terminating hypergeometric sum.

    P_n = (theta+1)_n / n! * 2F1(-n, theta+vartheta+n+1; theta+1; (1-x)/2);
    valid for all real x, exact degree n.
    """
    pref = pochhammer(p.theta + 1.0, p.n) / math.factorial(p.n)
    return pref * hyp2f1_terminating(p.n, p.theta + p.vartheta + p.n + 1.0, p.theta + 1.0, 0.5 * (1.0 - x))


def jacobi_norm_integral(x_exp: float, y_exp: float, n: int) -> float:
    """Weighted L2 norm of a Jacobi polynomial over [-1, 1].

    Integral of ((1-p)/2)^x ((1+p)/2)^y [P_n^(x,y)(p)]^2, where the weight
    exponents match the polynomial parameters:

        2/(2n+x+y+1) * Gamma(n+x+1) Gamma(n+y+1) / (Gamma(n+x+y+1) n!)

    This is the standard identity; adaptive quadrature in the test suite
    confirms it (the n = 0, exponents (1,1) value is exactly 1/3).
    """
    if n < 0:
        raise InvalidParameter(f"degree must be >= 0, got {n!r}")
    if not (x_exp > -1.0 and y_exp > -1.0):
        raise InvalidParameter(f"exponents must be > -1, got ({x_exp!r}, {y_exp!r})")
    lg = (
        ln_gamma(n + x_exp + 1.0)
        + ln_gamma(n + y_exp + 1.0)
        - ln_gamma(n + x_exp + y_exp + 1.0)
        - ln_gamma(n + 1.0)
    )
    return 2.0 / (2.0 * n + x_exp + y_exp + 1.0) * math.exp(lg)
