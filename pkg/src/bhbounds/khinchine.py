"""Optimal Khinchine constants and the Gamma machinery behind them.

The lower constant A_p (0 < p <= 2) follows Haagerup's two-regime formula

    A_p = 2^(1/2 - 1/p)                                   for p <= p0,
    A_p = sqrt(2) * (Gamma((p+1)/2) / sqrt(pi))^(1/p)     for p0 < p <= 2,

where p0 ~ 1.8474 is the exponent at which the two expressions agree.
The upper constant B_p equals 1 for every p <= 2 (Jensen), and

    A_{2,r} <= A_r^{-1} B_2 = A_r^{-1}

transfers an L^r average of a Rademacher sum up to L^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "Branch",
    "KhinchineConstant",
    "ln_gamma",
    "power_branch",
    "gamma_branch",
    "haagerup_crossover",
    "khinchine_A",
    "khinchine_B",
    "khinchine_A2r",
]


class Branch(Enum):
    """Which of the two A_p formulas produced a value."""

    POWER_OF_TWO = "power-of-two"
    GAMMA_FORMULA = "gamma-formula"


@dataclass(frozen=True)
class KhinchineConstant:
    """Lower Khinchine constant A_p together with its formula branch."""

    p: float
    value: float
    branch: Branch


# Lanczos approximation, g = 7 with 9 coefficients.  Relative error of the
# reconstructed Gamma stays below 1e-14 on the positive axis, comfortably
# inside the 1e-13 needed here.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_LOG_SQRT_PI = 0.5 * math.log(math.pi)


def ln_gamma(x: float) -> float:
    """Natural logarithm of Gamma(x) for x > 0, via the Lanczos series."""
    if x <= 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    if x < 0.5:
        # Reflection Gamma(x) Gamma(1-x) = pi / sin(pi x); 1 - x >= 0.5.
        return math.log(math.pi / math.sin(math.pi * x)) - ln_gamma(1.0 - x)
    z = x - 1.0
    series = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        series += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(series)


def power_branch(p: float) -> float:
    """A_p candidate 2^(1/2 - 1/p)."""
    return 2.0 ** (0.5 - 1.0 / p)


def gamma_branch(p: float) -> float:
    """A_p candidate sqrt(2) * (Gamma((p+1)/2) / sqrt(pi))^(1/p)."""
    return math.sqrt(2.0) * math.exp((ln_gamma((p + 1.0) / 2.0) - _LOG_SQRT_PI) / p)


def _bisect_crossover() -> float:
    # gamma_branch - power_branch is positive at 1.8 and negative at 1.9;
    # 60 halvings push the bracket far below the 1e-12 target.
    lo, hi = 1.8, 1.9
    lo_positive = gamma_branch(lo) - power_branch(lo) > 0.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if (gamma_branch(mid) - power_branch(mid) > 0.0) == lo_positive:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# Computed once at import so every branch decision in the process sees the
# same threshold.
_P0 = _bisect_crossover()


def haagerup_crossover() -> float:
    """The exponent p0 where the two A_p formulas agree (~1.8474)."""
    return _P0


def khinchine_A(p: float) -> KhinchineConstant:
    """Optimal lower Khinchine constant A_p for 0 < p <= 2."""
    if not 0.0 < p <= 2.0:
        raise ValueError(f"khinchine_A requires 0 < p <= 2, got {p}")
    if p <= _P0:
        return KhinchineConstant(p=p, value=power_branch(p), branch=Branch.POWER_OF_TWO)
    return KhinchineConstant(p=p, value=gamma_branch(p), branch=Branch.GAMMA_FORMULA)


def khinchine_B(p: float) -> float:
    """Optimal upper Khinchine constant B_p; equal to 1 on 0 < p <= 2.

    Exponents above 2 are rejected rather than extended: the constant is
    no longer 1 there and nothing in this package needs it.
    """
    if p <= 0.0:
        raise ValueError(f"khinchine_B requires p > 0, got {p}")
    if p > 2.0:
        raise ValueError(f"khinchine_B is only provided for p <= 2, got {p}")
    return 1.0


def khinchine_A2r(r: float) -> float:
    """Constant A_{2,r} = A_r^{-1} (since B_2 = 1), for 1 <= r <= 2."""
    if not 1.0 <= r <= 2.0:
        raise ValueError(f"khinchine_A2r requires 1 <= r <= 2, got {r}")
    return 1.0 / khinchine_A(r).value
