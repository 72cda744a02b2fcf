"""Closed-form simplex probabilities.

Every entry stores the exact expression (rational numbers, powers of pi,
generalized binomials through the Gamma function) and evaluates it on
demand; nothing is kept as a pre-rounded decimal.  Large binomial powers
are combined in log space and exponentiated once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .specfun import log_gen_binomial

_PI2 = math.pi * math.pi


def uniform_ball_probability(d: int) -> float:
    """Simplex probability for the uniform distribution on the unit ball.

    (d+2)/2^d * binom(d+1, (d+1)/2)^(d+1) / binom((d+1)^2, (d+1)^2/2),
    read through the Gamma function for half-integer lower indices.
    """
    m = d + 1
    log_p = (
        math.log(d + 2)
        - d * math.log(2.0)
        + m * log_gen_binomial(m, 0.5 * m)
        - log_gen_binomial(m * m, 0.5 * m * m)
    )
    return math.exp(log_p)


def linear_weight_probability(d: int) -> float:
    """Simplex probability for ball density proportional to (1 - |x|^2).

    2*pi*(d+2)*((d+2)^2+1)*((d+2)^2+d+4) / ((d+5) * 2^((d+2)(2d+5)))
    * binom(d+3, (d+3)/2)^(d+1) * binom((d+2)^2, (d+2)^2/2).
    """
    m = d + 2
    log_p = (
        math.log(2.0 * math.pi)
        + math.log(m)
        + math.log(m * m + 1.0)
        + math.log(m * m + d + 4.0)
        - math.log(d + 5.0)
        - m * (2 * d + 5) * math.log(2.0)
        + (d + 1) * log_gen_binomial(d + 3, 0.5 * (d + 3))
        + log_gen_binomial(m * m, 0.5 * m * m)
    )
    return math.exp(log_p)


def inverse_sqrt_weight_probability(d: int) -> Optional[float]:
    """Simplex probability for ball density prop. to 1/sqrt(1 - |x|^2), d = 2..5."""
    if d == 2:
        return 0.25
    if d == 3:
        return 539.0 / (144.0 * _PI2) - 1.0 / 3.0
    if d == 4:
        return 25411.0 / 3670016.0
    if d == 5:
        return (
            1.0 / 3.0
            + 113537407.0 / (24192000.0 * _PI2 * _PI2)
            - 2144238917.0 / (570810240.0 * _PI2)
        )
    return None


def sqrt_weight_probability(d: int) -> Optional[float]:
    """Simplex probability for ball density prop. to sqrt(1 - |x|^2), d = 2..4."""
    if d == 2:
        return 401.0 / 1280.0
    if d == 3:
        return 1692197.0 / (423360.0 * _PI2) - 1.0 / 3.0
    if d == 4:
        return 112433094897.0 / 8598524526592.0
    return None


def heavy_tail_special_probability(d: int) -> float:
    """Simplex probability for density prop. to (1+|x|^2)^(-(d+2)/2).

    4*(2d+3) / binom(2d+4, d+2).
    """
    return math.exp(
        math.log(4.0 * (2 * d + 3)) - log_gen_binomial(2 * d + 4, d + 2)
    )


def gaussian_probability(d: int) -> Optional[float]:
    """Gaussian simplex probability in the two dimensions with arcsin forms."""
    if d == 2:
        return 1.0 - (6.0 / math.pi) * math.asin(1.0 / 3.0)
    if d == 3:
        return 0.5 - (5.0 / math.pi) * math.asin(0.25)
    return None


@dataclass(frozen=True)
class ClosedFormEntry:
    """An exact registry value with its human-readable expression."""

    family: str
    d: int
    beta: Optional[float]
    description: str
    value: float


def lookup(family: str, d: int, beta: Optional[float]) -> Optional[ClosedFormEntry]:
    """Exact value for (family, d, beta) if the registry covers it."""
    if d == 1:
        # three points on a line always leave the middle one inside
        return ClosedFormEntry(family, d, beta, "1", 1.0)
    if family == "gaussian":
        value = gaussian_probability(d)
        if value is not None:
            desc = (
                "1 - (6/pi)*arcsin(1/3)" if d == 2 else "1/2 - (5/pi)*arcsin(1/4)"
            )
            return ClosedFormEntry(family, d, None, desc, value)
        return None
    if family == "beta":
        if beta == -1.0:
            return ClosedFormEntry(family, d, beta, "0  (uniform-on-sphere limit)", 0.0)
        if beta == 0.0:
            return ClosedFormEntry(
                family, d, beta,
                f"(d+2)/2^d * binom({d + 1},{(d + 1) / 2})^{d + 1} / binom({(d + 1) ** 2},{(d + 1) ** 2 / 2})",
                uniform_ball_probability(d),
            )
        if beta == 1.0:
            m = d + 2
            return ClosedFormEntry(
                family, d, beta,
                f"2*pi*{m}*{m * m + 1}*{m * m + d + 4}/({d + 5}*2^{m * (2 * d + 5)})"
                f" * binom({d + 3},{(d + 3) / 2})^{d + 1} * binom({m * m},{m * m / 2})",
                linear_weight_probability(d),
            )
        if beta == -0.5:
            value = inverse_sqrt_weight_probability(d)
            if value is not None:
                desc = {
                    2: "1/4",
                    3: "539/(144*pi^2) - 1/3",
                    4: "25411/3670016",
                    5: "1/3 + 113537407/(24192000*pi^4) - 2144238917/(570810240*pi^2)",
                }[d]
                return ClosedFormEntry(family, d, beta, desc, value)
        if beta == 0.5:
            value = sqrt_weight_probability(d)
            if value is not None:
                desc = {
                    2: "401/1280",
                    3: "1692197/(423360*pi^2) - 1/3",
                    4: "112433094897/8598524526592",
                }[d]
                return ClosedFormEntry(family, d, beta, desc, value)
        return None
    if family == "beta_prime":
        if beta == 0.5 * d + 1.0:
            return ClosedFormEntry(
                family, d, beta,
                f"4*{2 * d + 3}/binom({2 * d + 4},{d + 2})",
                heavy_tail_special_probability(d),
            )
        return None
    raise DomainError(f"unknown family {family!r}")


# presets for tabulated output; (family, d, beta) triples per preset
TABLE_PRESETS = {
    "gauss": [("gaussian", d, None) for d in (2, 3)],
    "kingman": [("beta", d, 0.0) for d in range(1, 9)],
    "arcsine": [("beta", d, -0.5) for d in range(2, 6)],
    "semispherical": [("beta", d, 0.5) for d in range(2, 5)],
    "betaprime-special": [("beta_prime", d, 0.5 * d + 1.0) for d in range(2, 9)],
}
