"""Expected internal-angle sums of random simplices, by quadrature.

Three quantities are evaluated, all for a simplex with ``n`` vertices in
dimension n-1 and all normalized so a full sphere is 1:

* the angle sum of the regular simplex (the common limit of the random
  families), via the contour formula

      (n / sqrt(2*pi)) * integral  Phi(ix/sqrt(n))^(n-1) * exp(-x^2/2) dx;

* the expected angle sum of the beta simplex with vertex density
  proportional to (1-|x|^2)^beta, via the cosh-kernel formula with
  substitution parameter  alpha = 2*beta + n - 1:

      n * integral  c_(alpha*n/2) * cosh(x)^(-alpha*n-2)
                    * (1/2 + i * I(x))^(n-1) dx,
      I(x) = integral_0^x  c_((alpha-1)/2) * cosh(y)^alpha dy;

* the beta-prime analogue (vertex density proportional to
  (1+|x|^2)^(-beta)) with  alpha = 2*beta - n + 1, outer kernel
  cosh(x)^(-(alpha*n-1)) and inner kernel
  ctilde_((alpha+1)/2) * cosh(y)^(alpha-1).

The integrands are real because the imaginary part is odd in x; each
evaluation integrates that odd part separately and certifies it vanishes.
All powers are combined in log space: (1/2 + i*I)^(n-1) overflows directly
once n is moderately large while the full integrand stays tame.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Literal, Optional

import numpy as np

from .errors import DomainError, NonConvergenceError
from .quad import (
    DEFAULT_CONFIG,
    CumulativeIntegral,
    DecayEnvelope,
    EvalResult,
    QuadratureConfig,
    integrate_line,
)
from .specfun import (
    h_imag_cdf,
    log_half_line_beta_const,
    log_half_line_beta_prime_const,
)

# Tolerances are guaranteed for n <= 20.  Up to n = 40 the near-cancellation
# of (1/2 + i*I)^(n-1) erodes double precision, so error estimates carry an
# inflation factor; beyond 40 evaluation is refused.
N_GUARANTEED = 20
N_MAX = 40
_ESTIMATE_INFLATION = 8.0

_LOG_HALF = math.log(0.5)
_LN2 = math.log(2.0)


def _log_cosh(x: float) -> float:
    a = abs(x)
    return a + math.log1p(math.exp(-2.0 * a)) - _LN2


def _check_n(n: int, minimum: int) -> None:
    if not isinstance(n, (int, np.integer)):
        raise DomainError(f"vertex count n must be an integer, got {n!r}")
    if n < minimum:
        raise DomainError(f"vertex count n must be >= {minimum}, got {n}")
    if n > N_MAX:
        raise DomainError(
            f"vertex count n = {n} exceeds the double-precision ceiling {N_MAX}"
        )


@dataclass(frozen=True)
class AngleSumQuery:
    """Selects which angle-sum quantity to evaluate and how."""

    n: int
    variant: Literal["gaussian_limit", "beta", "beta_prime"]
    beta: Optional[float] = None
    cfg: QuadratureConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if self.variant not in ("gaussian_limit", "beta", "beta_prime"):
            raise DomainError(f"unknown angle-sum variant {self.variant!r}")
        if self.variant == "gaussian_limit":
            if self.beta is not None:
                raise DomainError("gaussian_limit takes no beta parameter")
        elif self.beta is None:
            raise DomainError(f"variant {self.variant!r} requires a beta parameter")


@dataclass(frozen=True)
class AngleSumEvaluation:
    """Angle-sum value plus the separately integrated imaginary part."""

    result: EvalResult
    imaginary_part: float


def _integrate_pair(
    f_re: Callable[[float], float],
    f_im: Callable[[float], float],
    envelope: DecayEnvelope,
    cfg: QuadratureConfig,
    n: int,
    on_refinement=None,
) -> AngleSumEvaluation:
    res_re = integrate_line(f_re, envelope, cfg, symmetric=True, on_refinement=on_refinement)
    res_im = integrate_line(f_im, envelope, cfg, symmetric=False, on_refinement=on_refinement)
    imag = res_im.value
    if abs(imag) >= 10.0 * cfg.abs_tol:
        raise NonConvergenceError(
            f"imaginary part failed to cancel: {imag:.3e} (abs_tol {cfg.abs_tol:.1e})",
            best=res_re,
        )
    estimate = res_re.abs_error_estimate + abs(imag)
    if n > N_GUARANTEED:
        estimate *= _ESTIMATE_INFLATION
    result = EvalResult(
        res_re.value, estimate, "quadrature", res_re.nodes_used + res_im.nodes_used
    )
    return AngleSumEvaluation(result, imag)


def _gaussian_evaluation(n: int, cfg: QuadratureConfig) -> AngleSumEvaluation:
    _check_n(n, minimum=2)
    # substitution u = x / sqrt(n); prefactor n*sqrt(n)/sqrt(2*pi)
    log_pref = 1.5 * math.log(n) - 0.5 * math.log(2.0 * math.pi)

    def term(u: float) -> complex:
        w = complex(log_pref - 0.5 * n * u * u, 0.0)
        w += (n - 1) * cmath.log(complex(0.5, h_imag_cdf(u)))
        return cmath.exp(w)

    # |Phi(iu)| <= (1/2)*(1+u)*exp(u^2/2), giving a sigma=1 Gaussian envelope
    envelope = DecayEnvelope(
        kind="gaussian",
        scale=1.0,
        poly_degree=n - 1,
        log_amplitude=log_pref + (n - 1) * _LOG_HALF,
    )
    return _integrate_pair(
        lambda u: term(u).real, lambda u: term(u).imag, envelope, cfg, n
    )


def _subdivided_grid(nodes: np.ndarray, factor: int) -> np.ndarray:
    """Nonnegative grid through 0 and |nodes|, each gap split `factor` ways.

    Mirrored node pairs from a full-line panel layout land within a few ulp
    of each other; such hairline gaps are kept unsplit so the grid stays
    strictly increasing while every original node remains a grid point.
    """
    base = np.unique(np.concatenate((np.array([0.0]), np.abs(nodes))))
    if factor == 1:
        return base
    pieces = []
    for i in range(base.size - 1):
        lo, hi = base[i], base[i + 1]
        if hi - lo > 1e-9 * max(hi, 1e-300):
            pieces.append(np.linspace(lo, hi, factor + 1)[:-1])
        else:
            pieces.append(base[i : i + 1])
    pieces.append(base[-1:])
    return np.concatenate(pieces)


def _cosh_kernel_evaluation(
    n: int,
    log_c_out: float,
    outer_exponent: float,
    log_c_in: float,
    inner_exponent: float,
    rate: float,
    cfg: QuadratureConfig,
) -> AngleSumEvaluation:
    def g(y: float) -> float:
        return math.exp(log_c_in + inner_exponent * _log_cosh(y))

    holder: dict[str, CumulativeIntegral] = {}

    def rebuild(nodes: np.ndarray) -> None:
        grid = _subdivided_grid(nodes, cfg.inner_grid_factor)
        holder["inner"] = CumulativeIntegral(g, grid, even_integrand=True)

    log_pref = math.log(n) + log_c_out

    def term(x: float) -> complex:
        w = complex(log_pref - outer_exponent * _log_cosh(x), 0.0)
        w += (n - 1) * cmath.log(complex(0.5, holder["inner"](x)))
        return cmath.exp(w)

    # |I(x)| <= c_in * x * cosh(x)^max(inner_exponent, 0) makes the whole
    # integrand exponentially bounded with the stated rate
    log_amp = (
        log_pref
        + (n - 1) * np.logaddexp(_LOG_HALF, log_c_in)
        + rate * _LN2
    )
    envelope = DecayEnvelope(
        kind="exponential", scale=1.0 / rate, poly_degree=n - 1, log_amplitude=float(log_amp)
    )
    return _integrate_pair(
        lambda x: term(x).real,
        lambda x: term(x).imag,
        envelope,
        cfg,
        n,
        on_refinement=rebuild,
    )


def _beta_evaluation(n: int, beta: float, cfg: QuadratureConfig) -> AngleSumEvaluation:
    _check_n(n, minimum=3)
    if n == 3:
        if not beta >= -1.0:
            raise DomainError(
                f"beta angle sum at n = 3 requires beta >= -1, got {beta}"
            )
    elif not beta >= -1.5:
        raise DomainError(
            f"beta angle sum requires beta >= -3/2 (the continuation region), got {beta}"
        )
    alpha = 2.0 * beta + n - 1.0
    return _cosh_kernel_evaluation(
        n,
        log_c_out=log_half_line_beta_const(0.5 * alpha * n),
        outer_exponent=alpha * n + 2.0,
        log_c_in=log_half_line_beta_const(0.5 * (alpha - 1.0)),
        inner_exponent=alpha,
        rate=alpha + 2.0,
        cfg=cfg,
    )


def _beta_prime_evaluation(n: int, beta: float, cfg: QuadratureConfig) -> AngleSumEvaluation:
    _check_n(n, minimum=2)
    threshold = 0.5 * (n - 1) + 0.5 / n
    if not beta > threshold:
        raise DomainError(
            f"beta-prime angle sum requires beta > (n-1)/2 + 1/(2n) = {threshold}"
            f" (else the integral does not converge), got {beta}"
        )
    alpha = 2.0 * beta - n + 1.0
    rate = alpha + n - 2.0 if alpha >= 1.0 else alpha * n - 1.0
    return _cosh_kernel_evaluation(
        n,
        log_c_out=log_half_line_beta_prime_const(0.5 * alpha * n),
        outer_exponent=alpha * n - 1.0,
        log_c_in=log_half_line_beta_prime_const(0.5 * (alpha + 1.0)),
        inner_exponent=alpha - 1.0,
        rate=rate,
        cfg=cfg,
    )


def evaluate_angle_sum(query: AngleSumQuery) -> AngleSumEvaluation:
    """Evaluate an AngleSumQuery, returning value and realness certificate."""
    if query.variant == "gaussian_limit":
        return _gaussian_evaluation(query.n, query.cfg)
    if query.variant == "beta":
        return _beta_evaluation(query.n, query.beta, query.cfg)
    return _beta_prime_evaluation(query.n, query.beta, query.cfg)


def gaussian_angle_sum(n: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> EvalResult:
    """Angle sum of the regular simplex with n vertices."""
    return _gaussian_evaluation(n, cfg).result


def beta_angle_sum(n: int, beta: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> EvalResult:
    """Expected angle sum of the beta simplex with n vertices."""
    return _beta_evaluation(n, beta, cfg).result


def beta_prime_angle_sum(
    n: int, beta: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> EvalResult:
    """Expected angle sum of the beta-prime simplex with n vertices."""
    return _beta_prime_evaluation(n, beta, cfg).result
