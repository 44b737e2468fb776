"""Reinforcement kernel: log-Cauchy density plus logarithmic growth.

The kernel converts an association's initial weight into a mass increment.
It is the sum of a logarithm (slow, saturating growth under repetition)
and a log-Cauchy density (a heavy-tailed perturbation that gives each
simulated agent its own character near the domain boundary).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import KernelDomainError, ParameterError


@dataclass(frozen=True)
class KernelParams:
    """Location and scale of the log-Cauchy perturbation.

    One (mu, sigma) pair is fixed per simulated agent; sigma must be
    strictly positive and both values finite.
    """

    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma)):
            raise ParameterError(
                f"kernel parameters must be finite, got mu={self.mu}, sigma={self.sigma}"
            )
        if self.sigma <= 0:
            raise ParameterError(f"sigma must be > 0, got {self.sigma}")


def log_cauchy_pdf(x: float, params: KernelParams) -> float:
    """Density of the log-Cauchy distribution at x, for x > 1.

    Evaluates 1 / (x * pi * sigma * (1 + ((ln x - mu) / sigma)^2)).
    Strictly positive and finite on the whole accepted domain.
    """
    if not x > 1:
        raise KernelDomainError(f"log-Cauchy density requires x > 1, got {x}")
    z = (math.log(x) - params.mu) / params.sigma
    return 1.0 / (x * math.pi * params.sigma * (1.0 + z * z))


def reinforcement(x: float, params: KernelParams) -> float:
    """Mass increment earned by a weight x: 0 at x = 0, else ln(x) + pdf(x).

    Weights in (0, 1] never occur in a well-formed simulation (every
    initial weight exceeds 1), so they are rejected rather than clamped.
    """
    if x == 0:
        return 0.0
    if not x > 1:
        raise KernelDomainError(
            f"reinforcement is defined for x = 0 or x > 1, got {x}"
        )
    return math.log(x) + log_cauchy_pdf(x, params)


@dataclass(frozen=True)
class MonotonicityReport:
    """Result of a grid scan: monotone flag plus the first violating sample."""

    monotone: bool
    violation_x: float | None = None
    violation_value: float | None = None


def validate_kernel_params(params: KernelParams, grid_lo: float, grid_hi: float,
                           steps: int) -> MonotonicityReport:
    """Scan the kernel on a geometric grid and report strict monotonicity.

    The kernel is not monotone for every parameter choice (a sharp density
    spike near x = 1 can outpace the logarithm), so callers should check
    the parameters they intend to simulate with.
    """
    if not (1 < grid_lo < grid_hi):
        raise ParameterError(
            f"grid bounds must satisfy 1 < lo < hi, got [{grid_lo}, {grid_hi}]"
        )
    if steps < 2:
        raise ParameterError(f"grid needs at least 2 samples, got {steps}")
    ratio = (grid_hi / grid_lo) ** (1.0 / (steps - 1))
    prev = None
    for i in range(steps):
        x = grid_lo * ratio**i
        value = reinforcement(x, params)
        if prev is not None and value <= prev:
            return MonotonicityReport(False, violation_x=x, violation_value=value)
        prev = value
    return MonotonicityReport(True)
