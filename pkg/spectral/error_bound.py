"""
error_bound.py
==============
Uniform bound on |F~(x) - F_Z(x)| at continuity points, in terms of the density-concentration
constant M2 (window mass P(|Z - z0| <= T*eps) <= M2*eps) and the resolution N.
"""
import math
from dataclasses import asdict, dataclass

import daiquiri
import numpy as np

from common.constants import M2_Source
from common.errors import ValidationError
from mixture.model import DistributionEstimate, GridSpec

logger = daiquiri.getLogger("error_bound")


@dataclass(frozen=True)
class ErrorBoundReport:
    m2: float
    epsilon_star: float
    bound: float
    n_resolution: int
    m2_source: str

    @property
    def heuristic(self):
        """Only a true M2 makes the bound rigorous; the density rule of thumb does not."""
        return self.m2_source == M2_Source.DENSITY_RULE

    def to_dict(self):
        report = asdict(self)
        report['heuristic'] = self.heuristic
        return report


def _check_resolution(N):
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or N < 1:
        raise ValidationError("N", f"must be a positive integer, got {N}")


def error_bound(m2, N):
    """2 * sqrt(M2/(2*pi)) * N^(-1/2)."""
    _check_resolution(N)
    if not m2 >= 0:
        raise ValidationError("m2", f"must be non-negative, got {m2}")
    return 2 * math.sqrt(m2 / (2 * math.pi)) / math.sqrt(N)


def optimal_epsilon(m2, N):
    """Window half-width (in units of T) balancing the near-atom and the tail contribution,
       sqrt(2/(pi*N*M2))."""
    _check_resolution(N)
    if not m2 > 0:
        raise ValidationError("m2", f"must be positive to have an optimal window, got {m2}")
    return math.sqrt(2 / (math.pi * N * m2))


def error_terms(m2, N, epsilon):
    """M2*eps/2 + 1/(pi*N*eps): the near-atom and the tail contribution for window
       half-width eps. Minimal at optimal_epsilon, where it equals error_bound."""
    _check_resolution(N)
    if not epsilon > 0:
        raise ValidationError("epsilon", f"must be positive, got {epsilon}")
    return 0.5 * m2 * epsilon + 1 / (math.pi * N * epsilon)


def estimate_m2_from_density(estimate: DistributionEstimate, grid: GridSpec):
    """Rule of thumb M2 = 2*T*max f^(x_i): a window of half-width T*eps under a density of
       at most f* holds a mass of about 2*T*eps*f*."""
    if grid.degenerate:
        raise ValidationError("grid", "degenerate mixture has no density")
    if estimate.density is None:
        raise ValidationError("density", "estimate carries no density values")
    return 2 * grid.T * float(np.max(estimate.density))


def bound_report(m2, N, m2_source) -> ErrorBoundReport:
    if m2_source not in (M2_Source.EXACT_ORACLE, M2_Source.DENSITY_RULE, M2_Source.USER_SUPPLIED):
        raise ValidationError("m2_source", f"unknown source {m2_source}")
    report = ErrorBoundReport(m2=float(m2), epsilon_star=optimal_epsilon(m2, N), bound=error_bound(m2, N),
                              n_resolution=int(N), m2_source=m2_source)
    if report.heuristic:
        logger.warning(f"Error bound {report.bound:.3g} uses the density rule of thumb for M2 and is heuristic")
    return report
