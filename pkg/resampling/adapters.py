"""
adapters.py
===========
Maps linear bootstrap problems onto mixtures, so that the bootstrap distribution conditional
on the data is computed exactly instead of by Monte-Carlo resampling.
"""
from dataclasses import dataclass

import daiquiri
import numpy as np
from scipy import linalg

from common.errors import ValidationError
from mixture.model import MixtureSpec, Sample

logger = daiquiri.getLogger("adapters")

RANK_TOLERANCE = 1e-10


def _pivoted_qr(design):
    return linalg.qr(design, mode="economic", pivoting=True)


def _numerical_rank(R):
    diagonal = np.abs(np.diag(R))
    if diagonal.size == 0 or diagonal[0] == 0:
        return 0
    return int(np.count_nonzero(diagonal > RANK_TOLERANCE * diagonal[0]))


@dataclass(frozen=True, eq=False)
class RegressionProblem:
    """Fixed design (rows = observations), response and the index of the coefficient whose
       bootstrap distribution is wanted."""
    design: np.ndarray
    response: np.ndarray
    coefficient_index: int = 0

    def __post_init__(self):
        design = np.array(self.design, dtype=np.float64, copy=True)
        response = np.array(self.response, dtype=np.float64, copy=True).ravel()
        if design.ndim == 1:
            design = design.reshape(-1, 1)
        if design.ndim != 2 or design.shape[0] == 0 or design.shape[1] == 0:
            raise ValidationError("design", "needs at least one observation and one predictor")
        if response.size != design.shape[0]:
            raise ValidationError("response", f"expected {design.shape[0]} values, got {response.size}")
        if not (np.all(np.isfinite(design)) and np.all(np.isfinite(response))):
            raise ValidationError("design", "data must be finite")
        if isinstance(self.coefficient_index, bool) or not 0 <= self.coefficient_index < design.shape[1]:
            raise ValidationError("coef-index", f"must lie in [0, {design.shape[1]}), got {self.coefficient_index}")
        if _numerical_rank(_pivoted_qr(design)[1]) < design.shape[1]:
            raise ValidationError("design", "design matrix does not have full column rank")
        design.setflags(write=False)
        response.setflags(write=False)
        object.__setattr__(self, 'design', design)
        object.__setattr__(self, 'response', response)

    @property
    def observations(self):
        return self.design.shape[0]


def least_squares(problem: RegressionProblem):
    """Returns (beta, residuals, W) where W = (X'X)^-1 X' is formed from a pivoted QR
       decomposition, never from the normal equations."""
    Q, R, permutation = _pivoted_qr(problem.design)
    W = np.empty((problem.design.shape[1], problem.observations))
    W[permutation] = linalg.solve_triangular(R, Q.T)
    beta = W @ problem.response
    residuals = problem.response - problem.design @ beta
    return beta, residuals, W


def mean_bootstrap_spec(sample: Sample) -> MixtureSpec:
    """n components (1/n, sample): Z is distributed as the bootstrap mean given the data."""
    n = sample.count
    return MixtureSpec.shared([1.0 / n] * n, sample)


def residual_bootstrap_spec(problem: RegressionProblem) -> MixtureSpec:
    """Z = sum_j w_j e*_j with e*_j resampled from the centered residuals and w the row of
       (X'X)^-1 X' for the target coefficient, i.e. the distribution of beta*_l - beta^_l
       under residual resampling with fixed design."""
    _, residuals, W = least_squares(problem)
    centered = residuals - residuals.mean()
    weights = W[problem.coefficient_index]
    logger.debug(f"Residual bootstrap: n={problem.observations}, coefficient {problem.coefficient_index}")
    return MixtureSpec.shared(weights, Sample(centered))
