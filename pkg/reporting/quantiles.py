"""
quantiles.py
============
Quantiles read off a tabulated CDF.
"""
import numpy as np

from common.errors import ValidationError
from mixture.model import DistributionEstimate


def monotone_cdf(cdf):
    """Running maximum, which removes the small dips of the spectral reconstruction."""
    return np.maximum.accumulate(np.asarray(cdf, dtype=np.float64))


def quantiles(estimate: DistributionEstimate, probs):
    """For every p, the abscissa where the repaired CDF first reaches p, linearly
       interpolated between the neighbouring grid points and clamped to the grid range."""
    probs = np.asarray(probs, dtype=np.float64).ravel()
    if np.any(~(probs > 0) | ~(probs < 1)):
        raise ValidationError("quantiles", "probabilities must lie strictly inside (0, 1)")

    x = estimate.x
    cdf = monotone_cdf(estimate.cdf)
    result = []
    for p in probs:
        j = int(np.searchsorted(cdf, p, side="left"))
        if j == 0:
            result.append(float(x[0]))
        elif j == cdf.size:
            result.append(float(x[-1]))
        else:
            fraction = (p - cdf[j - 1]) / (cdf[j] - cdf[j - 1])
            result.append(float(x[j - 1] + fraction * (x[j] - x[j - 1])))
    return result
