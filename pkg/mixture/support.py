"""
support.py
==========
Support bounds of the mixture and construction of the spectral grid.
"""
import math

import daiquiri

from common.errors import ValidationError
from mixture.model import GridSpec, MixtureSpec

logger = daiquiri.getLogger("support")

DEFAULT_KAPPA = 1.1


def exact_support_bounds(spec: MixtureSpec):
    """Returns (min Z, max Z). Both are attained, so the bounds are exact; they are obtained
       per component from the sample extremes and the coefficient sign."""
    z_min = 0.0
    z_max = 0.0
    for a, sample in spec.components:
        low = a * sample.min_value
        high = a * sample.max_value
        if a < 0:
            low, high = high, low
        z_min += low
        z_max += high
    return z_min, z_max


def build_grid(spec: MixtureSpec, N: int, kappa: float = DEFAULT_KAPPA) -> GridSpec:
    """Computes the grid for resolution N and padding factor kappa. Z is centered on the
       midpoint of its support so that z_min < 0 < z_max; the shift is undone on output."""
    if isinstance(N, bool) or not isinstance(N, int) or N < 2:
        raise ValidationError("N", f"must be an integer >= 2, got {N}")
    if not kappa > 1 or not math.isfinite(kappa):
        raise ValidationError("kappa", f"must be a finite value > 1, got {kappa}")

    raw_min, raw_max = exact_support_bounds(spec)
    if not (math.isfinite(raw_min) and math.isfinite(raw_max)):
        raise ValidationError("support", f"support bounds are not finite ({raw_min}, {raw_max})")

    shift = (raw_min + raw_max) / 2
    z_min = raw_min - shift
    z_max = raw_max - shift
    T_Z = raw_max - raw_min

    if T_Z == 0:
        logger.debug(f"Degenerate mixture, all mass at {shift}")
        return GridSpec(N=N, kappa=kappa, z_min=0.0, z_max=0.0, T_Z=0.0, T=0.0, delta_nu=0.0,
                        i_min=0, shift=shift, degenerate=True)

    T = kappa * T_Z
    i_min = math.floor(N * kappa * z_min / T)
    grid = GridSpec(N=N, kappa=kappa, z_min=z_min, z_max=z_max, T_Z=T_Z, T=T, delta_nu=1 / T,
                    i_min=i_min, shift=shift)
    logger.debug(f"Grid N={N} T={T:.6g} i_min={i_min} shift={shift:.6g}")
    return grid
