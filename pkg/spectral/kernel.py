"""
kernel.py
=========
The periodic Dirichlet-type kernel R_{N,T} through which the computed density equals the
atomic density of Z, smoothed and periodized, together with its integral J_{N,T}.
"""
from dataclasses import dataclass

import numpy as np

from common.errors import ValidationError

# Distance of the denominator argument to pi*Z below which the analytic limit is used
SINGULARITY_GUARD = 1e-9
CHUNK_ELEMENTS = 2**20


@dataclass(frozen=True)
class KernelParams:
    N: int
    T: float

    def __post_init__(self):
        if isinstance(self.N, bool) or not isinstance(self.N, (int, np.integer)) or self.N < 2:
            raise ValidationError("N", f"kernel resolution must be an integer >= 2, got {self.N}")
        if not (np.isfinite(self.T) and self.T > 0):
            raise ValidationError("T", f"kernel period must be finite and positive, got {self.T}")

    @property
    def peak(self):
        """Value at the multiples of T, (2N-1)/T."""
        return (2 * self.N - 1) / self.T


def _scalar_or_array(x, result):
    return float(result) if np.ndim(x) == 0 else result


def dirichlet_kernel(params: KernelParams, x):
    """R_{N,T}(x) = (1/T) * sin(2*pi*(2N-1)/(2T)*x) / sin(2*pi*x/(2T)), continuously continued
       with (2N-1)/T at the multiples of T."""
    points = np.asarray(x, dtype=np.float64)
    half_angle = np.pi * points / params.T
    distance = np.abs(half_angle - np.pi * np.round(half_angle / np.pi))
    singular = distance < SINGULARITY_GUARD

    denominator = np.where(singular, 1.0, np.sin(half_angle))
    values = np.sin((2 * params.N - 1) * half_angle) / (params.T * denominator)
    values = np.where(singular, params.peak, values)
    return _scalar_or_array(x, values)


def kernel_integral(params: KernelParams, x):
    """J_{N,T}(x) = x/T + (1/pi) * sum_{k=1}^{N-1} sin(2*pi*k*x/T)/k, the integral of R_{N,T}
       from 0 to x, by direct summation."""
    points = np.asarray(x, dtype=np.float64)
    flat = np.atleast_1d(points).ravel()
    k = np.arange(1, params.N)

    series = np.empty(flat.size)
    rows = max(1, CHUNK_ELEMENTS // k.size)
    for start in range(0, flat.size, rows):
        block = flat[start:start + rows]
        series[start:start + rows] = (np.sin(2 * np.pi * np.multiply.outer(block / params.T, k)) / k).sum(axis=1)

    values = (flat / params.T + series / np.pi).reshape(points.shape)
    return _scalar_or_array(x, values)


def sawtooth_limit(params: KernelParams, x):
    """Pointwise limit of J_{N,T} away from T*Z, 1/2 + floor(x/T)."""
    return 0.5 + np.floor(np.asarray(x, dtype=np.float64) / params.T)


def tail_bound(params: KernelParams, epsilon):
    """Uniform bound 1/(pi*N*epsilon) on |J_{N,T} - (1/2 + floor(x/T))| for points at least
       T*epsilon away from T*Z."""
    if not epsilon > 0:
        raise ValidationError("epsilon", f"must be positive, got {epsilon}")
    return 1 / (np.pi * params.N * epsilon)
