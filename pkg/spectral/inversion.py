"""
inversion.py
============
Reconstruction of density samples, the smooth density and the cumulative distribution
function from the spectral coefficients.

Algorithm 1 accumulates the density samples f~_i cyclically starting at i_min. Algorithm 2
runs the same pipeline on the coefficients multiplied by
phi_k = (exp(2*pi*i*k/N) - 1) / (2*pi*i*k/N), which turns the cyclic sums into exact samples
of the integrated smooth density F~(i*T/N).

All transforms need sum_k c_k exp(+2*pi*i*i*k/N) / N, which is numpy.fft.ifft.
"""
import daiquiri
import numpy as np

from common.constants import Algorithm
from common.errors import DomainError, ValidationError
from mixture.model import DistributionEstimate, GridSpec, SpectralCoefficients

logger = daiquiri.getLogger("inversion")

CHUNK_ELEMENTS = 2**20
# Relative slack (in units of T) for points on the edge of the period window
WINDOW_TOLERANCE = 1e-12


def _points(x):
    points = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(points)):
        raise ValidationError("x", "evaluation points must be finite")
    return points


def _scalar_or_array(x, result):
    return float(result) if np.ndim(x) == 0 else result


def _transform(c):
    """f_i = 2*Re(ifft(c))_i - 1/N, i = 0..N-1 (the Hermitian extension of c to k < 0)."""
    N = c.size
    return 2 * np.fft.ifft(c).real - 1 / N


def density_samples(coeffs: SpectralCoefficients):
    """Density samples f~_i = f~(i*T/N), i = 0..N-1, via a length-N inverse FFT."""
    return _transform(coeffs.g)


def _direct_sum(coeffs: SpectralCoefficients, centered, numerator):
    """Evaluates sum_{k} numerator(k, x) g_k for a vector of centered points in chunks;
       numerator returns the complex weight matrix for a block of points."""
    g = coeffs.g
    flat = np.atleast_1d(centered).ravel()
    result = np.empty(flat.size, dtype=np.complex128)
    rows = max(1, CHUNK_ELEMENTS // g.size)
    for start in range(0, flat.size, rows):
        block = flat[start:start + rows]
        result[start:start + rows] = numerator(block) @ g
    return result.reshape(np.shape(centered))


def density_samples_direct(coeffs: SpectralCoefficients):
    """O(N^2) direct summation of f~_i, the reference for the FFT path."""
    N = coeffs.grid.N
    k = np.arange(N)
    h = _direct_sum(coeffs, np.arange(N, dtype=np.float64),
                    lambda i: np.exp(2j * np.pi * np.multiply.outer(i, k) / N)) / N
    return 2 * h.real - 1 / N


def density_values(coeffs: SpectralCoefficients, x):
    """f~(x) = 2*Re(h~(x)) - 1/N at arbitrary points x given in observation units."""
    grid = coeffs.grid
    N = grid.N
    centered = _points(x) - grid.shift
    k = np.arange(N)
    h = _direct_sum(coeffs, centered,
                    lambda xc: np.exp(2j * np.pi * np.multiply.outer(xc / grid.T, k))) / N
    return _scalar_or_array(x, 2 * h.real - 1 / N)


def _inside_support_window(grid: GridSpec, centered):
    lower, upper = grid.support_window()
    return (centered >= lower) & (centered <= upper)


def smooth_density(coeffs: SpectralCoefficients, x):
    """f^(x) = (N/T) * f~(x) on I = [kappa*z_min, kappa*z_max], zero outside. x is given in
       observation units."""
    grid = coeffs.grid
    points = _points(x)
    values = np.atleast_1d(np.asarray(density_values(coeffs, points), dtype=np.float64)) * (grid.N / grid.T)
    inside = np.atleast_1d(_inside_support_window(grid, points - grid.shift))
    values = np.where(inside, values, 0.0).reshape(points.shape)
    return _scalar_or_array(x, values)


def _cyclic_cumsum(samples, grid: GridSpec):
    """F_{i'} = sum_{i''=i_min}^{i'-1} samples[i'' mod N] for i' = i_min..i_min+N-1."""
    ordered = samples[np.mod(grid.indices, grid.N)]
    cumulative = np.empty_like(ordered)
    cumulative[0] = 0.0
    np.cumsum(ordered[:-1], out=cumulative[1:])
    return cumulative, ordered


def correction_factors(N):
    """phi_k = (exp(2*pi*i*k/N) - 1) / (2*pi*i*k/N) for k = 1..N-1 and phi_0 = 1."""
    theta = 2j * np.pi * np.arange(1, N) / N
    return np.concatenate(([1.0 + 0j], np.expm1(theta) / theta))


def _grid_density(grid: GridSpec, samples):
    ordered = samples[np.mod(grid.indices, grid.N)]
    centered = grid.indices * (grid.T / grid.N)
    return np.where(_inside_support_window(grid, centered), ordered * (grid.N / grid.T), 0.0)


def _estimate(coeffs, cumulative, increments, algorithm, with_density):
    grid = coeffs.grid
    density = _grid_density(grid, density_samples(coeffs)) if with_density else None
    metadata = {
        'N': grid.N,
        'T': grid.T,
        'kappa': grid.kappa,
        'i_min': grid.i_min,
        'shift': grid.shift,
        'total_mass': float(cumulative[-1] + increments[-1]),
    }
    logger.debug(f"{algorithm}: N={grid.N}, total mass {metadata['total_mass']:.15f}")
    return DistributionEstimate(grid.abscissae(), cumulative, algorithm, density=density, metadata=metadata)


def cdf_algorithm1(coeffs: SpectralCoefficients, with_density=False) -> DistributionEstimate:
    """Cyclic accumulation of the density samples f~_i starting at i_min."""
    cumulative, increments = _cyclic_cumsum(density_samples(coeffs), coeffs.grid)
    return _estimate(coeffs, cumulative, increments, Algorithm.ALG1, with_density)


def cdf_algorithm2(coeffs: SpectralCoefficients, with_density=False) -> DistributionEstimate:
    """Algorithm 1 applied to g_k * phi_k. The result equals F~(i*T/N) at every grid index."""
    corrected = coeffs.g * correction_factors(coeffs.grid.N)
    cumulative, increments = _cyclic_cumsum(_transform(corrected), coeffs.grid)
    return _estimate(coeffs, cumulative, increments, Algorithm.ALG2, with_density)


def cdf_estimate(coeffs: SpectralCoefficients, algorithm=Algorithm.ALG2, with_density=False):
    if algorithm == Algorithm.ALG1:
        return cdf_algorithm1(coeffs, with_density)
    if algorithm == Algorithm.ALG2:
        return cdf_algorithm2(coeffs, with_density)
    raise ValidationError("algorithm", f"unknown algorithm {algorithm}")


def cdf_closed_form(coeffs: SpectralCoefficients, x):
    """F~(x) = (x-x0)/T + 2*Re(sum_{k=1}^{N-1} g_k (e^{2 pi i x k/T} - e^{2 pi i x0 k/T}) / (2 pi i k))
       by direct summation. x is given in observation units and must lie within the period
       window [x0, x0+T] after centering."""
    grid = coeffs.grid
    points = _points(x)
    centered = points - grid.shift
    x0 = grid.x0
    slack = WINDOW_TOLERANCE * grid.T
    if np.any(centered < x0 - slack) or np.any(centered > x0 + grid.T + slack):
        raise DomainError(f"evaluation point outside the period window [{x0 + grid.shift}, {x0 + grid.T + grid.shift}]")

    k = np.arange(1, grid.N)
    start_phase = np.exp(2j * np.pi * (x0 / grid.T) * k)
    denominator = 2j * np.pi * k
    tail = coeffs.g[1:]

    flat = np.atleast_1d(centered).ravel()
    series = np.empty(flat.size)
    rows = max(1, CHUNK_ELEMENTS // k.size)
    for start in range(0, flat.size, rows):
        block = flat[start:start + rows]
        # relative to x0, so the series vanishes exactly at the window start
        offset = np.multiply.outer((block - x0) / grid.T, k)
        weights = start_phase * (np.exp(2j * np.pi * offset) - 1) / denominator
        series[start:start + rows] = 2 * (weights @ tail).real

    values = ((flat - x0) / grid.T + series).reshape(points.shape)
    return _scalar_or_array(x, values)


def degenerate_estimate(grid: GridSpec) -> DistributionEstimate:
    """Exact one-step CDF for a mixture concentrated in a single point (T_Z = 0). The grid
       spans a half-width of max(1, |atom|) around the atom, which sits exactly on index N//2."""
    if not grid.degenerate:
        raise ValidationError("grid", "grid is not degenerate")
    N = grid.N
    offsets = (np.arange(N) - N // 2) * (2.0 / N) * max(1.0, abs(grid.shift))
    x = grid.shift + offsets
    cdf = (offsets >= 0).astype(np.float64)
    metadata = {'N': N, 'T': 0.0, 'kappa': grid.kappa, 'i_min': 0, 'shift': grid.shift,
                'total_mass': 1.0, 'degenerate': True}
    return DistributionEstimate(x, cdf, Algorithm.ALG2, density=None, bound=0.0, metadata=metadata)
