"""
charfn.py
=========
Empirical characteristic functions of the mixture components and the spectral coefficient
vector g_k = G(k*delta_nu).

G uses the sign convention G(nu) = E exp(-2*pi*i*Z*nu); the characteristic function
t -> E exp(i*t*Z) of Z equals G(-t/(2*pi)).
"""
import daiquiri
import numpy as np

import common.config as config
import common.helper as helper
from common.errors import ValidationError
from mixture.model import GridSpec, MixtureSpec, Sample, SpectralCoefficients
from mixture.support import exact_support_bounds

logger = daiquiri.getLogger("charfn")

# Upper limit for the number of complex entries of one temporary phasor matrix
CHUNK_ELEMENTS = 2**20
RENORMALIZE_INTERVAL = 512


def _as_frequencies(nu):
    frequencies = np.asarray(nu, dtype=np.float64)
    if not np.all(np.isfinite(frequencies)):
        raise ValidationError("nu", "frequencies must be finite")
    return frequencies


def _scaled_values(sample: Sample, a: float):
    values = a * sample.values
    if not np.all(np.isfinite(values)):
        raise ValidationError("coeffs", f"coefficient {a} times observations is not finite")
    return values


def component_cf(sample: Sample, a: float, nu):
    """Returns (1/n) * sum_i exp(-2*pi*i * a*X_i * nu). Accepts a scalar or an array of
       frequencies; a scalar argument yields a Python complex."""
    frequencies = _as_frequencies(nu)
    values = _scaled_values(sample, a)
    flat = np.atleast_1d(frequencies).ravel()

    result = np.empty(flat.size, dtype=np.complex128)
    rows = max(1, CHUNK_ELEMENTS // values.size)
    for start in range(0, flat.size, rows):
        block = flat[start:start + rows]
        phasors = np.exp(-2j * np.pi * np.multiply.outer(block, values))
        result[start:start + rows] = phasors.sum(axis=1) / values.size

    if frequencies.ndim == 0:
        return complex(result[0])
    return result.reshape(frequencies.shape)


def mixture_cf(spec: MixtureSpec, nu):
    """Returns G(nu) = prod_j G_{a_j X^[j]}(nu), multiplied in component order. Components
       sharing the same coefficient and sample are evaluated once."""
    cache = {}
    product = None
    for a, sample in spec.components:
        key = (a, id(sample))
        if key not in cache:
            cache[key] = component_cf(sample, a, nu)
        product = cache[key] if product is None else product * cache[key]
    return product


def _component_series(values, delta_nu, N, interval, workers):
    """Evaluates (1/n) sum_i exp(-2*pi*i*v_i*k*delta_nu) for k = 0..N-1.

    Each block of `interval` frequencies starts from phasors computed by direct trigonometric
    evaluation and advances them by repeated multiplication with the step phasor. Blocks are
    aligned to multiples of `interval`, so the result does not depend on the worker count."""
    n = values.size
    step_phasor = np.exp(-2j * np.pi * values * delta_nu)

    def block_series(start, stop):
        length = stop - start
        total = np.zeros(length, dtype=np.complex128)
        columns = max(1, CHUNK_ELEMENTS // length)
        for c0 in range(0, n, columns):
            v = values[c0:c0 + columns]
            phasors = np.empty((length, v.size), dtype=np.complex128)
            phasors[0] = np.exp(-2j * np.pi * v * (start * delta_nu))
            phasors[1:] = step_phasor[c0:c0 + columns]
            np.cumprod(phasors, axis=0, out=phasors)
            # reduction along the contiguous axis is pairwise
            total += phasors.sum(axis=1)
        return total / n

    blocks = helper.aligned_blocks(N, interval)
    return np.concatenate(helper.run_blocks(block_series, blocks, workers))


def _check_consistency(spec: MixtureSpec, grid: GridSpec):
    raw_min, raw_max = exact_support_bounds(spec)
    scale = max(abs(raw_min), abs(raw_max), grid.T_Z)
    if abs((raw_max - raw_min) - grid.T_Z) > 1e-9 * scale or abs((raw_min + raw_max) / 2 - grid.shift) > 1e-9 * scale:
        raise ValidationError("grid", "grid was not built for this mixture")


def spectral_coefficients(spec: MixtureSpec, grid: GridSpec, workers=None,
                          interval=RENORMALIZE_INTERVAL) -> SpectralCoefficients:
    """Computes g_k = exp(2*pi*i*s*k*delta_nu) * G(k*delta_nu), k = 0..N-1, with s the
       centering shift of the grid. Costs O(n*m*N) complex multiplications; g_0 is set to 1."""
    if grid.degenerate:
        raise ValidationError("grid", "degenerate grid has no spectral representation")
    _check_consistency(spec, grid)
    if workers is None:
        workers = config.worker_count()

    N = grid.N
    logger.debug(f"Spectral coefficients: N={N}, m={spec.m}, workers={workers}")

    cache = {}
    g = np.ones(N, dtype=np.complex128)
    for a, sample in spec.components:
        key = (a, id(sample))
        if key not in cache:
            cache[key] = _component_series(_scaled_values(sample, a), grid.delta_nu, N, interval, workers)
        g *= cache[key]

    k = np.arange(N)
    g = np.exp(2j * np.pi * grid.shift * (k * grid.delta_nu)) * g
    if not np.all(np.isfinite(g)):
        raise ValidationError("coefficients", "spectral coefficients are not finite")
    g[0] = 1.0
    return SpectralCoefficients(g, grid)


def spectral_coefficients_direct(spec: MixtureSpec, grid: GridSpec) -> SpectralCoefficients:
    """Reference evaluation of the coefficients by direct trigonometric evaluation at every k."""
    if grid.degenerate:
        raise ValidationError("grid", "degenerate grid has no spectral representation")
    k = np.arange(grid.N)
    nu = k * grid.delta_nu
    g = np.exp(2j * np.pi * grid.shift * nu) * mixture_cf(spec, nu)
    g[0] = 1.0
    return SpectralCoefficients(g, grid)


def hermitian_defect(spec: MixtureSpec, nu):
    """max |G(-nu) - conj(G(nu))|, zero up to rounding for real-valued Z."""
    frequencies = np.atleast_1d(_as_frequencies(nu))
    return float(np.max(np.abs(mixture_cf(spec, -frequencies) - np.conj(mixture_cf(spec, frequencies)))))
