"""
levy.py
=======
Independent CDF evaluation by numerical quadrature of the Levy inversion integral

    F_Z(x) = (1/pi) * int_0^inf Im[(e^{2 pi i x nu} - e^{2 pi i x0 nu}) G(nu)] / nu dnu,

valid at continuity points x for any x0 below the support. Used to cross-check the spectral
estimate; it shares only G with it.
"""
import daiquiri
import numpy as np

from common.errors import ValidationError
from mixture.model import GridSpec, MixtureSpec
from spectral.charfn import mixture_cf

logger = daiquiri.getLogger("levy")

DEFAULT_STEPS = 100000
# Default truncation frequency in units of 1/T_Z
DEFAULT_NU_MAX_SCALE = 50.0
TAIL_WARNING = 0.01
CHUNK_ELEMENTS = 2**20


def levy_inversion_quadrature(spec: MixtureSpec, grid: GridSpec, x, nu_max=None, steps=DEFAULT_STEPS):
    """Trapezoid rule with `steps` panels on [0, nu_max]. x is given in observation units; the
       lower reference point is the left end of the grid's period window. The integrand at
       nu = 0 is replaced by its limit 2*pi*(x - x0)."""
    if grid.degenerate:
        raise ValidationError("grid", "degenerate mixture has no period window")
    if isinstance(steps, bool) or not isinstance(steps, (int, np.integer)) or steps < 1:
        raise ValidationError("steps", f"must be a positive integer, got {steps}")
    if nu_max is None:
        nu_max = DEFAULT_NU_MAX_SCALE / grid.T_Z
    if not (np.isfinite(nu_max) and nu_max > 0):
        raise ValidationError("nu_max", f"must be finite and positive, got {nu_max}")

    points = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(points)):
        raise ValidationError("x", "evaluation points must be finite")
    x0 = grid.x0 + grid.shift

    nu = np.linspace(0.0, nu_max, steps + 1)
    G = mixture_cf(spec, nu)
    tail = abs(G[-1])
    if tail > TAIL_WARNING:
        logger.warning(f"|G(nu_max)| = {tail:.3g} has not decayed, quadrature truncation may be inaccurate")

    weights = np.full(nu.size, nu_max / steps)
    weights[0] = weights[-1] = nu_max / (2 * steps)
    inner_nu = nu[1:]
    lower = np.exp(2j * np.pi * x0 * inner_nu) * G[1:]

    flat = np.atleast_1d(points).ravel()
    result = np.empty(flat.size)
    rows = max(1, CHUNK_ELEMENTS // inner_nu.size)
    for start in range(0, flat.size, rows):
        block = flat[start:start + rows]
        upper = np.exp(2j * np.pi * np.multiply.outer(block, inner_nu)) * G[1:]
        integrand = (upper - lower).imag / inner_nu
        at_zero = 2 * np.pi * (block - x0)
        result[start:start + rows] = (at_zero * weights[0] + integrand @ weights[1:]) / np.pi

    values = result.reshape(points.shape)
    return float(values) if np.ndim(x) == 0 else values
