"""
model.py
========
Immutable data model shared by all modules: the empirical samples, the linear mixture
Z = sum_j a_j X^[j] built from them, the frequency/space grid, the spectral coefficients
and the resulting distribution estimate.
"""
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from common.constants import Algorithm
from common.errors import ValidationError


def _frozen_array(values, dtype):
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Sample:
    """Real observations X_1..X_n, each carrying the empirical mass 1/n."""
    values: np.ndarray
    min_value: float = field(init=False)
    max_value: float = field(init=False)

    def __post_init__(self):
        values = _frozen_array(self.values, np.float64).ravel()
        if values.size < 1:
            raise ValidationError("sample", "needs at least one observation")
        if not np.all(np.isfinite(values)):
            raise ValidationError("sample", "observations must be finite")
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'min_value', float(values.min()))
        object.__setattr__(self, 'max_value', float(values.max()))

    @property
    def count(self):
        return int(self.values.size)

    def __len__(self):
        return self.count


@dataclass(frozen=True)
class MixtureSpec:
    """Ordered (a_j, sample_j) pairs. Components may share one Sample object."""
    components: Tuple[Tuple[float, Sample], ...]

    def __post_init__(self):
        components = tuple((float(a), sample) for a, sample in self.components)
        if len(components) < 1:
            raise ValidationError("coeffs", "mixture needs at least one component")
        for a, sample in components:
            if not np.isfinite(a):
                raise ValidationError("coeffs", f"coefficient must be finite, got {a}")
            if not isinstance(sample, Sample):
                raise ValidationError("sample", "component sample must be a Sample")
        object.__setattr__(self, 'components', components)

    @classmethod
    def shared(cls, coefficients: Sequence[float], sample: Sample):
        """Mixture over a single shared sample (the standard case)."""
        return cls(tuple((a, sample) for a in coefficients))

    @property
    def m(self):
        return len(self.components)

    @property
    def coefficients(self):
        return np.array([a for a, _ in self.components])

    def atom_count(self):
        """Size of the atom multiset, prod_j n_j."""
        count = 1
        for _, sample in self.components:
            count *= sample.count
        return count


@dataclass(frozen=True)
class GridSpec:
    """Resolution and period of the spectral grid. Bounds are those of the centered
       variable Z - shift."""
    N: int
    kappa: float
    z_min: float
    z_max: float
    T_Z: float
    T: float
    delta_nu: float
    i_min: int
    shift: float
    degenerate: bool = False

    @property
    def x0(self):
        """Left end of the period window (centered units)."""
        return self.i_min * self.T / self.N

    @property
    def spacing(self):
        return self.T / self.N

    @property
    def indices(self):
        return np.arange(self.i_min, self.i_min + self.N)

    def abscissae(self):
        """Grid points i*T/N + shift for i = i_min..i_min+N-1, in observation units."""
        return self.indices * (self.T / self.N) + self.shift

    def support_window(self):
        """The interval I = [kappa*z_min, kappa*z_max] in centered units."""
        return self.kappa * self.z_min, self.kappa * self.z_max


@dataclass(frozen=True, eq=False)
class SpectralCoefficients:
    """g_k = G(k*delta_nu), k = 0..N-1, with the centering shift folded in."""
    g: np.ndarray
    grid: GridSpec

    def __post_init__(self):
        g = _frozen_array(self.g, np.complex128)
        if g.shape != (self.grid.N,):
            raise ValidationError("coefficients", f"expected {self.grid.N} values, got {g.shape}")
        object.__setattr__(self, 'g', g)


@dataclass(frozen=True, eq=False)
class DistributionEstimate:
    """Tabulated CDF (and optionally the smooth density) on the grid abscissae."""
    x: np.ndarray
    cdf: np.ndarray
    algorithm_tag: str
    density: Optional[np.ndarray] = None
    bound: Optional[float] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        x = _frozen_array(self.x, np.float64)
        cdf = _frozen_array(self.cdf, np.float64)
        if x.ndim != 1 or x.shape != cdf.shape:
            raise ValidationError("estimate", "x and cdf must be 1-D arrays of equal length")
        if x.size > 1 and not np.all(np.diff(x) > 0):
            raise ValidationError("estimate", "x must be strictly increasing")
        if self.algorithm_tag not in (Algorithm.ALG1, Algorithm.ALG2):
            raise ValidationError("algorithm", f"unknown algorithm tag {self.algorithm_tag}")
        object.__setattr__(self, 'x', x)
        object.__setattr__(self, 'cdf', cdf)
        if self.density is not None:
            density = _frozen_array(self.density, np.float64)
            if density.shape != x.shape:
                raise ValidationError("density", "density must align with x")
            object.__setattr__(self, 'density', density)

    def __len__(self):
        return int(self.x.size)

    def with_bound(self, bound):
        return DistributionEstimate(self.x, self.cdf, self.algorithm_tag, self.density, bound, dict(self.metadata))
