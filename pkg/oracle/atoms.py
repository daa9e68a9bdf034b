"""
atoms.py
========
Exact ground truth by brute-force enumeration of the finitely many values of Z: the atom set,
the exact step CDF and the exact density-concentration constant M2.
"""
import math
from dataclasses import dataclass

import daiquiri
import numpy as np

from common.errors import EnumerationLimitError, ValidationError
from mixture.model import MixtureSpec
from spectral.error_bound import optimal_epsilon

logger = daiquiri.getLogger("oracle")

ENUMERATION_LIMIT = 10**6
ATOM_TOLERANCE = 1e-12
MASS_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class AtomSet:
    """Distinct values z (strictly increasing) of Z with their masses p_z. total_count is the
       size of the multiset the atoms were merged from."""
    z: np.ndarray
    p: np.ndarray
    total_count: int

    def __post_init__(self):
        z = np.array(self.z, dtype=np.float64, copy=True)
        p = np.array(self.p, dtype=np.float64, copy=True)
        if z.ndim != 1 or z.size < 1 or z.shape != p.shape:
            raise ValidationError("atoms", "need matching, non-empty value and mass vectors")
        if z.size > 1 and not np.all(np.diff(z) > 0):
            raise ValidationError("atoms", "values must be strictly increasing")
        if abs(p.sum() - 1) > MASS_TOLERANCE:
            raise ValidationError("atoms", f"masses sum to {p.sum()!r}, not 1")
        z.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, 'z', z)
        object.__setattr__(self, 'p', p)

    def __len__(self):
        return int(self.z.size)


def merge_atoms(values, weights=None, rel_tol=ATOM_TOLERANCE) -> AtomSet:
    """Sorts the values and merges runs closer than rel_tol * max|value|, summing their
       weights. Each group is represented by its smallest member; masses are the weights
       normalized to 1 (uniform weights by default)."""
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size < 1:
        raise ValidationError("atoms", "nothing to merge")
    weights = np.ones(values.size) if weights is None else np.asarray(weights, dtype=np.float64).ravel()
    if weights.shape != values.shape:
        raise ValidationError("weights", "need one weight per value")

    order = np.argsort(values, kind="stable")
    ordered = values[order]
    tolerance = rel_tol * float(np.max(np.abs(ordered)))
    starts = np.concatenate(([0], np.flatnonzero(np.diff(ordered) > tolerance) + 1))
    merged = np.add.reduceat(weights[order], starts)
    return AtomSet(ordered[starts], merged / merged.sum(), int(values.size))


def enumerate_atoms(spec: MixtureSpec, limit=ENUMERATION_LIMIT) -> AtomSet:
    """Sums a_j * x over every tuple of observations, one per component, and merges equal
       values. Every tuple carries the mass prod_j 1/n_j."""
    count = spec.atom_count()
    if count > limit:
        raise EnumerationLimitError(count, limit)

    sums = np.zeros(1)
    for a, sample in spec.components:
        sums = np.add.outer(sums, a * sample.values).ravel()
    atoms = merge_atoms(sums)
    logger.debug(f"Enumerated {count} tuples into {len(atoms)} atoms")
    return atoms


def exact_cdf(atoms: AtomSet, x):
    """Right-continuous step function sum_{z <= x} p_z."""
    points = np.asarray(x, dtype=np.float64)
    cumulative = np.concatenate(([0.0], np.cumsum(atoms.p)))
    values = cumulative[np.searchsorted(atoms.z, points, side="right")]
    return float(values) if np.ndim(x) == 0 else values


def max_window_mass(atoms: AtomSet, half_width):
    """Largest mass inside a closed window of width 2*half_width. Some maximal window has its
       left edge on an atom, so a sweep over the atoms is exact."""
    cumulative = np.concatenate(([0.0], np.cumsum(atoms.p)))
    right = np.searchsorted(atoms.z, atoms.z + 2 * half_width, side="right")
    return float(np.max(cumulative[right] - cumulative[:-1]))


def exact_m2(atoms: AtomSet, T, epsilon_star):
    """max_{z0} P(|Z - z0| <= T*eps) / eps."""
    if not epsilon_star > 0:
        raise ValidationError("epsilon", f"must be positive, got {epsilon_star}")
    return max_window_mass(atoms, T * epsilon_star) / epsilon_star


def self_consistent_m2(atoms: AtomSet, T, N, rel_tol=1e-12):
    """Smallest M2 with exact_m2(atoms, T, optimal_epsilon(M2, N)) <= M2.

    The window mass shrinks and M2 * optimal_epsilon(M2, N) grows with M2, so the condition is
    monotone and bisection in log space applies. At M2 = pi*N/2 the window mass bound is 1."""
    def satisfied(m2):
        return exact_m2(atoms, T, optimal_epsilon(m2, N)) <= m2

    high = math.pi * N / 2 * (1 + 1e-9)
    low = high * 1e-12
    if satisfied(low):
        return low
    while high / low > 1 + rel_tol:
        middle = math.sqrt(low * high)
        if middle <= low or middle >= high:
            break
        if satisfied(middle):
            high = middle
        else:
            low = middle
    return high


def continuity_points(atoms: AtomSet):
    """Midpoints between consecutive distinct atoms, the points farthest from the jumps."""
    return (atoms.z[:-1] + atoms.z[1:]) / 2
