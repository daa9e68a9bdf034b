"""
test_support.py
===============
"""
import pytest

from common.errors import ValidationError
from mixture.model import MixtureSpec, Sample
from mixture.support import build_grid, exact_support_bounds
from oracle.atoms import enumerate_atoms


def test_support_single_component():
    assert exact_support_bounds(MixtureSpec.shared([1.0], Sample([0.0, 1.0]))) == (0.0, 1.0)


def test_support_negative_coefficient_swaps_extremes():
    sample = Sample([0.0, 1.0])
    spec = MixtureSpec(((0.5, sample), (-0.5, sample)))
    assert exact_support_bounds(spec) == (-0.5, 0.5)


def test_support_two_components():
    assert exact_support_bounds(MixtureSpec.shared([1.0, 2.0], Sample([-1.0, 2.0]))) == (-3.0, 6.0)


@pytest.mark.parametrize("seed", range(20))
def test_support_matches_enumeration(random_spec, seed):
    spec = random_spec(seed)
    atoms = enumerate_atoms(spec)
    z_min, z_max = exact_support_bounds(spec)
    assert atoms.z[0] == pytest.approx(z_min, rel=1e-12, abs=1e-15)
    assert atoms.z[-1] == pytest.approx(z_max, rel=1e-12, abs=1e-15)


def test_grid_symmetric_sample():
    grid = build_grid(MixtureSpec.shared([1.0], Sample([-1.0, 1.0])), 8, 2.0)
    assert grid.T_Z == 2.0
    assert grid.T == 4.0
    assert grid.delta_nu == 0.25
    assert grid.shift == 0.0
    assert grid.i_min == -4
    assert not grid.degenerate


def test_grid_shifted_sample():
    grid = build_grid(MixtureSpec.shared([1.0], Sample([0.0, 1.0])), 4, 1.5)
    assert grid.shift == 0.5
    assert (grid.z_min, grid.z_max) == (-0.5, 0.5)
    assert grid.T == 1.5
    assert grid.i_min == -2


def test_grid_degenerate():
    grid = build_grid(MixtureSpec.shared([1.0], Sample([5.0, 5.0])), 16)
    assert grid.degenerate
    assert grid.T_Z == 0.0
    assert grid.shift == 5.0


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("N", [256, 1000, 4096])
def test_grid_invariants(random_spec, seed, N):
    grid = build_grid(random_spec(seed), N)
    assert grid.T > grid.T_Z
    assert grid.delta_nu * grid.T == pytest.approx(1.0, rel=1e-15)
    assert grid.z_min < 0 < grid.z_max
    assert grid.x0 <= grid.kappa * grid.z_min
    assert grid.x0 + (N - 1) * grid.spacing > grid.z_max
    assert len(grid.abscissae()) == N


@pytest.mark.parametrize("scale", [2.0, 4.0])
def test_grid_scale_equivariance(scale):
    sample = Sample([-0.3, 0.1, 0.7, 1.9])
    grid = build_grid(MixtureSpec.shared([1.0, 0.5], sample), 512)
    scaled = build_grid(MixtureSpec.shared([scale, 0.5 * scale], sample), 512)
    assert scaled.i_min == grid.i_min
    assert scaled.T == pytest.approx(scale * grid.T, rel=1e-14)
    assert scaled.abscissae() == pytest.approx(scale * grid.abscissae(), rel=1e-12, abs=1e-12)


def test_grid_rejects_small_kappa():
    with pytest.raises(ValidationError) as e:
        build_grid(MixtureSpec.shared([1.0], Sample([0.0, 1.0])), 16, 1.0)
    assert e.value.field == "kappa"


def test_grid_rejects_small_resolution():
    with pytest.raises(ValidationError) as e:
        build_grid(MixtureSpec.shared([1.0], Sample([0.0, 1.0])), 1)
    assert e.value.field == "N"


def test_grid_rejects_nonfinite_support():
    with pytest.raises(ValidationError) as e:
        build_grid(MixtureSpec.shared([1e308, 1e308], Sample([0.0, 1e308])), 16)
    assert e.value.field == "support"
