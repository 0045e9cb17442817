"""Sampled plane model: unimodular slices, bumps, quadrature isometry."""

from fractions import Fraction

import numpy as np
import pytest

from tauzak.groups import StructureError
from tauzak.plane import (
    IDENTITY,
    SHEAR,
    BumpSum,
    CosineBump,
    SampledPlaneSystem,
    convergence_report,
    dual_lattice_pairings_are_integral,
    isometry_report,
    plane_dual_action,
    plane_pairing,
    probe_bumps,
    probe_system,
    quasi_periodicity_residual,
    signal_mass,
    sigma_inverse,
    sl2_zak_grid,
    sl2_zak_point,
    zak_mass,
)


# ---------------------------------------------------------------------------
# system construction

def test_determinant_gate():
    with pytest.raises(StructureError):
        SampledPlaneSystem([((1, 0), (0, 2))], alpha=1, beta=2,
                           samples=4, support_radius=2)


def test_lattice_stability_gate():
    # the lower shear scales against alpha/beta = 1/2, breaking stability
    with pytest.raises(StructureError):
        SampledPlaneSystem([((1, 0), (1, 1))], alpha=1, beta=2,
                           samples=4, support_radius=2)
    # on the square lattice the same slice is fine
    SampledPlaneSystem([((1, 0), (1, 1))], alpha=1, beta=1,
                       samples=4, support_radius=2)


def test_grid_geometry():
    system = probe_system(8)
    assert float(system.alpha) == 1.0 and float(system.beta) == 2.0
    assert system.x_nodes()[0][0] == pytest.approx(1.0 / 16.0)
    assert system.x_nodes()[1][0] == pytest.approx(2.0 / 16.0)
    assert system.x_grid().shape == (64, 2)
    assert system.cell_x * 64 == pytest.approx(2.0)          # alpha * beta
    assert system.zak_weight == pytest.approx(
        system.cell_x * system.cell_w * 2.0)


def test_with_samples_keeps_slices():
    system = probe_system(8)
    fine = system.with_samples(16)
    assert fine.samples == 16
    assert fine.sigmas == system.sigmas
    assert fine.support_radius == system.support_radius


# ---------------------------------------------------------------------------
# matrices, pairing, dual action

def test_sigma_inverse():
    assert sigma_inverse(SHEAR) == ((1, -1), (0, 1))
    assert sigma_inverse(IDENTITY) == IDENTITY


def test_dual_action_of_shear():
    w = plane_dual_action(SHEAR, (Fraction(3), Fraction(5)))
    assert w == (Fraction(3), Fraction(2))      # (w1, w2 - w1)


def test_pairing_value():
    assert plane_pairing((0.5, 0.0), (1.0, 0.0)) == pytest.approx(-1.0)
    assert plane_pairing((0.25, 0.5), (1.0, 1.0)) == pytest.approx(
        np.exp(-2j * np.pi * 0.75))


def test_dual_lattice_pairings_integral():
    assert dual_lattice_pairings_are_integral(probe_system(4))


# ---------------------------------------------------------------------------
# bumps

def test_bump_peak_and_support():
    bump = CosineBump(center=(0.5, 0.6), halfwidth=(0.35, 0.5))
    assert bump(0.5, 0.6) == pytest.approx(1.0)
    assert bump(0.86, 0.6) == 0.0
    assert bump.support() == pytest.approx((0.15, 0.85, 0.1, 1.1))


def test_bump_mass_matches_quadrature():
    bump = CosineBump(center=(0.5, 0.6), halfwidth=(0.35, 0.5), amplitude=0.8)
    lo1, hi1, lo2, hi2 = bump.support()
    n = 1500
    xs = lo1 + (hi1 - lo1) * (np.arange(n) + 0.5) / n
    ys = lo2 + (hi2 - lo2) * (np.arange(n) + 0.5) / n
    values = bump(xs[:, None], ys[None, :])
    numeric = float(np.sum(values ** 2)) * (hi1 - lo1) * (hi2 - lo2) / n ** 2
    assert bump.l2_mass() == pytest.approx(numeric, rel=1e-6)


def test_truncated_bump_mass_and_jump():
    cut = 1.0 / 3.0
    bump = CosineBump(center=(0.55, 1.55), halfwidth=(0.45, 0.35),
                      amplitude=0.7, left_cut=cut)
    full = CosineBump(center=(0.55, 1.55), halfwidth=(0.45, 0.35),
                      amplitude=0.7)
    assert bump(cut - 1e-9, 1.55) == 0.0
    assert bump(cut + 1e-9, 1.55) > 0.2
    assert bump.l2_mass() < full.l2_mass()
    lo1, hi1, lo2, hi2 = bump.support()
    assert lo1 == pytest.approx(cut)
    n = 1500
    xs = lo1 + (hi1 - lo1) * (np.arange(n) + 0.5) / n
    ys = lo2 + (hi2 - lo2) * (np.arange(n) + 0.5) / n
    numeric = float(np.sum(bump(xs[:, None], ys[None, :]) ** 2)) \
        * (hi1 - lo1) * (hi2 - lo2) / n ** 2
    assert bump.l2_mass() == pytest.approx(numeric, rel=1e-5)


def test_overlapping_bumps_rejected():
    with pytest.raises(StructureError):
        BumpSum([CosineBump((0.5, 0.5), (0.3, 0.3)),
                 CosineBump((0.6, 0.6), (0.3, 0.3))])


def test_disjoint_bump_mass_adds():
    a = CosineBump((0.3, 0.3), (0.2, 0.2))
    b = CosineBump((0.8, 0.8), (0.15, 0.15))
    assert BumpSum([a, b]).l2_mass() == pytest.approx(a.l2_mass() + b.l2_mass())


# ---------------------------------------------------------------------------
# pointwise transform

def test_single_translate_case():
    # bump inside one fundamental cell: exactly one lattice term survives,
    # so the modulus equals the bump value at the transported point
    system = probe_system(8)
    bump = CosineBump(center=(0.5, 1.0), halfwidth=(0.3, 0.4))
    for x in ((0.5, 1.0), (0.4, 0.9), (0.7, 1.2)):
        for w in ((0.0, 0.0), (0.3, 0.1), (0.9, 0.45)):
            value = sl2_zak_point(system, {0: bump}, 0, x, w)
            assert value == pytest.approx(complex(float(bump(*x)), 0.0))


def test_missing_slice_is_zero():
    system = probe_system(8)
    assert sl2_zak_point(system, {0: probe_bumps()[0]}, 1, (0.5, 0.5),
                         (0.1, 0.1)) == 0j
    assert np.all(sl2_zak_grid(system, {}, 0) == 0)


def test_grid_matches_scalar_reference():
    system = probe_system(8)
    bumps = probe_bumps()
    rng = np.random.default_rng(7)
    for index in (0, 1):
        grid = sl2_zak_grid(system, bumps, index)
        X, W = system.x_grid(), system.w_grid()
        for _ in range(25):
            i = int(rng.integers(0, X.shape[0]))
            j = int(rng.integers(0, W.shape[0]))
            ref = sl2_zak_point(system, bumps, index, tuple(X[i]), tuple(W[j]))
            assert abs(grid[i, j] - ref) < 1e-9


def test_support_radius_enforced():
    tight = SampledPlaneSystem([IDENTITY, SHEAR], alpha=1, beta=2,
                               samples=8, support_radius=0)
    with pytest.raises(StructureError, match="support_radius"):
        sl2_zak_grid(tight, probe_bumps(), 1)


# ---------------------------------------------------------------------------
# quadrature isometry

def test_isometry_within_one_percent():
    report = isometry_report(probe_system(16), probe_bumps())
    assert report.signal_side > 0.2
    assert report.rel_error < 0.01


def test_error_shrinks_when_doubling():
    report = convergence_report(probe_system(8), probe_bumps())
    assert report.fine.rel_error < report.coarse.rel_error
    assert report.ratio > 1.2


def test_zak_mass_decomposes_over_slices():
    system = probe_system(8)
    bumps = probe_bumps()
    total = zak_mass(system, bumps)
    parts = sum(zak_mass(system, {i: bumps[i]}) for i in bumps)
    assert total == pytest.approx(parts)
    assert signal_mass(bumps) == pytest.approx(
        sum(b.l2_mass() for b in bumps.values()))


def test_quasi_periodicity_at_sample_points():
    system = probe_system(8)
    bumps = probe_bumps()
    points = [((0.3, 0.7), (0.25, 0.4)), ((0.6, 1.1), (0.8, 0.05))]
    for index in (0, 1):
        assert quasi_periodicity_residual(system, bumps, index, points) < 1e-9
