import math

import numpy as np
import pytest

from spherefields import (
    BumpSpec,
    GridField,
    IndexUndetermined,
    NorthSouth,
    SphericalPoint,
    Spin,
    bound_report,
    elliptic_E,
    ellipse_length,
    index_report,
    lower_bound,
    make_grid,
    perturb,
    poincare_index,
    random_bump,
    stokes_check,
    sweep,
    volume,
)
from spherefields.analysis import IndexReport

TWO_PI_SQ = 2 * math.pi**2


def test_north_south_volume():
    res = volume(NorthSouth())
    assert res.value == pytest.approx(TWO_PI_SQ, rel=1e-12)
    assert res.value == pytest.approx(math.pi * ellipse_length(1), rel=1e-12)


def test_spin4_volume_attains_bound():
    res = volume(Spin(4))
    assert res.value == pytest.approx(16 * math.pi * elliptic_E(0.75), rel=1e-9)
    assert res.value == pytest.approx(60.8743, abs=1e-4)


@pytest.mark.parametrize("k", [1, 3, 4, 5, 6, 10])
def test_equality_family(k):
    res = volume(Spin(k))
    bound = math.pi * ellipse_length(k)
    assert abs(res.value - bound) <= max(1e-6, 10 * res.abs_error_estimate)


def test_spin10_matches_agm():
    assert volume(Spin(10)).value == pytest.approx(40 * math.pi * elliptic_E(1 - 64 / 100), rel=1e-9)


def test_perturbed_spin4_strictly_above_bound():
    field = perturb(Spin(4), BumpSpec(0.3, SphericalPoint(0.0, math.pi), 0.5))
    res = volume(field)
    margin = res.value - lower_bound(4)
    assert margin > 10 * res.abs_error_estimate


@pytest.mark.parametrize("k", range(1, 13))
def test_spin_indexes(k):
    n = poincare_index(Spin(k), "N")
    s = poincare_index(Spin(k), "S")
    assert (n.index, s.index) == (k, 2 - k)
    assert n.residual < 1e-12


@pytest.mark.parametrize("k", [1, 3, 4, 9])
def test_index_independent_of_measuring_latitude(k):
    assert poincare_index(Spin(k), "N", 0.3).index == poincare_index(Spin(k), "N", 1.2).index
    assert poincare_index(Spin(k), "S", -0.3).index == poincare_index(Spin(k), "S", -1.2).index


def test_north_south_indexes():
    rep = index_report(NorthSouth())
    assert (rep.index_north, rep.index_south) == (1, 1)


def test_high_winding_needs_resolution_doubling():
    # 300 turns overflow the default 256 samples; the retry loop must catch it
    assert poincare_index(Spin(301), "N").index == 301


def test_bad_pole_name():
    with pytest.raises(ValueError):
        poincare_index(Spin(3), "E")


def test_grid_indexes():
    rep = index_report(make_grid(Spin(6), 32, 64))
    assert (rep.index_north, rep.index_south) == (6, -4)


def test_noisy_grid_is_undetermined(rng):
    noisy = GridField(rng.uniform(0, 2 * math.pi, (32, 32)))
    with pytest.raises(IndexUndetermined):
        index_report(noisy)
    with pytest.raises(IndexUndetermined):
        bound_report(noisy)


def test_inconsistent_windings_rejected():
    # different windings on two rows means a singularity between them
    theta = np.zeros((16, 32))
    theta[8:] = np.arange(32) * (2 * math.pi / 32)
    with pytest.raises(IndexUndetermined):
        index_report(GridField(theta))


def test_index_report_enforces_poincare_hopf():
    with pytest.raises(IndexUndetermined):
        IndexReport(3, 0, 2.0, 0.0)


@pytest.mark.parametrize("k", [1, 3, 4, 7])
@pytest.mark.parametrize("alpha", [-1.2, -0.5, 0.0, 0.5, 1.2])
def test_stokes_identity(k, alpha):
    chk = stokes_check(Spin(k), alpha, 64)
    assert chk.abs_diff <= 1e-9
    assert chk.rhs == pytest.approx(2 * math.pi * (k - 1 + math.sin(alpha)))


def test_stokes_examples():
    assert stokes_check(Spin(4), 0.0, 64).lhs == pytest.approx(6 * math.pi, abs=1e-12)
    assert stokes_check(Spin(1), 0.0, 64).lhs == pytest.approx(0.0, abs=1e-12)
    assert stokes_check(Spin(3), math.pi / 6, 64).lhs == pytest.approx(5 * math.pi, abs=1e-12)


def test_stokes_holds_for_perturbed_field():
    field = perturb(Spin(4), BumpSpec(0.4, SphericalPoint(0.1, 2.0), 0.6))
    # parallel clear of the support
    assert stokes_check(field, 0.9, 256).abs_diff <= 1e-9
    # crossing the support: the bump's longitude derivative integrates to zero
    assert stokes_check(field, 0.2, 4096).abs_diff <= 1e-9


def test_bound_report_equality_case():
    rep = bound_report(Spin(4))
    assert rep.k == 4 and rep.satisfied and rep.attains_bound
    assert abs(rep.margin) <= 1e-6
    assert rep.note == ""


def test_bound_report_k1_annotated():
    rep = bound_report(NorthSouth())
    assert rep.k == 1
    assert rep.volume.value == pytest.approx(TWO_PI_SQ, rel=1e-12)
    assert rep.bound == pytest.approx(TWO_PI_SQ, rel=1e-15)
    assert abs(rep.margin) < 1e-9
    assert "k <= 2" in rep.note


def test_bound_report_perturbed_spin5():
    rep = bound_report(perturb(Spin(5), BumpSpec(0.25, SphericalPoint(-0.2, 1.0), 0.5)))
    assert rep.satisfied and rep.margin > 0 and not rep.attains_bound


def test_grid_volume_of_sampled_minimiser():
    rep = bound_report(make_grid(Spin(4), 64, 64))
    assert rep.volume.value == pytest.approx(lower_bound(4), rel=1e-9)
    assert rep.satisfied


def test_grid_volume_converges_for_perturbed_field():
    field = perturb(Spin(3), BumpSpec(0.3, SphericalPoint(0.0, 2.0), 1.0))
    exact = volume(field).value
    errs = [abs(volume(make_grid(field, n, n)).value - exact) for n in (64, 128, 256)]
    assert errs[2] < errs[1] < errs[0]
    assert errs[2] < 1e-3


def test_lower_bound_for_random_bumps(rng):
    bases = [NorthSouth(), Spin(1), Spin(3), Spin(4), Spin(5), Spin(6)]
    for i in range(50):
        base = bases[i % len(bases)]
        bump = random_bump(rng)
        rep = bound_report(perturb(base, bump))
        assert rep.satisfied
        if bump.amplitude > 0.01:
            assert rep.margin > 0


def test_bound_monotone_in_k():
    bounds = [lower_bound(k) for k in range(1, 21)]
    assert all(b > a for a, b in zip(bounds, bounds[1:]))


def test_sweep_rows():
    rows = sweep(1, 6)
    assert [r.k for r in rows] == [1, 2, 3, 4, 5, 6]
    assert all(r.rel_gap <= 1e-7 for r in rows)


def test_sweep_k2_degenerate_ellipse():
    (row,) = sweep(2, 2)
    assert row.bound == pytest.approx(8 * math.pi, rel=1e-15)
    assert row.volume == pytest.approx(8 * math.pi, rel=1e-9)


def test_sweep_range_errors():
    with pytest.raises(ValueError):
        sweep(4, 3)
    with pytest.raises(ValueError):
        sweep(0, 3)
