import numpy as np
import pytest
from numpy.testing import assert_allclose

from warpwave import (
    InfeasibleDesignError,
    PulseSpec,
    RolloffProfile,
    WarpDerivativeParams,
)
from warpwave.warpdesign import (
    WarpOptimizer,
    WarpShape,
    anchor_positions,
    expansion_D,
    fit_spline,
    integrate_wdot,
    leakage_per_pulse,
    leakage_single,
    optimize_warp,
    pulse_leakages,
    sweep_alpha2,
    wdot_eval,
)

DESIGN_OUTER = [1.0, 0.48, 0.34, 0.27, 0.17, 0.08]
SYM = WarpDerivativeParams.symmetric(0.49, 0.98, 5.3, 1.8)
IDENTITY = WarpDerivativeParams.identity()


def test_wdot_values():
    assert wdot_eval(SYM, 0.0) == pytest.approx(0.9773, abs=1e-4)
    assert wdot_eval(SYM, 30.0) == pytest.approx(0.49, abs=1e-6)
    assert wdot_eval(SYM, -30.0) == pytest.approx(0.49, abs=1e-6)
    assert_allclose(wdot_eval(IDENTITY, np.linspace(-10, 10, 5)), 1.0)


def test_wdot_one_sided():
    params = WarpDerivativeParams(0.4, 0.9, 0.0, 1.0, 0.5)
    assert wdot_eval(params, -20.0, "one_sided") == pytest.approx(0.4)
    assert wdot_eval(params, 20.0, WarpShape.one_sided) == pytest.approx(0.9)
    assert wdot_eval(params, 0.0, "one_sided") == pytest.approx(0.65)


def test_warp_table():
    table = integrate_wdot(SYM, reach=7.0)
    assert table(0.0) == pytest.approx(0.0, abs=1e-12)
    lo, hi = table.span
    assert lo <= -7.0 and hi >= 7.0
    assert table.inverse(table(1.234)) == pytest.approx(1.234, abs=1e-9)
    with pytest.raises(ValueError):
        table.inverse(hi + 1)
    with pytest.raises(ValueError):
        integrate_wdot(SYM, step=0.01)


def test_identity_expansion():
    assert expansion_D(IDENTITY, 5.5) == pytest.approx(11.0, abs=1e-9)


def test_expansion_grows_with_compression():
    d = expansion_D(SYM, 5.5)
    assert d > 11.0
    # compressing the edges more costs more
    stronger = WarpDerivativeParams.symmetric(0.3, 0.98, 5.3, 1.8)
    assert expansion_D(stronger, 5.5) > d


def test_identity_spline():
    warp = fit_spline(IDENTITY, 6, 12)
    assert warp.anchors == tuple(range(0, 67, 6))
    warp = fit_spline(IDENTITY, 4, 4, 1, 2, first_index=1)
    assert warp.anchors == (0, 4, 8, 12, 16, 20, 24)
    assert list(warp.indices) == list(range(1, 8))


def test_fitted_spline_tracks_positions():
    positions = anchor_positions(SYM, 6, 12, 1, 1)
    warp = fit_spline(SYM, 6, 12, 1, 1)
    assert len(warp.anchors) == 14
    assert np.max(np.abs(np.array(warp.anchors) - positions)) <= 1.0
    steps = np.diff(warp.anchors)
    # stretched edges and a nearly uniform middle
    assert steps[0] > steps[6]
    assert steps[-1] > steps[6]


def test_leakage_follows_bandwidth():
    wide = leakage_single(PulseSpec.symmetric(1.0), IDENTITY)
    assert 0.06 < wide < 0.09
    halved = WarpDerivativeParams(0.5, 0.5, -1.0, 1.0, 1.0)
    assert leakage_single(PulseSpec.symmetric(1.0), halved) < 0.01
    assert leakage_single(PulseSpec.symmetric(0.0), IDENTITY) < 0.02


def test_pulse_leakages():
    profile = RolloffProfile.mirrored(DESIGN_OUTER)
    leak = pulse_leakages(profile, SYM)
    assert leak.shape == (12,)
    assert np.all((leak >= 0) & (leak <= 1))
    assert leakage_per_pulse(profile, SYM, 3) == pytest.approx(leak[3], rel=1e-9)
    # the mirrored design leaks symmetrically
    assert_allclose(leak, leak[::-1], rtol=1e-6, atol=1e-12)
    with pytest.raises(ValueError):
        leakage_per_pulse(profile, SYM, 12)


def test_sweep_alpha2():
    params = WarpDerivativeParams(0.4, 0.9, 0.0, 1.0, 0.5)
    out = sweep_alpha2(params, [0.0, 0.25, 0.5])
    assert out.shape == (3,)
    assert np.all((out >= 0) & (out <= 1))


def test_optimizer_reduces_expansion():
    profile = RolloffProfile.mirrored([0.0, 0.0])
    init = WarpDerivativeParams.symmetric(0.5, 0.95, 1.5, 2.0)
    opt = WarpOptimizer(profile, xi=0.02, max_evals=300)
    improved = []
    finished = []
    opt.events.improved.connect(improved.append)
    opt.events.finished.connect(finished.append)
    solution = opt.run(init)
    assert solution.max_leakage < 0.02
    assert 3.0 - 1e-6 <= solution.expansion < expansion_D(init, 1.5)
    assert len(improved) > 0
    assert finished == [solution]
    assert solution.profile == profile


def test_optimizer_free_inner():
    profile = RolloffProfile.mirrored([0.0, 0.0])
    opt = WarpOptimizer(profile, xi=0.02, free_inner=True, max_evals=100)
    assert opt.n_inner == 2
    solution = opt.run(WarpDerivativeParams.symmetric(0.5, 0.95, 1.5, 2.0))
    assert solution.profile.n_pulses == 4
    assert solution.profile.outer == (0.0, 0.0)


def test_infeasible_design():
    profile = RolloffProfile.mirrored([1.0, 0.5])
    with pytest.raises(InfeasibleDesignError) as e:
        WarpOptimizer(profile, xi=1e-12, max_evals=20).run()
    assert e.value.leakage > 1e-12
    assert isinstance(e.value.last, WarpDerivativeParams)


@pytest.mark.parametrize("alpha", [0.08, 0.48, 1.0])
def test_leakage_is_grid_independent(alpha):
    spec = PulseSpec(1.0, alpha)
    coarse = leakage_single(spec, SYM, position=-3.0)
    fine = leakage_single(spec, SYM, position=-3.0, fs=16)
    assert fine == pytest.approx(coarse, rel=0.02, abs=1e-5)


def test_design_profile_optimization():
    profile = RolloffProfile.mirrored(DESIGN_OUTER)
    sym = optimize_warp(profile, 0.003)
    asym = optimize_warp(profile, 0.003, free_inner=True)
    assert sym.expansion == pytest.approx(14.06, rel=0.1)
    assert asym.expansion <= sym.expansion
    assert sym.max_leakage <= 0.003
    assert asym.max_leakage <= 0.003
    assert asym.profile.outer == profile.outer
