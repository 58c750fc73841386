import numpy as np
import pytest
from numpy.testing import assert_allclose

from warpwave import (
    DomainError,
    LinkScenario,
    MonotonicityError,
    PulseSpec,
    RolloffProfile,
    SampledSignal,
    ValidationError,
    WarpDerivativeParams,
    WarpingMap,
)


def test_sampled_signal_is_read_only():
    sig = SampledSignal([1, 2, 3], v=2)
    assert sig.samples.dtype == np.complex128
    with pytest.raises(ValueError):
        sig.samples[0] = 0
    assert len(sig.padded(5)) == 5
    assert_allclose(sig.padded(2).samples, [1, 2])
    assert sig.padded(5).v == 2


@pytest.mark.parametrize("samples", [[], [1.0, np.nan]])
def test_sampled_signal_invalid(samples):
    with pytest.raises(ValidationError):
        SampledSignal(samples)


@pytest.mark.parametrize("alphas", [(1.5, 0.2), (-0.1, 0.2), (0.2, np.nan)])
def test_pulse_spec_range(alphas):
    with pytest.raises(ValidationError):
        PulseSpec(*alphas)


def test_mirrored_profile():
    profile = RolloffProfile.mirrored([1.0, 0.5])
    assert profile.pairs == ((1.0, 1.0), (0.5, 0.5), (0.5, 0.5), (1.0, 1.0))
    assert profile.outer == (1.0, 0.5)
    asym = RolloffProfile.mirrored([1.0, 0.5], [0.3, 0.5])
    assert asym.pairs == ((1.0, 0.3), (0.5, 0.5), (0.5, 0.5), (0.3, 1.0))
    assert not asym.spec(0).is_symmetric
    assert asym.spec(3) == asym.spec(0).swapped()


def test_mirrored_profile_fill():
    profile = RolloffProfile.mirrored([1.0, 0.4], n_pulses=7)
    assert profile.n_pulses == 7
    assert profile.pairs[3] == (0.4, 0.4)
    assert profile.pairs[6] == (1.0, 1.0)


def test_profile_validation_reports_all():
    with pytest.raises(ValidationError) as e:
        RolloffProfile(((0.2, 0.2), (0.5, 0.5), (0.5, 0.5), (0.3, 0.3)))
    # not mirrored and increasing toward the center
    assert len(e.value.problems) >= 2


def test_params_validation():
    with pytest.raises(ValidationError) as e:
        WarpDerivativeParams(0.9, 0.5, 2.0, 1.0, -1.0)
    assert len(e.value.problems) == 3
    params = WarpDerivativeParams.symmetric(0.49, 0.98, 5.3, 1.8)
    assert (params.t1, params.t2) == (-5.3, 5.3)
    assert WarpDerivativeParams.from_vector(params.as_vector()) == params


def test_warping_map_exact_at_anchors():
    warp = WarpingMap((0, 5, 11, 16, 20), first_index=1)
    assert_allclose(warp(np.array(warp.anchors)), [1, 2, 3, 4, 5], atol=0)
    assert warp.length == 21
    assert list(warp.indices) == [1, 2, 3, 4, 5]
    assert np.all(warp.slope(np.arange(21)) > 0)


def test_warping_map_c2():
    warp = WarpingMap((0, 8, 15, 21, 27, 34, 42))
    eps = 1e-7
    for knot in warp.anchors[1:-1]:
        assert_allclose(warp.slope(knot - eps), warp.slope(knot + eps), atol=1e-6)
        assert_allclose(warp.curvature(knot - eps), warp.curvature(knot + eps), atol=1e-6)


def test_warping_map_identity():
    warp = WarpingMap.identity(5, v=3)
    assert warp.anchors == (0, 3, 6, 9, 12)
    assert_allclose(warp(np.arange(13)), np.arange(13) / 3, atol=1e-12)


def test_warping_map_errors():
    with pytest.raises(ValidationError):
        WarpingMap((0, 3, 3, 6))
    with pytest.raises(DomainError):
        WarpingMap((0, 1.5, 3))
    with pytest.raises(DomainError):
        WarpingMap((0, 3, 6))(7.0)
    with pytest.raises(MonotonicityError):
        WarpingMap((0, 1, 2, 3, 40, 41, 42, 43))


def test_scenario_taps():
    assert LinkScenario().taps == 1
    assert LinkScenario(tau_rms=4).taps == 33
    assert LinkScenario(tau_rms=4, n_taps=10).taps == 10
    with pytest.raises(ValidationError):
        LinkScenario(n_bits=0)
