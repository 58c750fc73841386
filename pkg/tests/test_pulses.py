import numpy as np
import pytest
from numpy.testing import assert_allclose

from warpwave import DomainError, PulseSpec, WarpingMap
from warpwave.pulses import (
    asym_rc_time,
    rc_freq_prototype,
    rc_time,
    warped_pulse_samples,
    warped_pulse_spectrum,
)


@pytest.mark.parametrize("alpha", [0.0, 0.08, 0.5, 1.0])
def test_rc_zero_crossings(alpha):
    assert rc_time(alpha, 0.0) == pytest.approx(1.0)
    assert_allclose(rc_time(alpha, np.arange(1, 8)), 0.0, atol=1e-12)


def test_rc_singular_points():
    # x = ±1/(2 alpha)
    assert rc_time(1.0, 0.5) == pytest.approx(0.5)
    assert rc_time(0.5, -1.0) == pytest.approx(np.pi / 4 * np.sinc(1.0))
    assert_allclose(rc_time(0.5, 1.0 + 1e-7), rc_time(0.5, 1.0), atol=1e-6)


def test_rc_sinc():
    x = np.linspace(-4, 4, 81)
    assert_allclose(rc_time(0.0, x), np.sinc(x))


def test_asym_rc_branches():
    spec = PulseSpec(1.0, 0.2)
    x = np.linspace(-3, 3, 61)
    out = asym_rc_time(spec, x)
    assert_allclose(out[x < 0], rc_time(1.0, x[x < 0]))
    assert_allclose(out[x >= 0], rc_time(0.2, x[x >= 0]))
    assert asym_rc_time(PulseSpec.symmetric(0.3), 0.7) == rc_time(0.3, 0.7)


def test_rc_freq_prototype():
    assert rc_freq_prototype(0.5, 0.0) == 1.0
    assert rc_freq_prototype(0.5, 0.5) == pytest.approx(0.5)
    assert rc_freq_prototype(0.5, -0.75) == pytest.approx(0.0, abs=1e-15)
    assert rc_freq_prototype(0.5, 0.8) == 0.0
    # pairs around the band edge sum to one
    nu = np.linspace(0.25, 0.5, 11)
    assert_allclose(rc_freq_prototype(0.5, nu) + rc_freq_prototype(0.5, 1 - nu), 1.0)


def test_rc_freq_prototype_rectangular():
    with pytest.warns(RuntimeWarning):
        out = rc_freq_prototype(0.0, [0.2, 0.5, 0.7])
    assert_allclose(out, [1.0, 0.5, 0.0])


def test_identity_warp_gives_sampled_rc():
    warp = WarpingMap.identity(9, v=4)
    spec = PulseSpec.symmetric(0.3)
    pulse = warped_pulse_samples(spec, warp, 4, v=4)
    assert len(pulse) == warp.length
    assert_allclose(pulse.samples.real, rc_time(0.3, (np.arange(33) - 16) / 4), atol=1e-12)
    assert pulse.origin == 16


def test_warped_pulse_anchors():
    warp = WarpingMap((0, 3, 7, 12, 17, 21, 24))
    spec = PulseSpec(0.9, 0.4)
    for n in range(7):
        samples = warped_pulse_samples(spec, warp, n).samples
        at_anchors = samples[list(warp.anchors)]
        expected = np.zeros(7)
        expected[n] = 1.0
        assert_allclose(at_anchors, expected, atol=1e-12)


def test_warped_pulse_padding():
    warp = WarpingMap.identity(5, v=2)
    pulse = warped_pulse_samples(PulseSpec.symmetric(1.0), warp, 2, length=16)
    assert len(pulse) == 16
    assert_allclose(pulse.samples[warp.length:], 0.0)
    with pytest.raises(DomainError):
        warped_pulse_samples(PulseSpec.symmetric(1.0), warp, 5)


def test_warped_pulse_spectrum_parseval():
    warp = WarpingMap((0, 3, 7, 12, 17, 21, 24))
    spec = PulseSpec(0.9, 0.4)
    samples = warped_pulse_samples(spec, warp, 3, length=64).samples
    spectrum = warped_pulse_spectrum(spec, warp, 3, 64)
    assert_allclose(spectrum, np.fft.fft(samples), atol=1e-10)
    assert np.sum(np.abs(spectrum) ** 2) / 64 == pytest.approx(np.sum(np.abs(samples) ** 2))
    with pytest.raises(ValueError):
        warped_pulse_spectrum(spec, warp, 3, 16)
