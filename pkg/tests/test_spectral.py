import numpy as np
import pytest
from numpy.testing import assert_allclose

from warpwave.spectral import (
    OpCount,
    PruneSpec,
    bit_reverse,
    complexity_model,
    dft_ref,
    fft_dif_pruned,
    fft_radix2,
    full_count,
    ifft_dit_pruned,
    ifft_radix2,
)
from warpwave import ValidationError


def _random_sets(rng, n):
    n_in = int(rng.integers(1, n + 1))
    n_out = int(rng.integers(1, n + 1))
    return (
        rng.choice(n, n_in, replace=False).tolist(),
        rng.choice(n, n_out, replace=False).tolist(),
    )


@pytest.mark.parametrize("n", [64, 128, 512])
def test_pruned_fft_matches_dft(n):
    rng = np.random.default_rng(n)
    for _ in range(1000):
        nonzero, keep = _random_sets(rng, n)
        spec = PruneSpec(n, tuple(nonzero), tuple(keep))
        values = rng.standard_normal(len(nonzero)) + 1j * rng.standard_normal(len(nonzero))
        x = np.zeros(n, dtype=np.complex128)
        x[nonzero] = values
        out, _ = fft_dif_pruned(values, spec)
        assert np.max(np.abs(out - dft_ref(x)[keep])) < 1e-10
        out, _ = ifft_dit_pruned(values, spec)
        assert np.max(np.abs(out - np.fft.ifft(x)[keep])) < 1e-10


def test_full_length_input_is_accepted():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(32) + 0j
    spec = PruneSpec.from_sets(32, input_nonzero=range(8), output_keep=[3, 1])
    x[8:] = 0
    out, _ = fft_dif_pruned(x, spec)
    assert_allclose(out, np.fft.fft(x)[[3, 1]], atol=1e-12)
    with pytest.raises(ValueError):
        fft_dif_pruned(x[:5], spec)


def test_batched_rows():
    rng = np.random.default_rng(1)
    x = rng.standard_normal((3, 16)) + 1j * rng.standard_normal((3, 16))
    out, _ = fft_radix2(x)
    assert_allclose(out, np.fft.fft(x, axis=-1), atol=1e-12)
    back, _ = ifft_radix2(out)
    assert_allclose(back, x, atol=1e-12)


@pytest.mark.parametrize("n", [2, 8, 64, 1024])
def test_op_counts(n):
    bits = n.bit_length() - 1
    assert full_count(n) == OpCount(n // 2 * bits, n // 2 * bits)
    _, count = fft_radix2(np.zeros(n))
    assert count == full_count(n)
    single = PruneSpec.from_sets(n, output_keep=[n // 2])
    _, count = fft_dif_pruned(np.zeros(n), single)
    assert count.butterflies == n - 1


def test_receiver_pruning_saves_butterflies():
    # 128 pulses at V=6 in a 1024 point window
    n_pulses, n = 128, 1024
    band = list(range(n - n_pulses, n)) + list(range(n_pulses))
    positions = [6 * k for k in range(n_pulses)]
    fwd = PruneSpec.from_sets(n, output_keep=band)
    inv = PruneSpec(n, tuple(band), tuple(positions))
    _, c_fwd = fft_dif_pruned(np.zeros(n), fwd)
    _, c_inv = ifft_dit_pruned(np.zeros(2 * n_pulses), inv)
    assert c_fwd.butterflies < full_count(n).butterflies
    assert c_inv.butterflies < full_count(n).butterflies


def test_complexity_model():
    model = complexity_model(12, 8)
    assert model["window"] == 128
    assert model["band_bins"] == 24
    assert model["rx_pruned"] < model["rx_full"]
    assert model["tx_filterbank"] == 12 * 128


def test_bit_reverse():
    assert bit_reverse(8).tolist() == [0, 4, 2, 6, 1, 5, 3, 7]


@pytest.mark.parametrize(
    "args",
    [
        (12, (0,), (0,)),
        (8, (), (0,)),
        (8, (0, 8), (0,)),
        (8, (0, 0), (1,)),
    ],
)
def test_prune_spec_validation(args):
    with pytest.raises(ValidationError):
        PruneSpec(*args)


def test_non_pow2():
    with pytest.raises(ValueError):
        fft_radix2(np.zeros(12))
