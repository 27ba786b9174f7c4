import numpy as np
import pytest

from dspwb.core.errors import DegenerateSignalError, ParameterError
from dspwb.schemas.signal import Signal
from dspwb.services import signal_core, transform


def test_signal_is_immutable_and_non_empty():
    x = Signal(samples=[1, 2, 3])
    with pytest.raises(ValueError):
        x.samples[0] = 5
    with pytest.raises(ValueError):
        Signal(samples=[])
    with pytest.raises(ValueError):
        Signal(samples=[1], sample_rate=0)


def test_signal_reality_check():
    assert Signal(samples=[1, 2, 3]).is_real
    assert not Signal(samples=[1, 2j]).is_real


def test_circular_shift_and_reverse():
    x = Signal(samples=[1, 2, 3, 4])
    assert np.array_equal(signal_core.circular_shift(x, 1).samples, [4, 1, 2, 3])
    assert np.array_equal(signal_core.circular_shift(x, -1).samples, [2, 3, 4, 1])
    assert np.array_equal(signal_core.circular_shift(x, 5).samples, [4, 1, 2, 3])
    assert np.array_equal(signal_core.circular_reverse(x).samples, [1, 4, 3, 2])


def test_alternate_sign_uses_absolute_index():
    x = Signal(samples=[1, 1, 1], origin_index=1)
    assert np.array_equal(signal_core.alternate_sign(x).samples, [-1, 1, -1])


def test_modulate_by_half_length_is_sign_alternation(rng):
    x = Signal(samples=rng.standard_normal(16))
    assert np.allclose(signal_core.modulate(x, 8).samples, signal_core.alternate_sign(x).samples, atol=1e-12)


def test_zero_interleave_and_repeat():
    x = Signal(samples=[1, 2, 3])
    assert np.array_equal(signal_core.zero_interleave(x, 2).samples, [1, 0, 2, 0, 3, 0])
    assert np.array_equal(signal_core.repeat(x, 2).samples, [1, 2, 3, 1, 2, 3])
    with pytest.raises(ParameterError):
        signal_core.repeat(x, 0)


def test_decimate_keeps_multiples_of_factor():
    x = Signal(samples=np.arange(-3, 7), origin_index=-3)
    y = signal_core.decimate(x, 2)
    assert np.array_equal(y.samples, [-2, 0, 2, 4, 6])
    assert y.origin_index == -1


def test_linear_convolve_adds_origins():
    y = signal_core.linear_convolve(Signal(samples=[1, 1], origin_index=-1), Signal(samples=[1, 2], origin_index=3))
    assert np.array_equal(y.samples, [1, 3, 2])
    assert y.origin_index == 2


def test_autocorrelation_values():
    x = Signal(samples=[1, 2, 3], sample_rate=10)
    raw = signal_core.autocorrelation(x, normalized=False)
    assert np.allclose(raw.samples, [14, 8, 3])
    assert np.allclose(signal_core.autocorrelation(x).samples, [1, 8 / 14, 3 / 14])
    assert raw.sample_rate == 10
    assert np.allclose(signal_core.autocorrelation(Signal(samples=[5])).samples, [1])


def test_autocorrelation_rejects_degenerate_input():
    with pytest.raises(DegenerateSignalError):
        signal_core.autocorrelation(Signal(samples=[0, 0, 0]))
    with pytest.raises(ParameterError):
        signal_core.autocorrelation(Signal(samples=[1, 1j]))


def test_time_reverse_ramp_and_delay():
    x = Signal(samples=[1, 2, 3])
    r = signal_core.time_reverse(x)
    assert np.array_equal(r.samples, [3, 2, 1])
    assert r.origin_index == -2
    assert np.array_equal(signal_core.ramp(Signal(samples=[1, 1, 1], origin_index=-1)).samples, [-1, 0, 1])
    assert signal_core.delay(x, 10).origin_index == 10


def test_pointwise_product_on_common_support():
    y = signal_core.pointwise_product(Signal(samples=[1, 2, 3]), Signal(samples=[10, 10, 10], origin_index=1))
    assert np.array_equal(y.samples, [20, 30])
    assert y.origin_index == 1
    with pytest.raises(ParameterError):
        signal_core.pointwise_product(Signal(samples=[1]), Signal(samples=[1], origin_index=5))


def test_sinc_sequence_centre_and_tail():
    x = signal_core.sinc_sequence(np.pi / 4, 3)
    assert x.origin_index == -3
    assert np.isclose(x.samples[3].real, 0.25)
    assert np.isclose(x.samples[4].real, np.sin(np.pi / 4) / np.pi)


def test_next_power_of_two_and_energy():
    assert [signal_core.next_power_of_two(n) for n in (1, 5, 8, 1000)] == [1, 8, 8, 1024]
    assert signal_core.energy(Signal(samples=[3, 4j])) == 25.0
    with pytest.raises(ParameterError):
        signal_core.zero_pad(Signal(samples=[1, 2, 3]), 2)


@pytest.mark.parametrize("k", [0, 1, 5, -3, 17])
def test_shift_then_unshift_is_identity(rng, k):
    x = Signal(samples=rng.standard_normal(7) + 1j * rng.standard_normal(7))
    assert signal_core.circular_shift(signal_core.circular_shift(x, k), -k) == x


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_reverse_is_an_involution(rng, n):
    x = Signal(samples=rng.standard_normal(n))
    assert signal_core.circular_reverse(signal_core.circular_reverse(x)) == x


@pytest.mark.parametrize("L, origin", [(1, 0), (2, 0), (3, -2), (4, 5)])
def test_decimate_undoes_zero_interleave(rng, L, origin):
    x = Signal(samples=rng.standard_normal(6), origin_index=origin)
    assert signal_core.decimate(signal_core.zero_interleave(x, L), L) == x


def test_normalized_autocorrelation_is_bounded_by_lag_zero(rng):
    r = signal_core.autocorrelation(Signal(samples=rng.standard_normal(200)))
    assert r.samples[0] == 1
    assert np.all(np.abs(r.samples) <= 1 + 1e-12)


def test_cosine_autocorrelation_closed_form():
    n, w = 50, 0.3
    r = signal_core.autocorrelation(Signal(samples=np.cos(w * np.arange(n))), normalized=False).real
    m = np.arange(n)
    terms = n - m
    expected = 0.5 * (terms * np.cos(w * m) + np.sin(terms * w) * np.cos(w * m + (terms - 1) * w) / np.sin(w))
    assert np.allclose(r, expected, atol=1e-9)


def test_convolution_commutes_and_matches_dft_product(rng):
    x = Signal(samples=rng.standard_normal(9), origin_index=-2)
    h = Signal(samples=rng.standard_normal(4) + 1j * rng.standard_normal(4), origin_index=3)
    y = signal_core.linear_convolve(x, h)
    assert y == signal_core.linear_convolve(h, x)
    size = len(x) + len(h) - 1
    oracle = np.fft.ifft(np.fft.fft(x.samples, size) * np.fft.fft(h.samples, size))
    assert np.allclose(y.samples, oracle, atol=1e-12)
    assert y.origin_index == 1


def test_energy_obeys_parseval(rng):
    x = Signal(samples=rng.standard_normal(30) + 1j * rng.standard_normal(30))
    X = transform.dft(x).bins
    assert signal_core.energy(x) == pytest.approx(np.sum(np.abs(X) ** 2) / 30, rel=1e-12)
