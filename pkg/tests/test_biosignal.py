import numpy as np
import pytest

from dspwb.core.errors import (
    ConfigurationError,
    DegenerateSignalError,
    InsufficientPeriodicityError,
    NoPeakError,
    ParameterError,
)
from dspwb.schemas.biosignal import RateEstimate, RateMethod
from dspwb.schemas.signal import Signal
from dspwb.services import biosignal
from tests.conftest import on_bin_cosine


def test_fft_peak_of_on_bin_cosine():
    x = on_bin_cosine(11, 1024, fs=100.0, amplitude=2.0)
    estimate = biosignal.rate_from_fft(Signal(samples=x.samples + 5.0, sample_rate=100.0))
    assert estimate.method is RateMethod.FFT_PEAK
    assert estimate.frequency == pytest.approx(11 * 100 / 1024)
    assert estimate.bpm == pytest.approx(64.453125)
    assert estimate.evidence["peak_bin"] == 11
    assert estimate.evidence["n"] == 1024


def test_autocorrelation_agrees_with_spectral_peak():
    x = on_bin_cosine(11, 1024, fs=100.0)
    estimate = biosignal.rate_from_autocorr(x)
    assert estimate.method is RateMethod.AUTOCORR_ZERO_CROSS
    assert abs(estimate.bpm - 64.453125) < 2.0
    lags = estimate.evidence["crossing_lags"]
    assert len(lags) == 3
    assert estimate.evidence["period_samples"] == lags[2] - lags[0]


def test_autocorrelation_of_one_hertz_tone():
    n = np.arange(1000)
    x = Signal(samples=np.cos(2 * np.pi * n / 100), sample_rate=100.0)
    assert abs(biosignal.rate_from_autocorr(x).bpm - 60.0) < 1.5


def test_zero_crossings_skip_exact_zeros():
    assert biosignal.zero_crossings(Signal(samples=[1, 0, -1, 0, 1])) == [2, 4]
    assert biosignal.zero_crossings(Signal(samples=[0, 0, 1, -1, 1])) == [3, 4]
    assert biosignal.zero_crossings(Signal(samples=[1, 0.5, 0.1])) == []


def test_single_impulse_is_not_periodic():
    samples = np.zeros(64)
    samples[10] = 1.0
    with pytest.raises(InsufficientPeriodicityError):
        biosignal.rate_from_autocorr(Signal(samples=samples, sample_rate=50.0))


def test_flat_input_has_no_peak():
    with pytest.raises(NoPeakError):
        biosignal.rate_from_fft(Signal(samples=np.full(32, 3.0), sample_rate=10.0))
    with pytest.raises(DegenerateSignalError):
        biosignal.rate_from_autocorr(Signal(samples=np.full(32, 3.0), sample_rate=10.0))


def test_input_requirements():
    with pytest.raises(ConfigurationError):
        biosignal.rate_from_fft(Signal(samples=np.ones(32)))
    with pytest.raises(ParameterError):
        biosignal.rate_from_fft(Signal(samples=np.ones(8), sample_rate=10.0))
    with pytest.raises(ParameterError):
        biosignal.rate_from_autocorr(Signal(samples=np.ones(32) * 1j, sample_rate=10.0))


def test_bpm_must_match_frequency():
    with pytest.raises(ValueError):
        RateEstimate(frequency=1.0, bpm=61.0, method=RateMethod.FFT_PEAK)
    assert RateEstimate.from_frequency(1.5, RateMethod.FFT_PEAK).bpm == 90.0
