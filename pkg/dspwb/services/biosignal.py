"""Оценка частоты пульса: пик спектра и нули автокорреляции."""
import logging
from typing import List

import numpy as np

from dspwb.core.errors import ConfigurationError, InsufficientPeriodicityError, NoPeakError, ParameterError
from dspwb.schemas.biosignal import RateEstimate, RateMethod
from dspwb.schemas.signal import Signal
from dspwb.services import signal_core, transform

logger = logging.getLogger(__name__)

FLAT_SPECTRUM = 1e-12
MIN_FFT_LENGTH = 16


def _detrended(x: Signal) -> Signal:
    if x.sample_rate is None:
        raise ConfigurationError("rate estimation requires a sample rate")
    if not x.is_real:
        raise ParameterError("rate estimation requires a real-valued signal")
    values = x.real
    return x.with_samples(values - values.mean())


def rate_from_fft(x: Signal) -> RateEstimate:
    """Частота максимума одностороннего спектра без бина DC"""
    if len(x) < MIN_FFT_LENGTH:
        raise ParameterError(f"at least {MIN_FFT_LENGTH} samples are required, got {len(x)}")
    centred = _detrended(x)
    freqs, mags = transform.single_sided(transform.dft(centred))
    if mags.size < 2 or np.max(mags[1:]) <= FLAT_SPECTRUM:
        raise NoPeakError("spectrum is flat; no periodic component found")
    peak = 1 + int(np.argmax(mags[1:]))
    logger.info(f"Spectral peak at bin {peak}: {freqs[peak]:.6f} Hz")
    return RateEstimate.from_frequency(
        float(freqs[peak]),
        RateMethod.FFT_PEAK,
        peak_bin=peak,
        n=len(x),
        mean_removed=True,
    )


def zero_crossings(r: Signal) -> List[int]:
    """Лаги m, на которых знак r меняется; точный ноль завершает переход на следующем ненулевом отсчёте"""
    values = r.real
    lags = []
    last_sign = 0.0
    for m, value in enumerate(values):
        sign = np.sign(value)
        if sign == 0:
            continue
        if last_sign != 0 and sign != last_sign:
            lags.append(m)
        last_sign = sign
    return lags


def rate_from_autocorr(x: Signal) -> RateEstimate:
    """Период как разность первого и третьего пересечений нуля"""
    centred = _detrended(x)
    r = signal_core.autocorrelation(centred, normalized=True)
    lags = zero_crossings(r)
    if len(lags) < 3:
        raise InsufficientPeriodicityError(f"autocorrelation crosses zero {len(lags)} time(s); three are needed")
    period = lags[2] - lags[0]
    logger.info(f"Autocorrelation crossings at lags {lags[:3]}, period {period} samples")
    return RateEstimate.from_frequency(
        x.sample_rate / period,
        RateMethod.AUTOCORR_ZERO_CROSS,
        crossing_lags=lags[:3],
        period_samples=period,
        mean_removed=True,
        normalized=True,
    )
