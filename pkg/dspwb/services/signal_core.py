"""Операции во временной области над конечными последовательностями.

Все функции чистые: возвращают новый Signal и не меняют аргументы.
Индекс n везде абсолютный, т.е. n = origin_index + позиция в массиве.
"""
import logging

import numpy as np

from dspwb.core.errors import DegenerateSignalError, ParameterError
from dspwb.schemas.signal import Signal

logger = logging.getLogger(__name__)


def _positive_factor(name: str, value: int) -> int:
    if int(value) != value or value < 1:
        raise ParameterError(f"{name} must be a positive integer, got {value}")
    return int(value)


def next_power_of_two(n: int) -> int:
    return 1 << max(0, int(n) - 1).bit_length()


def circular_shift(x: Signal, m: int) -> Signal:
    """y[n] = x[((n - m)) mod N]"""
    return x.with_samples(np.roll(x.samples, int(m) % len(x)))


def circular_reverse(x: Signal) -> Signal:
    """y[n] = x[((-n)) mod N] = [x0, x[N-1], ..., x1]"""
    return x.with_samples(np.roll(x.samples[::-1], 1))


def conjugate(x: Signal) -> Signal:
    return x.with_samples(np.conj(x.samples))


def alternate_sign(x: Signal) -> Signal:
    """y[n] = (-1)^n x[n]"""
    signs = np.where(x.indices % 2 == 0, 1.0, -1.0)
    return x.with_samples(signs * x.samples)


def modulate(x: Signal, k0: float) -> Signal:
    """y[n] = x[n] e^{j 2 pi k0 n / N}"""
    n_total = len(x)
    # (k0 * n) mod N держит показатель экспоненты малым на длинных сигналах
    turns = np.mod(k0 * x.indices, n_total) / n_total
    return x.with_samples(x.samples * np.exp(2j * np.pi * turns))


def zero_interleave(x: Signal, L: int) -> Signal:
    """Вставляет L-1 нулей после каждого отсчёта"""
    L = _positive_factor("L", L)
    out = np.zeros(len(x) * L, dtype=complex)
    out[::L] = x.samples
    return x.with_samples(out, origin_index=x.origin_index * L)


def repeat(x: Signal, r: int) -> Signal:
    r = _positive_factor("r", r)
    return x.with_samples(np.tile(x.samples, r))


def decimate(x: Signal, M: int) -> Signal:
    """y[n] = x[Mn]: оставляет отсчёты с индексами, кратными M"""
    M = _positive_factor("M", M)
    keep = x.indices % M == 0
    if not np.any(keep):
        raise ParameterError(f"no sample index of the signal is a multiple of {M}")
    first = int(x.indices[keep][0])
    return x.with_samples(x.samples[keep], origin_index=first // M)


def linear_convolve(x: Signal, h: Signal) -> Signal:
    return x.with_samples(
        np.convolve(x.samples, h.samples),
        origin_index=x.origin_index + h.origin_index,
    )


def autocorrelation(x: Signal, normalized: bool = True) -> Signal:
    """Смещённая оценка r[m] = sum_n x[n] x[n+m] для m = 0 ... N-1"""
    if not x.is_real:
        raise ParameterError("autocorrelation requires a real-valued signal")
    values = x.real
    n_total = values.size
    r = np.correlate(values, values, mode="full")[n_total - 1:]
    if normalized:
        if r[0] == 0:
            raise DegenerateSignalError("cannot normalize the autocorrelation of an all-zero signal")
        r = r / r[0]
    return Signal(samples=r, sample_rate=x.sample_rate)


def energy(x: Signal) -> float:
    return float(np.sum(np.abs(x.samples) ** 2))


def delay(x: Signal, d: int) -> Signal:
    """y[n] = x[n - d]; меняется только origin_index"""
    return x.with_samples(x.samples, origin_index=x.origin_index + int(d))


def time_reverse(x: Signal) -> Signal:
    """y[n] = x[-n] (линейное отражение, не циклическое)"""
    last = x.origin_index + len(x) - 1
    return x.with_samples(x.samples[::-1], origin_index=-last)


def ramp(x: Signal) -> Signal:
    """y[n] = n x[n]"""
    return x.with_samples(x.indices * x.samples)


def pointwise_product(x: Signal, y: Signal) -> Signal:
    """Поэлементное произведение на общем носителе"""
    start = max(x.origin_index, y.origin_index)
    stop = min(x.origin_index + len(x), y.origin_index + len(y))
    if start >= stop:
        raise ParameterError("signals have disjoint supports")
    a = x.samples[start - x.origin_index:stop - x.origin_index]
    b = y.samples[start - y.origin_index:stop - y.origin_index]
    return x.with_samples(a * b, origin_index=start)


def zero_pad(x: Signal, length: int) -> Signal:
    if length < len(x):
        raise ParameterError(f"cannot pad a length-{len(x)} signal to {length}")
    out = np.zeros(length, dtype=complex)
    out[:len(x)] = x.samples
    return x.with_samples(out)


def sinc_sequence(omega_c: float, half_width: int, sample_rate=None) -> Signal:
    """x[n] = sin(omega_c n) / (pi n), |n| <= half_width, x[0] = omega_c / pi"""
    if not 0 < omega_c <= np.pi:
        raise ParameterError(f"cutoff must lie in (0, pi], got {omega_c}")
    n = np.arange(-half_width, half_width + 1)
    values = omega_c / np.pi * np.sinc(omega_c * n / np.pi)
    return Signal(samples=values, sample_rate=sample_rate, origin_index=-half_width)
