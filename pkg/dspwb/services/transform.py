"""ДПФ/ОДПФ, ДВПФ на сетке и односторонний амплитудный спектр."""
import cmath
import logging
from functools import lru_cache
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from dspwb.core.errors import ConfigurationError, ParameterError
from dspwb.schemas.signal import Signal
from dspwb.schemas.spectrum import DtftGrid, Spectrum
from dspwb.services import signal_core

logger = logging.getLogger(__name__)

# прямое ДПФ большей длины считается построчно, без кэшированной матрицы
_MATRIX_LIMIT = 1024


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _bit_reverse_indices(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _radix2(values: np.ndarray) -> np.ndarray:
    """Итеративное БПФ с прореживанием по времени (длина - степень двойки)"""
    n = values.size
    out = values[_bit_reverse_indices(n)].astype(complex)
    size = 2
    while size <= n:
        half = size // 2
        twiddle = np.exp(-2j * np.pi * np.arange(half) / size)
        blocks = out.reshape(-1, size)
        top = blocks[:, :half].copy()
        bottom = blocks[:, half:] * twiddle
        blocks[:, :half] = top + bottom
        blocks[:, half:] = top - bottom
        size *= 2
    return out


@lru_cache(maxsize=32)
def _dft_matrix(n: int) -> np.ndarray:
    k = np.arange(n)
    matrix = np.exp(-2j * np.pi * (np.outer(k, k) % n) / n)
    matrix.flags.writeable = False
    return matrix


def _direct(values: np.ndarray) -> np.ndarray:
    n = values.size
    if n <= _MATRIX_LIMIT:
        return _dft_matrix(n) @ values
    n_idx = np.arange(n)
    out = np.empty(n, dtype=complex)
    for k in range(n):
        out[k] = np.dot(values, np.exp(-2j * np.pi * ((k * n_idx) % n) / n))
    return out


def _forward(values: np.ndarray) -> np.ndarray:
    if _is_power_of_two(values.size):
        return _radix2(values)
    return _direct(values)


def dft(x: Signal) -> Spectrum:
    """X[k] = sum_n x[n] e^{-j 2 pi k n / N}"""
    return Spectrum(
        bins=_forward(x.samples),
        n=len(x),
        sample_rate=x.sample_rate,
        source_real=x.is_real,
    )


def direct_dft(x: Signal) -> Spectrum:
    """Эталон: буквальная двойная сумма без оптимизаций"""
    n = len(x)
    values = [complex(v) for v in x.samples]
    bins = []
    for k in range(n):
        acc = 0j
        for m in range(n):
            acc += values[m] * cmath.exp(-2j * cmath.pi * ((k * m) % n) / n)
        bins.append(acc)
    return Spectrum(bins=bins, n=n, sample_rate=x.sample_rate, source_real=x.is_real)


def idft(X: Spectrum) -> Signal:
    """x[n] = (1/N) sum_k X[k] e^{+j 2 pi k n / N}"""
    samples = np.conj(_forward(np.conj(X.bins))) / X.n
    return Signal(samples=samples, sample_rate=X.sample_rate)


def default_grid(points: int = 512) -> np.ndarray:
    return np.linspace(-np.pi, np.pi, points)


def dtft_eval(x: Signal, omegas) -> DtftGrid:
    """X(e^{jw}) = sum_n x[n] e^{-jwn} по хранимому носителю"""
    omegas = np.asarray(omegas, dtype=float)
    kernel = np.exp(-1j * np.outer(omegas, x.indices))
    return DtftGrid(omegas=omegas, values=kernel @ x.samples)


def single_sided(X: Spectrum) -> Tuple[np.ndarray, np.ndarray]:
    """Частоты в Гц и амплитуды для k = 0 ... N/2 (внутренние бины удвоены)"""
    if X.sample_rate is None:
        raise ConfigurationError("single-sided spectrum requires a sample rate")
    if X.source_real is False:
        raise ParameterError("single-sided spectrum requires a real source signal")
    half = X.n // 2
    freqs = np.arange(half + 1) * X.sample_rate / X.n
    mags = 2.0 * np.abs(X.bins[:half + 1]) / X.n
    mags[0] /= 2.0
    if X.n % 2 == 0:
        mags[half] /= 2.0
    return freqs, mags


# x[n] = sin(n pi / 4) / (n pi) и девять производных последовательностей
_VARIANTS: Dict[str, Tuple[str, Callable[[Signal], Signal]]] = {
    "a": ("x[n]", lambda x: x),
    "b": ("x[n-10]", lambda x: signal_core.delay(x, 10)),
    "c": ("x[-n]", signal_core.time_reverse),
    "d": ("n x[n]", signal_core.ramp),
    "e": ("exp(j n pi/6) x[n]", lambda x: signal_core.modulate(x, len(x) / 12)),
    "f": ("(-1)^n x[n]", signal_core.alternate_sign),
    "g": ("x[n] * x[n]", lambda x: signal_core.linear_convolve(x, x)),
    "h": ("x[n]^2", lambda x: signal_core.pointwise_product(x, x)),
    "i": ("x[2n]", lambda x: signal_core.decimate(x, 2)),
    "j": ("x[n/2] for even n, else 0", lambda x: signal_core.zero_interleave(x, 2)),
}


def dtft_variants() -> Dict[str, str]:
    return {key: label for key, (label, _) in _VARIANTS.items()}


def dtft_variant(key: str, half_width: int = 200, omegas: Optional[np.ndarray] = None) -> DtftGrid:
    if key not in _VARIANTS:
        raise ParameterError(f"unknown DTFT variant {key!r}; expected one of {sorted(_VARIANTS)}")
    base = signal_core.sinc_sequence(np.pi / 4, half_width)
    label, build = _VARIANTS[key]
    logger.debug(f"Evaluating DTFT of {label} with |n| <= {half_width}")
    grid = default_grid() if omegas is None else omegas
    return dtft_eval(build(base), grid)
