"""Сжатие отбрасыванием бинов ДПФ и системы скрытой передачи звука."""
import logging
from typing import Optional

import numpy as np

from dspwb.core.errors import ParameterError, ShapeError
from dspwb.schemas.audio import CompressedAudio, SteganographyResult, kept_count
from dspwb.schemas.filters import FirFilter
from dspwb.schemas.signal import Signal
from dspwb.schemas.spectrum import Spectrum
from dspwb.services import filters, signal_core, transform

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 100
HALF_BAND = np.pi / 2


def _same_length(a: Signal, b: Signal) -> None:
    if len(a) != len(b):
        raise ShapeError(f"signals differ in length: {len(a)} vs {len(b)}")


def fft_compress(x: Signal, p: float) -> CompressedAudio:
    """Оставляет бины k = 0 ... K-1 двустороннего ДПФ"""
    if not 0 < p <= 1:
        raise ParameterError(f"compression fraction must lie in (0, 1], got {p}")
    X = transform.dft(x)
    k = kept_count(len(x), p)
    logger.info(f"Compressing {len(x)} samples to {k} bins (p={p})")
    return CompressedAudio(
        kept_bins=X.bins[:k],
        original_n=len(x),
        fraction=p,
        sample_rate=x.sample_rate,
    )


def fft_extract(c: CompressedAudio, project_real: bool = False) -> Signal:
    bins = np.zeros(c.original_n, dtype=complex)
    bins[:c.k] = c.kept_bins
    x1 = transform.idft(Spectrum(bins=bins, n=c.original_n, sample_rate=c.sample_rate))
    if project_real:
        return x1.with_samples(x1.real)
    return x1


def error_signal(x: Signal, x1: Signal) -> Signal:
    """e[n] = x[n] - x1[n]: высокочастотный остаток"""
    _same_length(x, x1)
    return x.with_samples(x.samples - x1.samples)


def _check_shift(k0: int, n: int) -> None:
    if int(k0) != k0 or not 0 <= k0 < n:
        raise ParameterError(f"k0 must be an integer in [0, {n}), got {k0}")


def spectral_shift(e: Signal, k0: int) -> Signal:
    """X2[k] = E[((k + k0)) mod N]"""
    _check_shift(k0, len(e))
    return signal_core.modulate(e, -int(k0))


def remodulate(x2: Signal, k0: int) -> Signal:
    _check_shift(k0, len(x2))
    return signal_core.modulate(x2, int(k0))


def _default_filter() -> FirFilter:
    return filters.design_lowpass(DEFAULT_ORDER, HALF_BAND)


def _demix(z: Signal, h: FirFilter):
    y1 = filters.apply(h, z)
    y2 = filters.apply(h, signal_core.alternate_sign(z))
    return y1, y2


def system1(x1: Signal, x2: Signal, h: Optional[FirFilter] = None) -> SteganographyResult:
    """z = x1 + (-1)^n x2 без предварительной фильтрации входов"""
    _same_length(x1, x2)
    h = h or _default_filter()
    z = x1.with_samples(x1.samples + signal_core.alternate_sign(x2).samples)
    y1, y2 = _demix(z, h)
    return SteganographyResult(z=z, y1=y1, y2=y2, system=1)


def system2(x1: Signal, x2: Signal, h: Optional[FirFilter] = None) -> SteganographyResult:
    """Оба входа сначала ограничиваются по полосе до pi/2"""
    _same_length(x1, x2)
    h = h or _default_filter()
    if h.design.kind != "lowpass" or not np.isclose(h.design.edges[0], HALF_BAND):
        raise ParameterError(f"system 2 requires a lowpass filter with cutoff pi/2, got {h.design.kind} at {h.design.edges}")
    band1 = filters.apply(h, x1)
    band2 = filters.apply(h, x2)
    z = band1.with_samples(band1.samples + signal_core.alternate_sign(band2).samples)
    y1, y2 = _demix(z, h)
    return SteganographyResult(z=z, y1=y1, y2=y2, system=2)
