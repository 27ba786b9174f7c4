"""КИХ-фильтры методом взвешенного sinc (окно Хэмминга)."""
import logging

import numpy as np

from dspwb.core.errors import DesignError
from dspwb.schemas.filters import FilterDesign, FirFilter
from dspwb.schemas.signal import Signal
from dspwb.schemas.spectrum import DtftGrid
from dspwb.services import signal_core

logger = logging.getLogger(__name__)

WINDOW = "hamming"


def _check_order(order: int) -> None:
    if int(order) != order or order < 2 or order % 2:
        raise DesignError(f"filter order must be an even integer >= 2, got {order}")


def _windowed_sinc(order: int, cutoff: float) -> np.ndarray:
    # sin(cutoff * i) / (pi * i), центральный отсчёт cutoff / pi
    i = np.arange(order + 1) - order // 2
    ideal = cutoff / np.pi * np.sinc(cutoff * i / np.pi)
    return ideal * np.hamming(order + 1)


def _symmetric(taps: np.ndarray) -> np.ndarray:
    return (taps + taps[::-1]) / 2


def _response(taps: np.ndarray, omegas: np.ndarray) -> np.ndarray:
    return np.exp(-1j * np.outer(omegas, np.arange(taps.size))) @ taps


def design_lowpass(order: int, cutoff: float) -> FirFilter:
    """ФНЧ с единичным усилением на нулевой частоте"""
    _check_order(order)
    if not 0 < cutoff < np.pi:
        raise DesignError(f"cutoff must lie in (0, pi), got {cutoff}")
    taps = _symmetric(_windowed_sinc(order, cutoff))
    taps = taps / taps.sum()
    logger.debug(f"Designed lowpass: order={order}, cutoff={cutoff:.4f} rad")
    return FirFilter(
        taps=taps,
        order=order,
        design=FilterDesign(kind="lowpass", edges=(cutoff,), window=WINDOW),
    )


def design_bandpass(order: int, f_lo: float, f_hi: float, fs: float) -> FirFilter:
    """Полосовой фильтр как разность двух ФНЧ; пик полосы пропускания равен 1"""
    _check_order(order)
    if not 0 < f_lo < f_hi < fs / 2:
        raise DesignError(f"band edges must satisfy 0 < f_lo < f_hi < fs/2, got ({f_lo}, {f_hi}) at fs={fs}")
    w_lo = 2 * np.pi * f_lo / fs
    w_hi = 2 * np.pi * f_hi / fs
    taps = _symmetric(_windowed_sinc(order, w_hi) - _windowed_sinc(order, w_lo))
    passband = np.linspace(w_lo, w_hi, 512)
    peak = float(np.max(np.abs(_response(taps, passband))))
    if peak <= 0:
        raise DesignError(f"band ({f_lo}, {f_hi}) Hz is not resolvable at order {order}")
    logger.debug(f"Designed bandpass: order={order}, band=({f_lo}, {f_hi}) Hz, peak gain before scaling {peak:.4f}")
    return FirFilter(
        taps=taps / peak,
        order=order,
        design=FilterDesign(kind="bandpass", edges=(w_lo, w_hi), window=WINDOW),
    )


def freq_response(h: FirFilter, omegas) -> DtftGrid:
    omegas = np.asarray(omegas, dtype=float)
    return DtftGrid(omegas=omegas, values=_response(h.taps, omegas))


def apply(h: FirFilter, x: Signal, compensate_delay: bool = True) -> Signal:
    """Линейная свёртка с отсчётами фильтра; при компенсации - сдвиг на order/2"""
    y = signal_core.linear_convolve(x, Signal(samples=h.taps))
    if not compensate_delay:
        return y
    delay = h.group_delay
    return x.with_samples(y.samples[delay:delay + len(x)])
