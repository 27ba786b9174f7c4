"""Признаки ЭЭГ для обнаружения приступов: временные, по аналитическому сигналу и спектральные."""
import logging
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import rankdata

from dspwb.core.errors import InsufficientLabelsError, ParameterError, UndefinedFeatureError
from dspwb.schemas.eeg import (
    CentralTendency,
    Clip,
    ClipLabel,
    ClipSet,
    FeatureScore,
    FeatureSelection,
    FeatureTable,
    HjorthParameters,
    PsdComparison,
    PsdEstimate,
    SeparabilityReport,
    Spectrogram,
)
from dspwb.schemas.signal import Signal
from dspwb.schemas.spectrum import Spectrum
from dspwb.services import filters, signal_core, transform

logger = logging.getLogger(__name__)

DB_FLOOR = 1e-20
TINY_AMPLITUDE = 1e-12

# фильтры неизменяемы, поэтому один проект разделяется между клипами
_band_filter = lru_cache(maxsize=32)(filters.design_bandpass)


# --- временная область ---

def central_tendency(c: Clip) -> CentralTendency:
    """Мода считается по отсчётам, округлённым до целых; при равенстве берётся меньшее значение"""
    values, counts = np.unique(np.rint(c.samples), return_counts=True)
    return CentralTendency(
        mean=float(np.mean(c.samples)),
        median=float(np.median(c.samples)),
        mode=float(values[np.argmax(counts)]),
    )


def energy(c: Clip) -> float:
    return float(np.sum(c.samples ** 2))


def curve_length(c: Clip) -> float:
    return float(np.sum(np.abs(np.diff(c.samples))))


def hjorth_activity(c: Clip) -> float:
    return float(np.var(c.samples))


def _mobility(values: np.ndarray, feature: str) -> float:
    spread = np.var(values)
    if spread == 0:
        raise UndefinedFeatureError(feature, "zero variance")
    return float(np.sqrt(np.var(np.diff(values)) / spread))


def hjorth(c: Clip) -> HjorthParameters:
    """Производная заменена первой разностью"""
    if len(c) < 3:
        raise ParameterError(f"Hjorth parameters need at least 3 samples, got {len(c)}")
    mobility = _mobility(c.samples, "mobility")
    diff_mobility = _mobility(np.diff(c.samples), "complexity")
    return HjorthParameters(
        activity=hjorth_activity(c),
        mobility=mobility,
        complexity=diff_mobility / mobility,
    )


# --- аналитический сигнал ---

def analytic_signal(x: Signal) -> Signal:
    """A = idft(dft(x) g), g оставляет неотрицательные частоты"""
    if not x.is_real:
        raise ParameterError("analytic signal requires a real-valued input")
    if len(x) < 4:
        raise ParameterError(f"analytic signal needs at least 4 samples, got {len(x)}")
    n = len(x)
    X = transform.dft(x.with_samples(x.real))
    g = np.zeros(n)
    g[0] = 1.0
    if n % 2 == 0:
        g[1:n // 2] = 2.0
        g[n // 2] = 1.0
    else:
        g[1:(n + 1) // 2] = 2.0
    A = transform.idft(Spectrum(bins=X.bins * g, n=n, sample_rate=x.sample_rate))
    return x.with_samples(A.samples)


def _band_analytic(c: Clip, band: Tuple[float, float], order: int) -> np.ndarray:
    f_lo, f_hi = band
    if not 0 < f_lo < f_hi < c.fs / 2:
        raise ParameterError(f"band ({f_lo}, {f_hi}) Hz must lie within (0, {c.fs / 2}) Hz")
    if len(c) <= order:
        raise ParameterError(f"clip {c.id} has {len(c)} samples; band filter of order {order} needs more")
    h = _band_filter(order, f_lo, f_hi, c.fs)
    filtered = filters.apply(h, c.signal())
    A = analytic_signal(filtered.with_samples(filtered.real))
    trim = order // 2
    return A.samples[trim:len(c) - trim]


def mean_inst_amplitude(c: Clip, band: Tuple[float, float], order: int = 200) -> float:
    return float(np.mean(np.abs(_band_analytic(c, band, order))))


def mean_inst_frequency(c: Clip, band: Tuple[float, float], order: int = 200) -> float:
    """Средняя производная развёрнутой фазы, Гц"""
    central = _band_analytic(c, band, order)
    if np.max(np.abs(central)) <= TINY_AMPLITUDE:
        raise UndefinedFeatureError("mean_inst_frequency", "band-limited clip has zero amplitude")
    phase = np.unwrap(np.angle(central))
    return float(np.mean(np.diff(phase)) * c.fs / (2 * np.pi))


# --- спектральные оценки ---

def spectrogram(x: Signal, window_len: int = 100, overlap: int = 80) -> Spectrogram:
    if not 0 <= overlap < window_len:
        raise ParameterError(f"overlap must lie in [0, {window_len}), got {overlap}")
    if len(x) < window_len:
        raise ParameterError(f"signal of {len(x)} samples is shorter than the {window_len}-sample window")
    hop = window_len - overlap
    frames = (len(x) - window_len) // hop + 1
    window = np.hamming(window_len)
    bins = window_len // 2 + 1
    values = x.real
    power = np.empty((frames, bins))
    for i in range(frames):
        segment = values[i * hop:i * hop + window_len] * window
        X = transform.dft(Signal(samples=segment))
        power[i] = np.abs(X.bins[:bins]) ** 2
    fs = x.sample_rate or 1.0
    logger.debug(f"Spectrogram: {frames} frames of {window_len} samples, hop {hop}")
    return Spectrogram(
        times=np.arange(frames) * hop / fs,
        freqs=np.arange(bins) * fs / window_len,
        power_db=10 * np.log10(power + DB_FLOOR),
    )


def welch_psd(x: Signal, segments: int = 8, overlap_fraction: float = 0.5) -> PsdEstimate:
    """Усреднённые периодограммы сегментов с окном Хэмминга; сумма psd * df равна дисперсии"""
    if segments < 2 or not 0 <= overlap_fraction < 1:
        raise ParameterError(f"invalid Welch parameters: segments={segments}, overlap={overlap_fraction}")
    n = len(x)
    seg_len = int(n / (1 + (segments - 1) * (1 - overlap_fraction)))
    step = seg_len - int(overlap_fraction * seg_len)
    if seg_len < 2 or step < 1:
        raise ParameterError(f"signal of {n} samples is too short for {segments} Welch segments")
    count = min(segments, (n - seg_len) // step + 1)
    if count < 2:
        raise ParameterError(f"signal of {n} samples is too short for two Welch segments")
    fs = x.sample_rate or 1.0
    nfft = signal_core.next_power_of_two(seg_len)
    window = np.hamming(seg_len)
    scale = fs * np.sum(window ** 2)
    values = x.real
    acc = np.zeros(nfft // 2 + 1)
    for i in range(count):
        segment = Signal(samples=values[i * step:i * step + seg_len] * window)
        X = transform.dft(signal_core.zero_pad(segment, nfft))
        acc += np.abs(X.bins[:nfft // 2 + 1]) ** 2 / scale
    psd = acc / count
    psd[1:nfft // 2] *= 2.0
    return PsdEstimate(freqs=np.arange(nfft // 2 + 1) * fs / nfft, psd=psd)


def smooth(series, window: int) -> np.ndarray:
    """Скользящее среднее с симметрично сужающимся окном у краёв"""
    values = np.asarray(series, dtype=float)
    n = values.size
    if window < 1 or window % 2 == 0 or window > n:
        raise ParameterError(f"smoothing window must be odd and within [1, {n}], got {window}")
    idx = np.arange(n)
    half = np.minimum(np.minimum(idx, n - 1 - idx), window // 2)
    csum = np.concatenate(([0.0], np.cumsum(values)))
    lo, hi = idx - half, idx + half + 1
    return (csum[hi] - csum[lo]) / (hi - lo)


def mean_psd(c: Clip, segments: int = 8, overlap_fraction: float = 0.5) -> float:
    return float(np.mean(welch_psd(c.signal(), segments, overlap_fraction).psd))


def concatenate(cs: ClipSet, labels: Sequence[ClipLabel] = (ClipLabel.ICTAL, ClipLabel.INTERICTAL)) -> Signal:
    """Склеивает клипы в одну серию: сначала первая метка, затем следующие"""
    parts = [clip.samples for label in labels for clip in cs.with_label(label)]
    if not parts:
        raise ParameterError(f"clip set has no clips labelled {[label.value for label in labels]}")
    return Signal(samples=np.concatenate(parts), sample_rate=cs.fs)


def compare_psd(cs: ClipSet, window: int = 9, segments: int = 8, overlap_fraction: float = 0.5) -> PsdComparison:
    """Полоса (рад/отсчёт), где сглаженные PSD различаются сильнее всего"""
    ictal = welch_psd(concatenate(cs, (ClipLabel.ICTAL,)), segments, overlap_fraction)
    inter = welch_psd(concatenate(cs, (ClipLabel.INTERICTAL,)), segments, overlap_fraction)
    if ictal.freqs.size != inter.freqs.size:
        # разная длина серий: приводим к общей сетке
        inter_psd = np.interp(ictal.freqs, inter.freqs, inter.psd)
    else:
        inter_psd = inter.psd
    ictal_s = smooth(ictal.psd, window)
    inter_s = smooth(inter_psd, window)
    difference = np.abs(ictal_s - inter_s)
    peak = int(np.argmax(difference))
    # связный участок вокруг максимума, где различие не меньше половины пика
    above = difference >= difference[peak] / 2
    lo = peak
    while lo > 0 and above[lo - 1]:
        lo -= 1
    hi = peak
    while hi < difference.size - 1 and above[hi + 1]:
        hi += 1
    omegas = 2 * np.pi * ictal.freqs / cs.fs
    logger.info(f"Largest PSD difference between {omegas[lo]:.4f} and {omegas[hi]:.4f} rad/sample")
    return PsdComparison(
        omegas=omegas,
        ictal=ictal_s,
        interictal=inter_s,
        difference=difference,
        band=(float(omegas[lo]), float(omegas[hi])),
        smoothing=window,
    )


# --- таблица признаков ---

Extractor = Callable[[Clip, FeatureSelection], float]

FEATURES: Dict[str, Extractor] = {
    "mean": lambda c, s: central_tendency(c).mean,
    "median": lambda c, s: central_tendency(c).median,
    "mode": lambda c, s: central_tendency(c).mode,
    "energy": lambda c, s: energy(c),
    "curve_length": lambda c, s: curve_length(c),
    "activity": lambda c, s: hjorth_activity(c),
    "mobility": lambda c, s: hjorth(c).mobility,
    "complexity": lambda c, s: hjorth(c).complexity,
    "delta_amplitude": lambda c, s: mean_inst_amplitude(c, s.delta_band, s.band_order),
    "alpha_frequency": lambda c, s: mean_inst_frequency(c, s.alpha_band, s.band_order),
    "mean_psd": lambda c, s: mean_psd(c, s.welch_segments, s.welch_overlap),
}

TIME_FEATURES = ("mean", "median", "mode", "energy", "curve_length", "activity", "mobility", "complexity")
HILBERT_FEATURES = ("delta_amplitude", "alpha_frequency")


def _extract(clip: Clip, selection: FeatureSelection) -> Tuple[Dict[str, float], list]:
    row, undefined = {}, []
    for name in selection.names:
        try:
            row[name] = float(FEATURES[name](clip, selection))
        except UndefinedFeatureError as exc:
            logger.warning(f"Clip {clip.id}: {exc}")
            row[name] = float("nan")
            undefined.append(name)
    return row, undefined


def feature_table(cs: ClipSet, selection: FeatureSelection, workers: Optional[int] = None) -> FeatureTable:
    unknown = [name for name in selection.names if name not in FEATURES]
    if unknown:
        raise ParameterError(f"unknown features {unknown}; available: {sorted(FEATURES)}")
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda clip: _extract(clip, selection), cs.clips))
    else:
        results = [_extract(clip, selection) for clip in cs.clips]

    rows, undefined = {}, {}
    for clip, (row, missing) in zip(cs.clips, results):
        rows[clip.id] = row
        if missing:
            undefined[clip.id] = missing
    logger.info(f"Extracted {len(selection.names)} features from {len(cs)} clips")
    return FeatureTable(
        rows=rows,
        labels={clip.id: clip.label for clip in cs.clips},
        feature_names=selection.names,
        metadata={
            "fs": cs.fs,
            "band_filter": "bandpass windowed sinc (hamming)",
            "band_order": selection.band_order,
            "delta_band_hz": list(selection.delta_band),
            "alpha_band_hz": list(selection.alpha_band),
            "welch_segments": selection.welch_segments,
            "welch_overlap": selection.welch_overlap,
            "welch_window": "hamming",
            "undefined": undefined,
        },
    )


def _auc(ictal: np.ndarray, interictal: np.ndarray) -> float:
    """Площадь под ROC через сумму рангов (Манн-Уитни)"""
    ranks = rankdata(np.concatenate([ictal, interictal]))
    n1, n0 = ictal.size, interictal.size
    return float((np.sum(ranks[:n1]) - n1 * (n1 + 1) / 2) / (n1 * n0))


def separability_report(t: FeatureTable) -> SeparabilityReport:
    is_ictal = np.array([t.labels[clip_id] == ClipLabel.ICTAL for clip_id in t.rows], dtype=bool)
    if not np.any(is_ictal) or np.all(is_ictal):
        raise InsufficientLabelsError("separability needs both ictal and interictal clips")
    scores = []
    for name in t.feature_names:
        values = t.column(name)
        finite = np.isfinite(values)
        ictal = values[is_ictal & finite]
        inter = values[~is_ictal & finite]
        if ictal.size == 0 or inter.size == 0:
            scores.append(FeatureScore(feature=name, n_ictal=ictal.size, n_interictal=inter.size))
            continue
        scores.append(FeatureScore(
            feature=name,
            auc=_auc(ictal, inter),
            ictal_mean=float(np.mean(ictal)),
            interictal_mean=float(np.mean(inter)),
            n_ictal=ictal.size,
            n_interictal=inter.size,
        ))
    return SeparabilityReport(scores=tuple(scores))


# --- синтетический набор клипов ---

def synthesize_clipset(seed: int = 0, clips: int = 596, ictal: int = 178, fs: float = 400.0,
                       duration: float = 1.0) -> ClipSet:
    """Целочисленные отсчёты АЦП: фон - низкочастотный шум, в иктальных клипах добавлена мощность 4-12 Гц"""
    if not 0 <= ictal <= clips or clips < 1:
        raise ParameterError(f"invalid clip counts: clips={clips}, ictal={ictal}")
    n = int(round(fs * duration))
    if n < 2:
        raise ParameterError(f"clip duration {duration} s at {fs} Hz gives fewer than 2 samples")
    rng = np.random.default_rng(seed)
    baseline_filter = filters.design_lowpass(100, 2 * np.pi * 40.0 / fs)
    ictal_filter = filters.design_bandpass(100, 4.0, 12.0, fs)

    def noise(h) -> np.ndarray:
        return filters.apply(h, Signal(samples=rng.standard_normal(n))).real

    items = []
    for i in range(clips):
        label = ClipLabel.ICTAL if i < ictal else ClipLabel.INTERICTAL
        samples = 20.0 * noise(baseline_filter)
        if label == ClipLabel.ICTAL:
            samples = samples + 200.0 * noise(ictal_filter)
        number = i + 1 if label == ClipLabel.ICTAL else i - ictal + 1
        items.append(Clip(id=f"{label.value}_{number:04d}", samples=np.rint(samples), fs=fs, label=label))
    logger.info(f"Synthesized {clips} clips ({ictal} ictal) at {fs} Hz, seed {seed}")
    return ClipSet(clips=tuple(items))
