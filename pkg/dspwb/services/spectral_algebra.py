"""Точная алгебра идеальных спектров для задач на свёртку sinc-последовательностей.

Частоты задаются долями pi (Fraction), высоты и веса - комплексные числа.
"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

import numpy as np

from dspwb.core.errors import DivergentProductError, ParameterError
from dspwb.schemas.ideal import Band, IdealSpectrum, Impulse
from dspwb.schemas.signal import Signal

logger = logging.getLogger(__name__)

PiFraction = Union[Fraction, int, str]

# высоты, меньшие по модулю, считаются нулём
ZERO_HEIGHT = 1e-12
ORACLE_MIN_TRUNCATION = 1024


def as_pi_fraction(omega: float, max_denominator: int = 1000) -> Fraction:
    """Переводит частоту в радианах в ближайшую долю pi"""
    return Fraction(omega / np.pi).limit_denominator(max_denominator)


def _wrap(omega: Fraction) -> Fraction:
    """Приводит частоту к [-pi, pi)"""
    return (omega + 1) % 2 - 1


def _normalize(pieces: Iterable[Tuple[Fraction, Fraction, complex]],
               impulses: Iterable[Tuple[Fraction, complex]]) -> IdealSpectrum:
    """Суммирует перекрывающиеся полосы и импульсы, убирает нули, склеивает соседние полосы"""
    pieces = [p for p in pieces if p[0] < p[1]]
    edges = sorted({edge for lo, hi, _ in pieces for edge in (lo, hi)})
    bands: List[Band] = []
    for lo, hi in zip(edges, edges[1:]):
        height = sum((h for a, b, h in pieces if a <= lo and hi <= b), 0j)
        if abs(height) <= ZERO_HEIGHT:
            continue
        if bands and bands[-1].hi == lo and bands[-1].height == height:
            bands[-1] = Band(lo=bands[-1].lo, hi=hi, height=height)
        else:
            bands.append(Band(lo=lo, hi=hi, height=height))

    weights: Dict[Fraction, complex] = {}
    for omega, weight in impulses:
        omega = _wrap(Fraction(omega))
        weights[omega] = weights.get(omega, 0j) + complex(weight)
    kept = [
        Impulse(omega=omega, weight=weight)
        for omega, weight in sorted(weights.items())
        if abs(weight) > ZERO_HEIGHT
    ]
    return IdealSpectrum(bands=tuple(bands), impulses=tuple(kept))


def spec_sinc(omega_c: PiFraction) -> IdealSpectrum:
    """sin(omega_c n) / (pi n) <-> прямоугольник высоты 1 на |w| < omega_c"""
    omega_c = Fraction(omega_c)
    if not 0 < omega_c < 1:
        raise ParameterError(f"sinc cutoff must lie in (0, pi), got {omega_c} x pi")
    return _normalize([(-omega_c, omega_c, 1 + 0j)], [])


def spec_delta() -> IdealSpectrum:
    return _normalize([(Fraction(-1), Fraction(1), 1 + 0j)], [])


def spec_sinusoid(omega0: PiFraction) -> IdealSpectrum:
    """sin(omega0 n) <-> -j pi delta(w - omega0) + j pi delta(w + omega0)"""
    omega0 = Fraction(omega0)
    if not -1 <= omega0 < 1:
        raise ParameterError(f"sinusoid frequency must lie in [-pi, pi), got {omega0} x pi")
    return _normalize([], [(omega0, -1j * np.pi), (-omega0, 1j * np.pi)])


def spec_alternate(s: IdealSpectrum) -> IdealSpectrum:
    """(-1)^n x[n]: сдвиг спектра на pi с переносом в [-pi, pi)"""
    pieces = []
    for band in s.bands:
        lo, hi = band.lo + 1, band.hi + 1
        if lo >= 1:
            pieces.append((lo - 2, hi - 2, band.height))
        elif hi > 1:
            pieces.append((lo, Fraction(1), band.height))
            pieces.append((Fraction(-1), hi - 2, band.height))
        else:
            pieces.append((lo, hi, band.height))
    return _normalize(pieces, [(imp.omega + 1, imp.weight) for imp in s.impulses])


def add(s1: IdealSpectrum, s2: IdealSpectrum, c1: complex = 1, c2: complex = 1) -> IdealSpectrum:
    """c1 s1 + c2 s2"""
    pieces = [(b.lo, b.hi, c1 * b.height) for b in s1.bands]
    pieces += [(b.lo, b.hi, c2 * b.height) for b in s2.bands]
    impulses = [(imp.omega, c1 * imp.weight) for imp in s1.impulses]
    impulses += [(imp.omega, c2 * imp.weight) for imp in s2.impulses]
    return _normalize(pieces, impulses)


def multiply(s1: IdealSpectrum, s2: IdealSpectrum) -> IdealSpectrum:
    """Произведение спектров, т.е. свёртка последовательностей"""
    shared = {imp.omega for imp in s1.impulses} & {imp.omega for imp in s2.impulses}
    if shared:
        where = ", ".join(f"{omega} pi" for omega in sorted(shared))
        raise DivergentProductError(f"impulses of both factors coincide at {where}")

    pieces = []
    for a in s1.bands:
        for b in s2.bands:
            lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
            if lo < hi:
                pieces.append((lo, hi, a.height * b.height))
    impulses = [(imp.omega, imp.weight * s2.height_at(imp.omega)) for imp in s1.impulses]
    impulses += [(imp.omega, imp.weight * s1.height_at(imp.omega)) for imp in s2.impulses]
    return _normalize(pieces, impulses)


def _phase(omega: Fraction, n: np.ndarray) -> np.ndarray:
    """exp(j omega pi n) с точным приведением (p n mod 2q) / q"""
    p, q = omega.numerator, omega.denominator
    reduced = np.mod(p * n, 2 * q) / q
    return np.exp(1j * np.pi * reduced)


def inverse_sequence(s: IdealSpectrum, n_values) -> np.ndarray:
    """Обратное ДВПФ в заданных точках n"""
    n = np.asarray(n_values, dtype=np.int64)
    out = np.zeros(n.shape, dtype=complex)
    nonzero = n != 0
    safe_n = np.where(nonzero, n, 1)
    for band in s.bands:
        edge_term = (_phase(band.hi, n) - _phase(band.lo, n)) / (2j * np.pi * safe_n)
        centre = float(band.hi - band.lo) / 2
        out += band.height * np.where(nonzero, edge_term, centre)
    for imp in s.impulses:
        out += imp.weight / (2 * np.pi) * _phase(imp.omega, n)
    return out


def inverse_sample(s: IdealSpectrum, n: int) -> complex:
    return complex(inverse_sequence(s, [n])[0])


def convolve_ideal(a: IdealSpectrum, b: IdealSpectrum, n_range: Tuple[int, int]) -> Signal:
    """Точная свёртка на отрезке n_lo ... n_hi (включительно)"""
    n_lo, n_hi = n_range
    if n_hi < n_lo:
        raise ParameterError(f"empty index range ({n_lo}, {n_hi})")
    product = multiply(a, b)
    n = np.arange(n_lo, n_hi + 1)
    return Signal(samples=inverse_sequence(product, n), origin_index=n_lo)


def numeric_convolution_oracle(a: IdealSpectrum, b: IdealSpectrum, truncation: int = 4096) -> Signal:
    """Свёртка последовательностей, усечённых до |n| <= truncation"""
    if truncation < ORACLE_MIN_TRUNCATION:
        raise ParameterError(f"oracle truncation must be >= {ORACLE_MIN_TRUNCATION}, got {truncation}")
    n = np.arange(-truncation, truncation + 1)
    xa = inverse_sequence(a, n)
    xb = inverse_sequence(b, n)
    logger.debug(f"Numeric convolution oracle with {n.size} samples per factor")
    return Signal(samples=np.convolve(xa, xb), origin_index=-2 * truncation)


def _pi_text(omega: Fraction) -> str:
    if omega == 0:
        return "0"
    sign = "-" if omega < 0 else ""
    num, den = abs(omega.numerator), omega.denominator
    head = "pi" if num == 1 else f"{num}pi"
    return f"{sign}{head}" if den == 1 else f"{sign}{head}/{den}"


def _complex_text(value: complex) -> str:
    if value.imag == 0:
        return f"{value.real:g}"
    if value.real == 0:
        return f"{value.imag:g}j"
    return f"({value.real:g}{value.imag:+g}j)"


def render(s: IdealSpectrum) -> str:
    """Запись обратного преобразования в замкнутой форме"""
    terms = []
    for band in s.bands:
        half = (band.hi - band.lo) / 2
        centre = (band.hi + band.lo) / 2
        term = f"{_complex_text(band.height)}*sin({_pi_text(half)} n)/(pi n)"
        if centre != 0:
            term = f"exp(j {_pi_text(centre)} n)*{term}"
        terms.append(term)
    for imp in s.impulses:
        weight = imp.weight / (2 * np.pi)
        terms.append(f"{_complex_text(complex(round(weight.real, 12), round(weight.imag, 12)))}*exp(j {_pi_text(imp.omega)} n)")
    return "y[n] = " + (" + ".join(terms) if terms else "0")


def _convolution_cases() -> Dict[str, Tuple[str, IdealSpectrum, IdealSpectrum]]:
    sinc = spec_sinc
    return {
        "a": ("sin(n pi/4)/(n pi) * sin(n pi/8)/(n pi)",
              sinc(Fraction(1, 4)), sinc(Fraction(1, 8))),
        "b": ("sin(n pi/4)/(n pi) * (sin(n pi/2)/(n pi) - sin(n pi/3)/(n pi))",
              sinc(Fraction(1, 4)), add(sinc(Fraction(1, 2)), sinc(Fraction(1, 3)), 1, -1)),
        "c": ("sin(n pi/4)/(n pi) * (delta[n] - sin(n pi/8)/(n pi))",
              sinc(Fraction(1, 4)), add(spec_delta(), sinc(Fraction(1, 8)), 1, -1)),
        "d": ("(delta[n] - sin(n pi/4)/(n pi)) * ((-1)^n sin(n pi/4)/(n pi))",
              add(spec_delta(), sinc(Fraction(1, 4)), 1, -1), spec_alternate(sinc(Fraction(1, 4)))),
        "e": ("((-1)^n sin(2n pi/3)/(n pi)) * sin(n pi/4)",
              spec_alternate(sinc(Fraction(2, 3))), spec_sinusoid(Fraction(1, 4))),
    }


CONVOLUTION_CASES = _convolution_cases()
