from fractions import Fraction

import numpy as np
import pytest

from dspwb.core.errors import DivergentProductError, ParameterError
from dspwb.schemas.ideal import Band, IdealSpectrum
from dspwb.services import spectral_algebra as sa

N_RANGE = (-256, 256)


def _n():
    return np.arange(N_RANGE[0], N_RANGE[1] + 1)


def _sinc(cutoff, n):
    # sin(cutoff pi n) / (pi n)
    return cutoff * np.sinc(cutoff * n)


def test_sinc_spectrum_and_inverse():
    s = sa.spec_sinc("1/4")
    assert s.bands == (Band(lo=Fraction(-1, 4), hi=Fraction(1, 4), height=1),)
    assert np.isclose(sa.inverse_sample(s, 0), 0.25)
    assert np.isclose(sa.inverse_sample(s, 1), np.sin(np.pi / 4) / np.pi)
    with pytest.raises(ParameterError):
        sa.spec_sinc(1)


def test_frequencies_must_be_exact():
    with pytest.raises(ValueError):
        Band(lo=0.25, hi=Fraction(1, 2), height=1)
    with pytest.raises(ValueError):
        IdealSpectrum(bands=(
            Band(lo=Fraction(-1, 2), hi=Fraction(1, 4), height=1),
            Band(lo=Fraction(0), hi=Fraction(1, 2), height=1),
        ))
    assert sa.as_pi_fraction(np.pi / 4) == Fraction(1, 4)


def test_delta_spectrum_inverts_to_unit_impulse():
    values = sa.inverse_sequence(sa.spec_delta(), np.arange(-5, 6))
    expected = np.zeros(11)
    expected[5] = 1
    assert np.allclose(values, expected, atol=1e-15)


def test_sinusoid_inverse():
    n = np.arange(-20, 21)
    values = sa.inverse_sequence(sa.spec_sinusoid(Fraction(1, 4)), n)
    assert np.allclose(values, np.sin(np.pi * n / 4), atol=1e-12)


def test_alternation_moves_impulses_and_bands_by_pi():
    shifted = sa.spec_alternate(sa.spec_sinusoid(Fraction(1, 4)))
    assert [imp.omega for imp in shifted.impulses] == [Fraction(-3, 4), Fraction(3, 4)]

    high = sa.spec_alternate(sa.spec_sinc(Fraction(1, 4)))
    assert [(b.lo, b.hi) for b in high.bands] == [(Fraction(-1), Fraction(-3, 4)), (Fraction(3, 4), Fraction(1))]
    assert high.height_at(Fraction(-1)) == 1
    assert high.height_at(Fraction(0)) == 0


def test_add_cancels_and_merges():
    s = sa.spec_sinc(Fraction(1, 4))
    assert sa.add(s, s, 1, -1).is_empty
    merged = sa.add(sa.spec_sinc(Fraction(1, 2)), sa.add(sa.spec_delta(), sa.spec_sinc(Fraction(1, 2)), 1, -1))
    assert merged == sa.spec_delta()


def test_multiply_impulse_by_band_height():
    product = sa.multiply(sa.spec_sinc(Fraction(1, 2)), sa.spec_sinusoid(Fraction(1, 4)))
    assert product == sa.spec_sinusoid(Fraction(1, 4))
    outside = sa.multiply(sa.spec_sinc(Fraction(1, 8)), sa.spec_sinusoid(Fraction(1, 4)))
    assert outside.is_empty
    on_edge = sa.multiply(sa.spec_sinc(Fraction(1, 4)), sa.spec_sinusoid(Fraction(1, 4)))
    assert len(on_edge.impulses) == 2


def test_coinciding_impulses_diverge():
    with pytest.raises(DivergentProductError):
        sa.multiply(sa.spec_sinusoid(Fraction(1, 4)), sa.spec_sinusoid(Fraction(1, 4)))


def test_case_a_is_the_narrower_sinc():
    _, a, b = sa.CONVOLUTION_CASES["a"]
    y = sa.convolve_ideal(a, b, N_RANGE)
    assert y.origin_index == -256
    assert np.allclose(y.samples, _sinc(1 / 8, _n()), atol=1e-12)
    assert sa.render(sa.multiply(a, b)) == "y[n] = 1*sin(pi/8 n)/(pi n)"


def test_case_b_and_e_vanish():
    for key in ("b", "e"):
        _, a, b = sa.CONVOLUTION_CASES[key]
        product = sa.multiply(a, b)
        assert product.is_empty
        assert sa.render(product) == "y[n] = 0"
        assert np.allclose(sa.convolve_ideal(a, b, (-5, 5)).samples, 0)


def test_case_c_is_a_band_difference():
    _, a, b = sa.CONVOLUTION_CASES["c"]
    y = sa.convolve_ideal(a, b, N_RANGE)
    assert np.allclose(y.samples, _sinc(1 / 4, _n()) - _sinc(1 / 8, _n()), atol=1e-12)


def test_case_d_is_a_highpass():
    _, a, b = sa.CONVOLUTION_CASES["d"]
    product = sa.multiply(a, b)
    assert [(band.lo, band.hi) for band in product.bands] == [
        (Fraction(-1), Fraction(-3, 4)),
        (Fraction(3, 4), Fraction(1)),
    ]
    n = _n()
    expected = np.where(n == 0, 0.25, -_sinc(3 / 4, n))
    y = sa.convolve_ideal(a, b, N_RANGE)
    assert np.allclose(y.samples, expected, atol=1e-12)
    assert "exp(j" in sa.render(product)


@pytest.mark.parametrize("key", ["a", "b", "c", "d", "e"])
def test_numeric_oracle_agrees(key):
    _, a, b = sa.CONVOLUTION_CASES[key]
    truncation = 4096
    exact = sa.convolve_ideal(a, b, N_RANGE)
    oracle = sa.numeric_convolution_oracle(a, b, truncation)
    assert oracle.origin_index == -2 * truncation
    start = N_RANGE[0] - oracle.origin_index
    window = oracle.samples[start:start + len(exact)]
    assert np.max(np.abs(window - exact.samples)) < 2e-3


def _factors():
    lowpass = sa.spec_sinc(Fraction(1, 2))
    highpass = sa.add(sa.spec_delta(), sa.spec_sinc(Fraction(1, 4)), 1, -1)
    tone = sa.spec_sinusoid(Fraction(1, 3))
    return lowpass, highpass, tone


def _assert_same_spectrum(s1, s2):
    assert [(band.lo, band.hi) for band in s1.bands] == [(band.lo, band.hi) for band in s2.bands]
    assert [imp.omega for imp in s1.impulses] == [imp.omega for imp in s2.impulses]
    assert np.allclose(sa.inverse_sequence(s1, _n()), sa.inverse_sequence(s2, _n()), atol=1e-12)


def test_multiply_is_commutative_and_associative():
    lowpass, highpass, tone = _factors()
    _assert_same_spectrum(sa.multiply(lowpass, highpass), sa.multiply(highpass, lowpass))
    _assert_same_spectrum(sa.multiply(lowpass, tone), sa.multiply(tone, lowpass))
    _assert_same_spectrum(
        sa.multiply(sa.multiply(lowpass, highpass), tone),
        sa.multiply(lowpass, sa.multiply(highpass, tone)),
    )


@pytest.mark.parametrize("key", ["a", "b", "c", "d", "e"])
def test_case_results_are_real_and_even(key):
    _, a, b = sa.CONVOLUTION_CASES[key]
    product = sa.multiply(a, b)
    for omega in (Fraction(1, 16), Fraction(1, 5), Fraction(7, 8)):
        assert product.height_at(-omega) == np.conj(product.height_at(omega))
    y = sa.convolve_ideal(a, b, N_RANGE).samples
    assert np.allclose(y[::-1], np.conj(y), atol=1e-12)
    assert np.max(np.abs(y.imag)) < 1e-12


def test_oracle_and_range_validation():
    s = sa.spec_sinc(Fraction(1, 4))
    with pytest.raises(ParameterError):
        sa.numeric_convolution_oracle(s, s, truncation=100)
    with pytest.raises(ParameterError):
        sa.convolve_ideal(s, s, (5, -5))


def test_convolution_case_catalogue():
    assert sorted(sa.CONVOLUTION_CASES) == list("abcde")
    assert all(isinstance(label, str) for label, _, _ in sa.CONVOLUTION_CASES.values())
