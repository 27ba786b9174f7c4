import numpy as np
import pytest

from dspwb.core.errors import ConfigurationError, ParameterError
from dspwb.schemas.signal import Signal
from dspwb.schemas.spectrum import DtftGrid
from dspwb.services import transform
from tests.conftest import on_bin_cosine


@pytest.mark.parametrize("n", [1, 2, 8, 64, 6, 15, 1030])
def test_dft_matches_numpy(rng, n):
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    X = transform.dft(Signal(samples=x))
    assert X.n == n
    assert np.allclose(X.bins, np.fft.fft(x), atol=1e-9 * max(n, 1))


def _complex_noise(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


@pytest.mark.parametrize("n", range(1, 65))
def test_fast_and_direct_dft_agree_for_short_lengths(rng, n):
    x = Signal(samples=_complex_noise(rng, n))
    assert np.allclose(transform.dft(x).bins, transform.direct_dft(x).bins, atol=1e-10 * n)


@pytest.mark.parametrize("n", [5, 1000, 1024])
def test_dft_reference_lengths(rng, n):
    x = Signal(samples=_complex_noise(rng, n))
    X = transform.dft(x)
    assert np.allclose(X.bins, transform.direct_dft(x).bins, atol=1e-8)
    assert np.allclose(X.bins, np.fft.fft(x.samples), atol=1e-9)
    assert np.allclose(transform.idft(X).samples, x.samples, atol=1e-12)


@pytest.mark.parametrize("n", [5, 12, 64, 1000])
def test_parseval(rng, n):
    x = _complex_noise(rng, n)
    X = transform.dft(Signal(samples=x)).bins
    assert np.sum(np.abs(x) ** 2) == pytest.approx(np.sum(np.abs(X) ** 2) / n, rel=1e-12)


@pytest.mark.parametrize("n", [7, 16])
def test_linearity(rng, n):
    x, y = _complex_noise(rng, n), _complex_noise(rng, n)
    a, b = 2.5 - 1j, -0.75j
    combined = transform.dft(Signal(samples=a * x + b * y)).bins
    separate = a * transform.dft(Signal(samples=x)).bins + b * transform.dft(Signal(samples=y)).bins
    assert np.allclose(combined, separate, atol=1e-10)


def test_idft_inverts_dft(rng):
    x = Signal(samples=rng.standard_normal(12) + 1j * rng.standard_normal(12), sample_rate=8.0)
    back = transform.idft(transform.dft(x))
    assert np.allclose(back.samples, x.samples, atol=1e-12)
    assert back.sample_rate == 8.0


def test_real_input_gives_hermitian_spectrum(rng):
    X = transform.dft(Signal(samples=rng.standard_normal(10)))
    assert X.source_real
    assert X.is_hermitian()
    assert not transform.dft(Signal(samples=[1, 1j, 0, 2])).is_hermitian()


def test_single_sided_amplitude_of_on_bin_cosine():
    x = on_bin_cosine(11, 64, fs=64.0, amplitude=3.0)
    freqs, mags = transform.single_sided(transform.dft(x))
    assert freqs.size == 33
    assert freqs[11] == 11.0
    assert np.isclose(mags[11], 3.0)
    assert np.all(np.delete(mags, 11) < 1e-9)


def test_single_sided_keeps_dc_and_nyquist_unscaled():
    x = Signal(samples=np.ones(8) + np.cos(np.pi * np.arange(8)), sample_rate=8.0)
    _, mags = transform.single_sided(transform.dft(x))
    assert np.isclose(mags[0], 1.0)
    assert np.isclose(mags[4], 1.0)


def test_single_sided_requirements():
    with pytest.raises(ConfigurationError):
        transform.single_sided(transform.dft(Signal(samples=[1, 2, 3])))
    with pytest.raises(ParameterError):
        transform.single_sided(transform.dft(Signal(samples=[1, 2j, 3], sample_rate=1.0)))


def test_dtft_of_shifted_impulse():
    grid = transform.dtft_eval(Signal(samples=[1], origin_index=3), [-1.0, 0.0, 2.0])
    assert np.allclose(grid.values, np.exp(-3j * np.array([-1.0, 0.0, 2.0])))
    assert np.allclose(grid.magnitude, 1.0)


def test_dtft_grid_rejects_unordered_frequencies():
    with pytest.raises(ValueError):
        DtftGrid(omegas=[0.0, -0.5], values=[1, 1])
    with pytest.raises(ValueError):
        DtftGrid(omegas=[0.0, 4.0], values=[1, 1])


def test_ideal_lowpass_variant_is_near_rectangular():
    grid = transform.dtft_variant("a", omegas=np.array([0.0, 0.1 * np.pi, 0.9 * np.pi]))
    assert abs(grid.values[0] - 1) < 0.01
    assert abs(grid.values[1] - 1) < 0.02
    assert abs(grid.values[2]) < 0.02


def test_delay_keeps_magnitude_and_sign_alternation_moves_band():
    omegas = np.array([0.0, 0.5, np.pi])
    a = transform.dtft_variant("a", omegas=omegas)
    b = transform.dtft_variant("b", omegas=omegas)
    f = transform.dtft_variant("f", omegas=omegas)
    assert np.allclose(a.magnitude, b.magnitude, atol=1e-9)
    assert abs(f.values[0]) < 0.02
    assert abs(abs(f.values[2]) - 1) < 0.02


def test_dtft_variant_catalogue():
    assert sorted(transform.dtft_variants()) == list("abcdefghij")
    assert transform.dtft_variant("j").omegas.size == 512
    with pytest.raises(ParameterError):
        transform.dtft_variant("z")
