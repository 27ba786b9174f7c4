import numpy as np
import pytest

from dspwb.core.config import get_settings
from dspwb.schemas.signal import Signal


@pytest.fixture
def rng():
    return np.random.default_rng(20131)


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def on_bin_cosine(bin_index: int, n: int, fs: float, amplitude: float = 1.0) -> Signal:
    t = np.arange(n)
    return Signal(samples=amplitude * np.cos(2 * np.pi * bin_index * t / n), sample_rate=fs)


def assert_close(actual, expected, tol, scale=None):
    actual = np.asarray(actual)
    expected = np.asarray(expected)
    if scale is None:
        scale = max(float(np.max(np.abs(expected))), 1.0)
    assert float(np.max(np.abs(actual - expected))) <= tol * scale
