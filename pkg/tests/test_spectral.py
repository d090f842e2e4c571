import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from muskat import (
    DEFAULT_FILTER,
    FilterSpec,
    TrigInterpolant,
    analyze,
    filtered_derivative,
    make_grid,
    synthesize,
    threshold_smooth,
)


def _samples(n, max_value=1e3):
    return arrays(np.float64, n,
                  elements=st.floats(-max_value, max_value, width=64))


def test_analyze_sin_coefficients():
    g = make_grid(32)
    spec = analyze(np.sin(g.nodes))
    # sin(a) = (e^{ia} - e^{-ia}) / 2i
    assert abs(spec.coefficient(1) - (-0.5j)) < 1e-14
    assert abs(spec.coefficient(-1) - (0.5j)) < 1e-14
    others = [spec.coefficient(k) for k in spec.wavenumbers() if abs(k) != 1]
    assert max(abs(c) for c in others) < 1e-14


def test_wavenumber_range():
    spec = analyze(np.zeros(16))
    assert spec.wavenumbers().tolist() == list(range(-7, 9))


@given(v=_samples(64))
@settings(max_examples=50)
def test_analyze_synthesize_roundtrip(v):
    w = synthesize(analyze(v))
    assert np.max(np.abs(w - v)) <= 1e-9 * max(1.0, np.max(np.abs(v)))


def test_derivative_of_sin():
    g = make_grid(2048)
    d = filtered_derivative(np.sin(g.nodes), 1)
    assert np.max(np.abs(d - np.cos(g.nodes))) < 1e-10


def test_higher_derivatives():
    g = make_grid(128)
    v = np.sin(2 * g.nodes)
    assert np.max(np.abs(filtered_derivative(v, 2) + 4 * v)) < 1e-11
    # round-off in the high modes is amplified by k**4 under order 4
    assert np.max(np.abs(filtered_derivative(v, 4) - 16 * v)) < 1e-8


def test_derivative_of_smooth_nonpolynomial():
    g = make_grid(256)
    v = np.exp(np.cos(g.nodes))
    exact = -np.sin(g.nodes) * v
    assert np.max(np.abs(filtered_derivative(v, 1) - exact)) < 1e-11


def test_nyquist_mode_dropped_for_odd_order():
    g = make_grid(32)
    v = np.cos(16 * g.nodes)  # pure Nyquist mode
    assert np.max(np.abs(filtered_derivative(v, 1))) < 1e-13
    # even orders keep it, attenuated by the cutoff filter at k = n/2
    expect = -256.0 * np.exp(-10.0) * v
    assert np.max(np.abs(filtered_derivative(v, 2) - expect)) < 1e-9


def test_derivative_rejects_bad_input():
    with pytest.raises(ValueError):
        filtered_derivative(np.zeros(7), 1)
    with pytest.raises(ValueError):
        filtered_derivative(np.zeros(2), 1)
    with pytest.raises(ValueError):
        filtered_derivative(np.array([1.0, np.nan, 0.0, 0.0]), 1)
    with pytest.raises(ValueError):
        filtered_derivative(np.zeros(16), 5)


def test_filter_profile_shape():
    f = FilterSpec()
    prof = f.profile(64)
    assert prof[0] == 1.0
    assert abs(prof[32] - np.exp(-10.0)) < 1e-15
    k = np.fft.fftfreq(64, d=1 / 64)
    order = np.argsort(np.abs(k))
    assert np.all(np.diff(prof[order]) <= 1e-15)


def test_filter_negligible_on_low_modes():
    # modes up to n/4 pass essentially untouched
    prof = DEFAULT_FILTER.profile(512)
    assert abs(prof[128] - 1.0) < 1e-6


def test_threshold_smooth_zero_eps_is_identity():
    rng = np.random.default_rng(7)
    v = rng.normal(size=64)
    assert np.array_equal(threshold_smooth(v, 0.0), v)


def test_threshold_smooth_drops_small_modes():
    g = make_grid(64)
    v = np.sin(g.nodes) + 1e-9 * np.sin(5 * g.nodes)
    w = threshold_smooth(v, 1e-6)
    spec = analyze(w)
    assert abs(spec.coefficient(5)) < 1e-15
    assert abs(spec.coefficient(1) - (-0.5j)) < 1e-12


def test_threshold_smooth_keeps_large_modes():
    g = make_grid(64)
    v = np.sin(g.nodes)
    w = threshold_smooth(v, 1e-6)
    assert np.max(np.abs(w - v)) < 1e-14


@given(v=_samples(32), exp=st.integers(-9, 2))
@settings(max_examples=100)
def test_threshold_smooth_idempotent_bitwise(v, exp):
    eps = 10.0 ** exp
    once = threshold_smooth(v, eps)
    twice = threshold_smooth(once, eps)
    assert np.array_equal(once, twice)


def test_interpolant_matches_nodes_and_analytic():
    g = make_grid(64)
    v = np.sin(3 * g.nodes)
    interp = TrigInterpolant(v)
    assert np.max(np.abs(interp(g.nodes) - v)) < 1e-13
    x = np.linspace(-3.0, 3.0, 17)
    assert np.max(np.abs(interp(x) - np.sin(3 * x))) < 1e-12
    assert np.max(np.abs(interp(x, order=1) - 3 * np.cos(3 * x))) < 1e-11


def test_interpolant_scalar_output():
    g = make_grid(32)
    interp = TrigInterpolant(np.cos(g.nodes))
    val = interp(0.5)
    assert np.isscalar(val) or np.ndim(val) == 0
    assert abs(val - np.cos(0.5)) < 1e-12
