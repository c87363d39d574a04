import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isowave.frequency import forward_dft, inverse_dft, shift_layout
from isowave.image import ComplexSpectrum, RealImage
from isowave.pyramid import (
    NonHermitianInputWarning,
    PyramidError,
    admissible_levels,
    forward,
    inverse,
    level_dims,
    max_levels,
)
from isowave.wavelets import KINDS, WaveletFunction


@pytest.mark.parametrize("dims, expected", [
    ([512, 512], 8), ([64, 32], 4), ([7], 0), ([64], 5), ([6, 12], 1), ([2], 0),
])
def test_max_levels(dims, expected):
    assert max_levels(dims) == expected


@pytest.mark.parametrize("dims, expected", [([64, 64], 5), ([512], 8), ([100, 200], 5), ([3], 0)])
def test_admissible_levels(dims, expected):
    assert admissible_levels(dims) == expected


def _spectrum(rng, dims):
    return forward_dft(RealImage.from_array(rng.standard_normal(dims)))


def _cosine(n, k0):
    x = np.cos(2 * np.pi * k0 * np.arange(n) / n)
    return forward_dft(RealImage.from_array(np.repeat(x[:, None], n, axis=1)))


def test_shannon_low_cosine_goes_to_approximation():
    X = _cosine(32, 2)  # omega = pi/8 along axis 0
    c = forward(X, 1, 1, WaveletFunction("shannon"))
    assert c.details[(1, 1)].energy() < 1e-20 * X.energy()
    assert c.approximation.energy() == pytest.approx(X.energy(), rel=1e-12)


def test_shannon_high_cosine_goes_to_detail():
    X = _cosine(32, 12)  # omega = 3pi/4
    c = forward(X, 1, 1, WaveletFunction("shannon"))
    assert c.approximation.energy() < 1e-20 * X.energy()
    assert c.details[(1, 1)].energy() == pytest.approx(X.energy(), rel=1e-12)


@pytest.mark.parametrize("kind", KINDS)
def test_zero_in_zero_out(kind):
    X = ComplexSpectrum.from_array(np.zeros((16, 16)))
    c = forward(X, 2, 3, WaveletFunction(kind))
    assert not c.approximation.data.any()
    assert not any(d.data.any() for d in c.details.values())
    assert not inverse(c).data.any()


def test_coefficient_dims(rng):
    X = _spectrum(rng, (32, 16, 8))
    c = forward(X, 2, 3, WaveletFunction("vow"))
    assert sorted(c.details) == [(s, h) for s in (1, 2) for h in (1, 2, 3)]
    for (s, _), d in c.details.items():
        assert d.dims == level_dims(X.dims, s)
    assert c.approximation.dims == (8, 4, 2)
    assert set(c.banks) == {1, 2}


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("levels, bands", [(1, 1), (2, 2), (3, 5)])
def test_round_trip_and_energy(rng, kind, levels, bands):
    x = rng.standard_normal((64, 64))
    X = forward_dft(RealImage.from_array(x))
    c = forward(X, levels, bands, WaveletFunction(kind))
    assert c.energy() == pytest.approx(X.energy(), rel=1e-9)
    np.testing.assert_allclose(inverse(c).data, X.data, rtol=0, atol=1e-10 * np.abs(X.data).max())
    y = inverse_dft(inverse(c)).data
    assert np.max(np.abs(y - x)) < 1e-9 * np.ptp(x)


def test_round_trip_non_power_of_two(rng):
    x = rng.standard_normal((24, 40))
    X = forward_dft(RealImage.from_array(x))
    for kind in KINDS:
        c = forward(X, 3, 2, WaveletFunction(kind, held_order=2))
        assert np.max(np.abs(inverse_dft(inverse(c)).data - x)) < 1e-12 * np.ptp(x)


def test_round_trip_3d(rng):
    x = rng.standard_normal((16, 16, 16))
    X = forward_dft(RealImage.from_array(x))
    c = forward(X, 2, 2, WaveletFunction("held"))
    assert np.max(np.abs(inverse_dft(inverse(c)).data - x)) < 1e-9 * np.ptp(x)


@settings(max_examples=20, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.integers(0, 2 ** 31), st.sampled_from(KINDS))
def test_linearity(a, b, seed, kind):
    r = np.random.default_rng(seed)
    X, Y = (_spectrum(r, (16, 8)) for _ in range(2))
    w = WaveletFunction(kind)
    combo = forward(X.with_data(a * X.data + b * Y.data), 2, 2, w)
    cx, cy = forward(X, 2, 2, w), forward(Y, 2, 2, w)
    scale = np.abs(X.data).max() + np.abs(Y.data).max()
    for key, d in combo.details.items():
        np.testing.assert_allclose(d.data, a * cx.details[key].data + b * cy.details[key].data,
                                   atol=1e-12 * scale)
    np.testing.assert_allclose(combo.approximation.data,
                               a * cx.approximation.data + b * cy.approximation.data,
                               atol=1e-12 * scale)


def test_cached_and_regenerated_banks_agree(rng):
    c = forward(_spectrum(rng, (32, 32)), 3, 2, WaveletFunction("simoncelli"))
    cached = inverse(c, use_cached_banks=True).data
    fresh = inverse(c, use_cached_banks=False).data
    c.banks.clear()
    on_demand = inverse(c).data
    assert np.max(np.abs(cached - fresh)) <= 1e-12 * np.abs(cached).max()
    assert np.array_equal(fresh, on_demand)


def test_levels_out_of_range(rng):
    X = _spectrum(rng, (16, 16))
    w = WaveletFunction("vow")
    with pytest.raises(PyramidError, match="1..3"):
        forward(X, 4, 1, w)
    with pytest.raises(PyramidError):
        forward(X, 0, 1, w)
    with pytest.raises(PyramidError, match="bands"):
        forward(X, 1, 0, w)


def test_forward_requires_standard_layout(rng):
    with pytest.raises(PyramidError, match="standard"):
        forward(shift_layout(_spectrum(rng, (8, 8))), 1, 1, WaveletFunction("vow"))


def test_non_hermitian_input_warns():
    X = ComplexSpectrum.from_array(1j * np.ones((8, 8)))
    with pytest.warns(NonHermitianInputWarning):
        forward(X, 1, 1, WaveletFunction("vow"))


def test_inverse_rejects_inconsistent_dims(rng):
    c = forward(_spectrum(rng, (16, 16)), 2, 1, WaveletFunction("vow"))
    c.details[(2, 1)] = ComplexSpectrum.from_array(np.zeros((4, 4)))
    with pytest.raises(PyramidError, match="level 2"):
        inverse(c)
