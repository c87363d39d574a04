import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import hermite_held_coefficients
from isowave.wavelets import (
    KINDS,
    WaveletFunction,
    emit_profile,
    eval_level_lowpass,
    eval_mother,
    eval_subbands,
    generate_filter_bank,
    held_polynomial,
    profile_header,
    write_profile_csv,
)

PI = math.pi
ALL = [WaveletFunction(k) for k in KINDS] + [WaveletFunction("held", held_order=n) for n in range(1, 6)]
SMOOTH = [w for w in ALL if w.kind != "shannon"]


def ids(w):
    return f"{w.kind}{w.held_order if w.kind == 'held' else ''}"


# ------------------------------------------------------------------ mother profiles


def test_shannon_values():
    sh = WaveletFunction("shannon")
    assert eval_mother(sh, 3 * PI / 4) == 1.0
    assert eval_mother(sh, PI / 4) == 0.0


def test_simoncelli_branch_points():
    si = WaveletFunction("simoncelli")
    assert eval_mother(si, PI / 2) == pytest.approx(1.0, abs=1e-15)
    assert eval_mother(si, PI) == pytest.approx(0.0, abs=1e-15)
    assert eval_mother(si, PI / 4) == pytest.approx(0.0, abs=1e-15)


def test_vow_and_held_peak_at_half_pi():
    assert eval_mother(WaveletFunction("vow"), PI / 2) == pytest.approx(1.0, abs=1e-15)
    assert eval_mother(WaveletFunction("held"), PI / 2) == pytest.approx(1.0, abs=1e-15)


def test_negative_frequency_rejected():
    with pytest.raises(ValueError, match="non-negative"):
        eval_mother(WaveletFunction("vow"), -0.1)


def test_unknown_kind():
    with pytest.raises(ValueError, match="supported"):
        WaveletFunction("meyer")


@pytest.mark.parametrize("wavelet", ALL, ids=ids)
def test_partition_of_unity(wavelet):
    omega = np.linspace(1e-3, PI, 10_000)
    total = sum(wavelet.squared(2.0 ** i * omega) for i in range(-20, 21))
    assert np.max(np.abs(total - 1)) < 1e-9


@pytest.mark.parametrize("wavelet", ALL, ids=ids)
def test_band_limited_and_bounded(wavelet):
    above = np.linspace(PI * (1 + 1e-12), 10 * PI, 1000)
    assert not np.any(eval_mother(wavelet, above))
    h = eval_mother(wavelet, np.linspace(0, 2 * PI, 5001))
    assert h.min() >= 0 and h.max() <= 1 + 1e-12


@pytest.mark.parametrize("wavelet", SMOOTH, ids=ids)
def test_vanishing_at_zero(wavelet):
    assert eval_mother(wavelet, 1e-6) < 1e-3


@given(st.floats(PI / 4, PI / 2, exclude_min=True))
def test_simoncelli_trig_identity(omega):
    si = WaveletFunction("simoncelli")
    assert si.squared(omega) + si.squared(2 * omega) == pytest.approx(1.0, abs=1e-14)


def test_vow_kappa_override_still_tiles():
    w = WaveletFunction("vow", kappa=0.3)
    omega = np.linspace(1e-3, PI, 2000)
    total = sum(w.squared(2.0 ** i * omega) for i in range(-20, 21))
    assert np.max(np.abs(total - 1)) < 1e-12


# ------------------------------------------------------------------ Held polynomial


def test_held_order_zero():
    np.testing.assert_allclose(held_polynomial(0).coef, [0.5, -2.0], atol=1e-15)


@pytest.mark.parametrize("order", range(6))
def test_held_polynomial_matches_hermite_system(order):
    q = held_polynomial(order)
    assert q.degree() == 2 * order + 1
    np.testing.assert_allclose(q.coef, hermite_held_coefficients(order), rtol=1e-7, atol=1e-9)
    assert q(1 / 8) == pytest.approx(0.25, abs=1e-13)
    assert q(1 / 4) == pytest.approx(0.0, abs=1e-13)
    for i in range(1, order + 1):
        d = q.deriv(i)
        assert d(1 / 8) == pytest.approx(0, abs=1e-6 * 8 ** i)
        assert d(1 / 4) == pytest.approx(0, abs=1e-6 * 8 ** i)


def test_held_order_cap():
    with pytest.raises(ValueError, match="0..5"):
        held_polynomial(6)
    with pytest.raises(ValueError):
        WaveletFunction("held", held_order=7)


# ------------------------------------------------------------------ level filters


@pytest.mark.parametrize("wavelet", ALL, ids=ids)
def test_lowpass_vanishes_at_half_pi(wavelet):
    assert eval_level_lowpass(wavelet, PI / 2) == pytest.approx(0.0, abs=1e-15)
    assert eval_level_lowpass(wavelet, 0.0) == 1.0


def test_shannon_lowpass_values():
    sh = WaveletFunction("shannon")
    assert eval_level_lowpass(sh, PI / 8) == 1.0
    # half-open support puts pi/2 itself in the high-pass
    assert eval_level_lowpass(sh, PI / 2) == 0.0
    assert eval_subbands(sh, 1, PI / 2)[0] == 1.0


@pytest.mark.parametrize("wavelet", ALL, ids=ids)
def test_lowpass_highpass_split(wavelet):
    omega = np.linspace(0, PI, 4001)
    lp = eval_level_lowpass(wavelet, omega)
    hp = eval_subbands(wavelet, 1, omega)[0]
    assert np.max(np.abs(lp ** 2 + hp ** 2 - 1)) < 1e-10


@pytest.mark.parametrize("wavelet", ALL, ids=ids)
@pytest.mark.parametrize("bands", [1, 2, 3, 5])
def test_subbands_sum_to_highpass(wavelet, bands):
    omega = np.linspace(0, 2 * PI, 3001)
    lp = eval_level_lowpass(wavelet, omega)
    hp = eval_subbands(wavelet, bands, omega)
    assert hp.shape == (bands, omega.size)
    assert np.max(np.abs(np.sum(hp ** 2, axis=0) + lp ** 2 - 1)) < 1e-12


def test_shannon_two_bands_hand_evaluated():
    # omega = pi*2**-0.25 lies in [pi/2, pi): band 2 window h(omega) = 1,
    # band 1 window h(sqrt(2)*omega) sits above pi and is 0
    hp = eval_subbands(WaveletFunction("shannon"), 2, PI * 2 ** -0.25)
    np.testing.assert_array_equal(hp, [0.0, 1.0])
    # below pi/sqrt(2) the two dilated indicators overlap evenly
    hp = eval_subbands(WaveletFunction("shannon"), 2, 0.6 * PI)
    np.testing.assert_allclose(hp ** 2, [0.5, 0.5], rtol=1e-15)


def test_subbands_need_positive_count():
    with pytest.raises(ValueError):
        eval_subbands(WaveletFunction("vow"), 0, 1.0)


# ------------------------------------------------------------------ filter banks


@pytest.mark.parametrize("wavelet", ALL, ids=ids)
@pytest.mark.parametrize("bands", [1, 3])
def test_filter_bank_8x8(wavelet, bands):
    bank = generate_filter_bank(wavelet, (8, 8), bands)
    lp = bank.low_pass.data
    subs = np.stack([b.data for b in bank.sub_bands])
    assert bank.bands == bands
    assert not np.any(lp.imag) and not np.any(subs.imag)
    assert lp.real.min() >= 0 and subs.real.min() >= 0
    assert lp[0, 0] == 1 and np.all(subs[:, 0, 0] == 0)
    assert np.max(np.abs(np.abs(lp) ** 2 + np.sum(np.abs(subs) ** 2, axis=0) - 1)) < 1e-10
    # corner (pi, pi): |omega| = pi*sqrt(2)
    assert lp[4, 4] == 0
    assert np.sum(np.abs(subs[:, 4, 4]) ** 2) == pytest.approx(1.0, abs=1e-15)


def test_filter_bank_rejects_tiny_axis():
    with pytest.raises(ValueError):
        generate_filter_bank(WaveletFunction("vow"), (8, 1), 1)


# ------------------------------------------------------------------ profiles


def test_shannon_profile_step():
    table = emit_profile(WaveletFunction("shannon"), 1, 512)
    omega, h, hp, lp = table.T
    assert omega[0] == 0 and omega[-1] == pytest.approx(1.05 * PI)
    assert np.all(lp[omega < PI / 2] == 1) and np.all(lp[omega >= PI / 2] == 0)
    assert np.all(h[(omega >= PI / 2) & (omega < PI)] == 1)
    assert np.all(h[omega < PI / 2] == 0)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("bands", [1, 4])
def test_profile_columns_consistent(kind, bands):
    table = emit_profile(WaveletFunction(kind), bands, 300)
    assert table.shape == (300, bands + 3)
    subs, lp = table[:, 2:-1], table[:, -1]
    np.testing.assert_allclose(np.sum(subs ** 2, axis=1), 1 - lp ** 2, atol=1e-12)


def test_vow_profile_peak():
    vow = WaveletFunction("vow")
    table = emit_profile(vow, 1, 2001)
    assert table[:, 1].max() <= 1 + 1e-12
    assert table[np.argmax(table[:, 1]), 0] == pytest.approx(PI / 2, abs=2e-3)
    assert eval_mother(vow, PI / 2) == pytest.approx(1.0, abs=1e-15)


def test_profile_csv(tmp_path):
    path = tmp_path / "p.csv"
    table = emit_profile(WaveletFunction("held"), 2, 5)
    write_profile_csv(table, path, 2)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(profile_header(2)) == "omega,h,h_1,h_2,lp"
    assert len(lines) == 6
    assert float(lines[-1].split(",")[0]) == pytest.approx(1.05 * PI, rel=1e-6)
