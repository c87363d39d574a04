"""Isotropic band-limited mother wavelets and their frequency filter banks.

Every profile ``h`` vanishes above ``pi`` and its squared dyadic dilations sum
to one on ``(0, pi]``. One pyramid level splits the spectrum into a low-pass
``LP(w) = sqrt(sum_{i>=1} h(2**i w)**2)`` and a high-pass ``sqrt(1 - LP**2)``,
the latter optionally divided into ``B`` radial sub-bands whose squares add up
to the high-pass square.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .frequency import radial_grid
from .image import ComplexSpectrum, Layout

KINDS = ("vow", "held", "simoncelli", "shannon")
MAX_HELD_ORDER = 5

_PI = np.pi


def held_polynomial(order: int) -> Polynomial:
    """Degree ``2n+1`` polynomial ``q`` used by the Held profile.

    ``q(1/8) = 1/4`` and ``q(1/4) = 0`` with derivatives 1..n vanishing at both
    ends. It is a smoothstep of order ``n`` mapped onto ``[1/8, 1/4]``.
    """
    n = int(order)
    if not 0 <= n <= MAX_HELD_ORDER:
        raise ValueError(f"Held order must be in 0..{MAX_HELD_ORDER}, got {order}")
    # smoothstep S_n(s) = s^(n+1) * sum_k C(n+k, k) C(2n+1, n-k) (-s)^k
    coef = np.zeros(2 * n + 2)
    for k in range(n + 1):
        coef[n + 1 + k] = math.comb(n + k, k) * math.comb(2 * n + 1, n - k) * (-1) ** k
    smooth = Polynomial(coef)
    s_of_t = Polynomial([-1.0, 8.0])
    return (1 - smooth(s_of_t)) / 4


@dataclass(frozen=True)
class WaveletFunction:
    """Radial profile of one isotropic mother wavelet.

    ``kappa`` only affects Vow and ``held_order`` only Held.
    """

    kind: str
    kappa: float = 0.75
    held_order: int = 0

    def __post_init__(self):
        kind = str(self.kind).lower()
        if kind not in KINDS:
            raise ValueError(f"unknown wavelet {self.kind!r}; supported: {', '.join(KINDS)}")
        object.__setattr__(self, "kind", kind)
        if kind == "held":
            held_polynomial(self.held_order)  # validates the order
        if kind == "vow" and not 0 < self.kappa < _PI / 2:
            raise ValueError(f"kappa must lie in (0, pi/2), got {self.kappa}")

    @cached_property
    def held_poly(self) -> Polynomial:
        return held_polynomial(self.held_order)

    @property
    def params(self) -> dict:
        if self.kind == "vow":
            return {"kappa": self.kappa}
        if self.kind == "held":
            return {"held_order": self.held_order}
        return {}

    def squared(self, omega) -> np.ndarray:
        """``h(omega)**2``, vectorized; this is the primitive the bank uses."""
        w = np.asarray(omega, dtype=np.float64)
        if np.any(w < 0) or np.any(np.isnan(w)):
            raise ValueError("radial frequency must be non-negative")
        out = np.zeros_like(w)
        if self.kind == "shannon":
            # half-open [pi/2, pi): dyadic copies tile (0, inf) without overlap
            out[(w >= _PI / 2) & (w < _PI)] = 1.0
        elif self.kind == "simoncelli":
            m = (w > _PI / 4) & (w <= _PI)
            out[m] = np.cos(_PI / 2 * np.log2(2 * w[m] / _PI)) ** 2
        elif self.kind == "vow":
            t = math.tan(self.kappa)
            lo = (w >= _PI / 4) & (w < _PI / 2)
            hi = (w >= _PI / 2) & (w <= _PI)
            out[lo] = 0.5 + np.tan(self.kappa * (1 + 2 * np.log2(2 * w[lo] / _PI))) / (2 * t)
            out[hi] = 0.5 - np.tan(self.kappa * (1 + 2 * np.log2(w[hi] / _PI))) / (2 * t)
        else:
            q = self.held_poly
            lo = (w > _PI / 4) & (w <= _PI / 2)
            hi = (w > _PI / 2) & (w <= _PI)
            out[lo] = np.cos(2 * _PI * q(w[lo] / (2 * _PI))) ** 2
            out[hi] = np.sin(2 * _PI * q(w[hi] / (4 * _PI))) ** 2
        np.clip(out, 0.0, 1.0, out=out)
        return out

    def __call__(self, omega):
        return eval_mother(self, omega)


def eval_mother(wavelet: WaveletFunction, omega):
    """Profile value ``h(omega)``; scalar in, float out."""
    h = np.sqrt(wavelet.squared(omega))
    return float(h) if h.ndim == 0 else h


def _lowpass_squared(wavelet: WaveletFunction, omega: np.ndarray) -> np.ndarray:
    w = np.asarray(omega, dtype=np.float64)
    total = np.zeros_like(w)
    active = (w > 0) & (w <= _PI / 2)
    scaled = w.copy()
    # terms vanish once 2**i * w > pi
    while np.any(active):
        scaled = scaled * 2
        total[active] += wavelet.squared(scaled[active])
        active &= scaled <= _PI
    total[w == 0] = 1.0  # limit of the sum as w -> 0
    return np.clip(total, 0.0, 1.0)


def eval_level_lowpass(wavelet: WaveletFunction, omega):
    """Low-pass gain of one pyramid level at radial frequency ``omega``."""
    lp = np.sqrt(_lowpass_squared(wavelet, omega))
    return float(lp) if lp.ndim == 0 else lp


def _subbands_squared(wavelet: WaveletFunction, bands: int, omega: np.ndarray,
                      lp2: np.ndarray) -> list[np.ndarray]:
    hp2 = np.clip(1.0 - lp2, 0.0, None)
    if bands == 1:
        return [hp2]
    w = np.asarray(omega, dtype=np.float64)
    weights = [wavelet.squared(2.0 ** ((bands - b) / bands) * w) for b in range(1, bands + 1)]
    total = sum(weights)
    empty = total == 0
    fallback_high = empty & (lp2 < 0.25)  # LP < 1/2
    fallback_low = empty & ~fallback_high
    safe = np.where(empty, 1.0, total)
    out = []
    for b, wb in enumerate(weights, start=1):
        frac = np.where(empty, 0.0, wb / safe)
        if b == bands:
            frac = np.where(fallback_high, 1.0, frac)
        if b == 1:
            frac = np.where(fallback_low, 1.0, frac)
        out.append(hp2 * frac)
    return out


def eval_subbands(wavelet: WaveletFunction, bands: int, omega) -> np.ndarray:
    """High-pass sub-band gains, band 1 lowest in frequency.

    Returns shape ``(bands,) + shape(omega)``.
    """
    if bands < 1:
        raise ValueError(f"bands must be >= 1, got {bands}")
    w = np.asarray(omega, dtype=np.float64)
    parts = _subbands_squared(wavelet, bands, w, _lowpass_squared(wavelet, w))
    return np.sqrt(np.stack(parts))


@dataclass(frozen=True, eq=False)
class FilterBank:
    """Low-pass and sub-band gains sampled on a Standard-layout grid."""

    dims: tuple[int, ...]
    low_pass: ComplexSpectrum
    sub_bands: tuple[ComplexSpectrum, ...]
    wavelet: WaveletFunction

    @property
    def bands(self) -> int:
        return len(self.sub_bands)


def generate_filter_bank(wavelet: WaveletFunction, dims: Sequence[int], bands: int) -> FilterBank:
    dims = tuple(int(n) for n in dims)
    if any(n < 2 for n in dims):
        raise ValueError(f"filter bank needs every axis >= 2, got {dims}")
    if bands < 1:
        raise ValueError(f"bands must be >= 1, got {bands}")
    r = radial_grid(dims)
    lp2 = _lowpass_squared(wavelet, r)
    hps = _subbands_squared(wavelet, bands, r, lp2)
    low = ComplexSpectrum(dims, np.sqrt(lp2), Layout.STANDARD)
    subs = tuple(ComplexSpectrum(dims, np.sqrt(h), Layout.STANDARD) for h in hps)
    return FilterBank(dims, low, subs, wavelet)


PROFILE_MAX = _PI * 1.05


def emit_profile(wavelet: WaveletFunction, bands: int, n_samples: int) -> np.ndarray:
    """Table with columns ``omega, h, h_1..h_B, lp`` on a uniform grid of ``[0, 1.05 pi]``."""
    if n_samples < 2:
        raise ValueError("need at least two samples")
    omega = np.linspace(0.0, PROFILE_MAX, n_samples)
    h = eval_mother(wavelet, omega)
    subs = eval_subbands(wavelet, bands, omega)
    lp = eval_level_lowpass(wavelet, omega)
    return np.column_stack([omega, h, *subs, lp])


def profile_header(bands: int) -> list[str]:
    return ["omega", "h"] + [f"h_{b}" for b in range(1, bands + 1)] + ["lp"]


def write_profile_csv(table: np.ndarray, path, bands: int):
    with open(Path(path), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(profile_header(bands))
        for row in table:
            writer.writerow([f"{v:.6g}" for v in row])
