"""Frequency layouts, the DFT contract, and spectrum resizing.

Conventions
-----------
* Frequencies are in radians per sample, each component in ``(-pi, pi]``.
  In the Standard layout bin ``k`` of an axis of size ``N`` maps to
  ``2*pi*k/N`` for ``k <= N//2`` and ``2*pi*(k - N)/N`` above, so an even
  axis stores the Nyquist bin once, as ``+pi``.
* The forward DFT is unnormalized; the inverse divides by the sample count.
* Shrinking and expanding have unit gain. The Nyquist bin of the shrunk axis
  receives the sum of the two folded bins, and expansion splits it in half,
  so ``shrink(expand(X)) == X`` exactly.
"""
from __future__ import annotations

import math
import os
import warnings
from typing import Sequence

import numpy as np
import scipy.fft

from .image import ComplexSpectrum, Layout, RealImage


class LayoutError(ValueError):
    """Spectrum is not in the layout an operation requires."""


class ImaginaryResidualWarning(RuntimeWarning):
    """Inverse DFT produced a non-negligible imaginary part."""


def fft_workers() -> int:
    """Thread count for the FFT engine, from ``ISOWAVE_THREADS`` (0 = auto)."""
    raw = os.environ.get("ISOWAVE_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"ISOWAVE_THREADS must be an integer, got {raw!r}") from None
    return -1 if n <= 0 else n


def _require(spectrum: ComplexSpectrum, layout: Layout, op: str):
    if spectrum.layout is not layout:
        raise LayoutError(f"{op} needs a {layout.value} spectrum, got {spectrum.layout.value}")


# ------------------------------------------------------------ bin mapping


def axis_frequencies(n: int) -> np.ndarray:
    """Standard-layout frequencies of one axis of size ``n``."""
    k = np.arange(n)
    k = np.where(k <= n // 2, k, k - n)
    # k/n first: exact for dyadic ratios, so pi/2 lands exactly on pi/2
    return 2 * np.pi * (k / n)


def bin_to_frequency(layout: Layout, dims: Sequence[int], bin_index: Sequence[int],
                     spacing: Sequence[float] | None = None,
                     origin: Sequence[float] | None = None) -> np.ndarray:
    """Frequency vector of one bin.

    ``spacing`` and ``origin`` are only used by the Physical layout and default
    to the Standard grid step and zero.
    """
    layout = Layout(layout)
    dims = tuple(int(n) for n in dims)
    bin_index = tuple(int(k) for k in bin_index)
    if len(bin_index) != len(dims) or any(not 0 <= k < n for k, n in zip(bin_index, dims)):
        raise IndexError(f"bin {bin_index} outside dims {dims}")
    if layout is Layout.PHYSICAL:
        spacing = [2 * math.pi / n for n in dims] if spacing is None else spacing
        origin = [0.0] * len(dims) if origin is None else origin
        return np.array([o + k * s for k, s, o in zip(bin_index, spacing, origin)])
    if layout is Layout.SHIFTED:
        bin_index = tuple((k - n // 2) % n for k, n in zip(bin_index, dims))
    return np.array([axis_frequencies(n)[k] for k, n in zip(bin_index, dims)])


def frequency_grids(dims: Sequence[int]) -> list[np.ndarray]:
    """Broadcastable per-axis Standard-layout frequency arrays."""
    dims = tuple(dims)
    grids = []
    for axis, n in enumerate(dims):
        shape = [1] * len(dims)
        shape[axis] = n
        grids.append(axis_frequencies(n).reshape(shape))
    return grids


def radial_frequency(omega) -> float | np.ndarray:
    """Euclidean norm over the last axis (a single vector gives a float)."""
    omega = np.asarray(omega, dtype=np.float64)
    r = np.sqrt(np.sum(omega * omega, axis=-1))
    return float(r) if r.ndim == 0 else r


def radial_grid(dims: Sequence[int]) -> np.ndarray:
    """``radial_frequency`` of every bin of a Standard-layout grid."""
    r2 = sum(g * g for g in frequency_grids(dims))
    return np.sqrt(np.broadcast_to(r2, tuple(dims)))


# ------------------------------------------------------------ layout shifts


def shift_layout(spectrum: ComplexSpectrum) -> ComplexSpectrum:
    """Standard to Shifted: rotate every axis by ``N//2`` (DC to the centre)."""
    _require(spectrum, Layout.STANDARD, "shift_layout")
    return spectrum.with_data(np.fft.fftshift(spectrum.data), Layout.SHIFTED)


def unshift_layout(spectrum: ComplexSpectrum) -> ComplexSpectrum:
    _require(spectrum, Layout.SHIFTED, "unshift_layout")
    return spectrum.with_data(np.fft.ifftshift(spectrum.data), Layout.STANDARD)


# ------------------------------------------------------------ DFT


def forward_dft(image: RealImage) -> ComplexSpectrum:
    """Unnormalized N-dimensional DFT, Standard layout."""
    data = scipy.fft.fftn(image.data, workers=fft_workers())
    return ComplexSpectrum(image.dims, data, Layout.STANDARD)


def inverse_dft(spectrum: ComplexSpectrum, tol: float | None = 1e-8,
                return_residual: bool = False):
    """Inverse DFT scaled by ``1/size``; keeps the real part.

    The largest imaginary magnitude is compared against ``tol`` relative to the
    largest real magnitude and an :class:`ImaginaryResidualWarning` is issued
    when it is exceeded (``tol=None`` disables the check). With
    ``return_residual`` the absolute residual is returned alongside the image.
    """
    _require(spectrum, Layout.STANDARD, "inverse_dft")
    out = scipy.fft.ifftn(spectrum.data, workers=fft_workers())
    residual = float(np.max(np.abs(out.imag), initial=0.0))
    if tol is not None:
        scale = max(float(np.max(np.abs(out.real), initial=0.0)), 1e-300)
        if residual > tol * scale:
            warnings.warn(
                f"inverse DFT imaginary residual {residual:.3g} exceeds tolerance",
                ImaginaryResidualWarning,
                stacklevel=2,
            )
    image = RealImage(spectrum.dims, out.real)
    return (image, residual) if return_residual else image


def hermitian_partner(data: np.ndarray) -> np.ndarray:
    """``data[(-k) mod N]`` on every axis."""
    axes = tuple(range(data.ndim))
    return np.roll(np.flip(data, axis=axes), 1, axis=axes)


def is_hermitian(spectrum: ComplexSpectrum, tol: float = 1e-10) -> bool:
    """True when ``X[k] == conj(X[-k])`` up to ``tol * max|X|``."""
    _require(spectrum, Layout.STANDARD, "is_hermitian")
    x = spectrum.data
    peak = float(np.max(np.abs(x), initial=0.0))
    if peak == 0.0:
        return True
    return bool(np.max(np.abs(x - np.conj(hermitian_partner(x)))) <= tol * peak)


# ------------------------------------------------------------ shrink / expand


def _shrink_axis(a: np.ndarray, axis: int) -> np.ndarray:
    n = a.shape[axis]
    m = n // 2
    a = np.moveaxis(a, axis, 0)
    out = np.empty((m,) + a.shape[1:], dtype=a.dtype)
    if m % 2 == 0:
        q = m // 2
        out[:q] = a[:q]
        out[q] = a[q] + a[n - q]
        out[q + 1 :] = a[q + 1 + m :]
    else:
        q = (m + 1) // 2
        out[:q] = a[:q]
        out[q:] = a[q + m :]
    return np.moveaxis(out, 0, axis)


def _expand_axis(a: np.ndarray, axis: int) -> np.ndarray:
    m = a.shape[axis]
    n = 2 * m
    a = np.moveaxis(a, axis, 0)
    out = np.zeros((n,) + a.shape[1:], dtype=a.dtype)
    if m % 2 == 0:
        q = m // 2
        out[:q] = a[:q]
        out[q] = a[q] / 2
        out[n - q] = a[q] / 2
        out[n - q + 1 :] = a[q + 1 :]
    else:
        q = (m + 1) // 2
        out[:q] = a[:q]
        out[q + m :] = a[q:]
    return np.moveaxis(out, 0, axis)


def shrink_spectrum(spectrum: ComplexSpectrum) -> ComplexSpectrum:
    """Halve every axis by dropping the high-frequency bins (no interpolation)."""
    _require(spectrum, Layout.STANDARD, "shrink_spectrum")
    if any(n % 2 for n in spectrum.dims):
        raise ValueError(f"shrink needs even sizes on every axis, got {spectrum.dims}")
    data = spectrum.data
    for axis in range(data.ndim):
        data = _shrink_axis(data, axis)
    return ComplexSpectrum(data.shape, data, Layout.STANDARD)


def expand_spectrum(spectrum: ComplexSpectrum) -> ComplexSpectrum:
    """Double every axis by inserting zero high-frequency bins."""
    _require(spectrum, Layout.STANDARD, "expand_spectrum")
    data = spectrum.data
    for axis in range(data.ndim):
        data = _expand_axis(data, axis)
    return ComplexSpectrum(data.shape, data, Layout.STANDARD)


# ------------------------------------------------------------ padding


def padded_size(n: int, levels: int) -> int:
    """Smallest ``S >= n`` divisible by ``2**levels`` with ``S / 2**levels >= 2``."""
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    step = 2 ** levels
    return max(-(-n // step), 2) * step


def pad_to_levels(image: RealImage, levels: int) -> RealImage:
    """Zero-pad at the high-index end of each axis so ``levels`` are admissible."""
    dims = tuple(padded_size(n, levels) for n in image.dims)
    if dims == image.dims:
        return image
    out = np.zeros(dims)
    out[tuple(slice(0, n) for n in image.dims)] = image.data
    return RealImage(dims, out, image.spacing, image.origin)


def crop(image: RealImage, dims: Sequence[int]) -> RealImage:
    """Keep the low-index corner of size ``dims``."""
    dims = tuple(dims)
    if len(dims) != image.ndim or any(d > n for d, n in zip(dims, image.dims)):
        raise ValueError(f"cannot crop {image.dims} to {dims}")
    return RealImage(dims, image.data[tuple(slice(0, n) for n in dims)],
                     image.spacing, image.origin)
