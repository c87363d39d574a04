"""N-dimensional real images and complex spectra.

Both containers hold a flat row-major buffer (axis 0 slowest) plus per-axis
metadata. They are immutable: the backing arrays are flagged read-only on
construction and every operation returns a new object.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class Layout(enum.Enum):
    """Storage order of frequency bins."""

    STANDARD = "standard"
    SHIFTED = "shifted"
    PHYSICAL = "physical"


def _as_dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(n) for n in dims)
    if not dims:
        raise ValueError("at least one axis is required")
    if any(n < 1 for n in dims):
        raise ValueError(f"all dims must be >= 1, got {dims}")
    return dims


def _frozen(data: np.ndarray, dtype, dims: tuple[int, ...]) -> np.ndarray:
    arr = np.array(data, dtype=dtype, order="C", copy=True)
    if arr.size != math.prod(dims):
        raise ValueError(
            f"data has {arr.size} samples but dims {dims} require {math.prod(dims)}"
        )
    arr = arr.reshape(dims)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class RealImage:
    """Grid of 64-bit real samples with spatial metadata.

    ``data`` accepts anything array-like; a flat buffer is reshaped to ``dims``.
    """

    dims: tuple[int, ...]
    data: np.ndarray
    spacing: tuple[float, ...] = field(default=())
    origin: tuple[float, ...] = field(default=())

    def __post_init__(self):
        dims = _as_dims(self.dims)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "data", _frozen(self.data, np.float64, dims))
        spacing = tuple(float(s) for s in self.spacing) or (1.0,) * len(dims)
        origin = tuple(float(o) for o in self.origin) or (0.0,) * len(dims)
        if len(spacing) != len(dims) or len(origin) != len(dims):
            raise ValueError("spacing and origin need one entry per axis")
        if any(s <= 0 for s in spacing):
            raise ValueError(f"spacing must be positive, got {spacing}")
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "origin", origin)

    @classmethod
    def from_array(cls, array, **meta) -> "RealImage":
        array = np.asarray(array)
        return cls(array.shape, array, **meta)

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return self.data.size

    def with_data(self, array) -> "RealImage":
        """Same metadata, new samples (shape may change)."""
        array = np.asarray(array)
        if array.shape == self.dims:
            return RealImage(self.dims, array, self.spacing, self.origin)
        return RealImage(array.shape, array, origin=self.origin, spacing=self.spacing)


@dataclass(frozen=True, eq=False)
class ComplexSpectrum:
    """Grid of complex samples tagged with a frequency layout.

    For Standard and Shifted layouts the frequency spacing is always
    ``2*pi/dims[i]`` and is derived, not stored by the caller. Shifted
    spectra carry the frequency of bin 0 as their origin.
    """

    dims: tuple[int, ...]
    data: np.ndarray
    layout: Layout = Layout.STANDARD
    frequency_spacing: tuple[float, ...] = field(default=())
    frequency_origin: tuple[float, ...] = field(default=())

    def __post_init__(self):
        dims = _as_dims(self.dims)
        layout = Layout(self.layout)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "layout", layout)
        object.__setattr__(self, "data", _frozen(self.data, np.complex128, dims))
        if layout is Layout.PHYSICAL:
            spacing = tuple(float(s) for s in self.frequency_spacing) or tuple(
                2 * math.pi / n for n in dims
            )
            origin = tuple(float(o) for o in self.frequency_origin) or (0.0,) * len(dims)
            if len(spacing) != len(dims) or len(origin) != len(dims):
                raise ValueError("frequency metadata needs one entry per axis")
        else:
            spacing = tuple(2 * math.pi / n for n in dims)
            if layout is Layout.STANDARD:
                origin = (0.0,) * len(dims)
            else:
                origin = tuple(-2 * math.pi * (n // 2) / n for n in dims)
        object.__setattr__(self, "frequency_spacing", spacing)
        object.__setattr__(self, "frequency_origin", origin)

    @classmethod
    def from_array(cls, array, layout: Layout = Layout.STANDARD, **meta) -> "ComplexSpectrum":
        array = np.asarray(array)
        return cls(array.shape, array, layout, **meta)

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return self.data.size

    def with_data(self, array, layout: Layout | None = None) -> "ComplexSpectrum":
        array = np.asarray(array)
        layout = self.layout if layout is None else layout
        if layout is Layout.PHYSICAL:
            return ComplexSpectrum(
                array.shape, array, layout, self.frequency_spacing, self.frequency_origin
            )
        return ComplexSpectrum(array.shape, array, layout)

    def energy(self) -> float:
        """Sum of squared magnitudes over all bins."""
        return float(np.sum(np.abs(self.data) ** 2))


def coords_of(index: int, dims: Sequence[int]) -> tuple[int, ...]:
    """Row-major linear index to per-axis coordinates."""
    dims = _as_dims(dims)
    if not 0 <= index < math.prod(dims):
        raise IndexError(f"linear index {index} outside dims {dims}")
    return tuple(int(c) for c in np.unravel_index(index, dims))


def index_of(coords: Sequence[int], dims: Sequence[int]) -> int:
    """Per-axis coordinates to row-major linear index."""
    dims = _as_dims(dims)
    if len(coords) != len(dims) or any(not 0 <= c < n for c, n in zip(coords, dims)):
        raise IndexError(f"coordinates {tuple(coords)} outside dims {dims}")
    return int(np.ravel_multi_index(tuple(coords), dims))
