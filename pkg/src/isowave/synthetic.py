"""Deterministic synthetic inputs for experiments and regression tests."""
from __future__ import annotations

import numpy as np

from .image import RealImage


def checkerboard(dims=(128, 128), square: int = 16, low: float = 0.0,
                 high: float = 255.0) -> RealImage:
    """Axis-aligned checkerboard with ``square``-sample cells."""
    idx = np.indices(tuple(dims)) // square
    parity = np.sum(idx, axis=0) % 2
    return RealImage.from_array(np.where(parity == 0, low, high).astype(float))


def axis_cosine(dims, k0: int, axis: int = 0) -> RealImage:
    """Cosine with ``k0`` periods along ``axis``, constant along the other axes."""
    n = dims[axis]
    shape = [1] * len(dims)
    shape[axis] = n
    wave = np.cos(2 * np.pi * k0 * np.arange(n) / n).reshape(shape)
    return RealImage.from_array(np.broadcast_to(wave, tuple(dims)))


def oriented_pair(theta: float, dims=(64, 64)) -> tuple[RealImage, RealImage]:
    """Two channels ``(cos t, sin t) * G`` sharing the direction ``theta``.

    ``G`` is a smooth positive field, so the dominant direction of the
    channel vector is ``(cos theta, sin theta)`` at every sample.
    """
    i, j = np.indices(tuple(dims))
    g = 1.5 + np.sin(i / 7.0) * np.cos(j / 5.0)
    return (RealImage.from_array(np.cos(theta) * g), RealImage.from_array(np.sin(theta) * g))
