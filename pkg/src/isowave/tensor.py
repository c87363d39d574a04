"""Structure tensor over a list of channel images, with coherency and projections."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import ndimage

from .image import RealImage


@dataclass(frozen=True, eq=False)
class EigenField:
    """Per-sample ``(N, N+1)`` matrix: eigenvectors as columns, then eigenvalues.

    Columns are sorted by ascending eigenvalue, so column ``N-1`` is the
    dominant direction.
    """

    dims: tuple[int, ...]
    matrix: np.ndarray

    @property
    def channels(self) -> int:
        return self.matrix.shape[-2]

    @property
    def eigenvectors(self) -> np.ndarray:
        return self.matrix[..., :, :-1]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.matrix[..., :, -1]


def gaussian_window(sigma: float, radius: int) -> np.ndarray:
    """1-D Gaussian truncated at ``radius`` and normalized to unit sum."""
    o = np.arange(-radius, radius + 1, dtype=np.float64)
    g = np.exp(-0.5 * (o / sigma) ** 2)
    return g / g.sum()


def structure_tensor(inputs: Sequence[RealImage], sigma: float, radius: int) -> EigenField:
    """Gaussian-windowed Gram matrix of the inputs, eigendecomposed per sample.

    Samples outside the grid repeat the nearest edge value. Each eigenvector's
    sign is fixed so that its largest-magnitude entry is positive.
    """
    if len(inputs) < 2:
        raise ValueError("structure tensor needs at least two input images")
    dims = inputs[0].dims
    if any(im.dims != dims for im in inputs):
        raise ValueError("structure tensor inputs must share dims")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if int(radius) != radius or radius < 1:
        raise ValueError(f"radius must be an integer >= 1, got {radius}")
    window = gaussian_window(sigma, int(radius))
    n = len(inputs)
    J = np.empty(dims + (n, n))
    for m in range(n):
        for k in range(m, n):
            prod = inputs[m].data * inputs[k].data
            for axis in range(len(dims)):
                prod = ndimage.correlate1d(prod, window, axis=axis, mode="nearest")
            J[..., m, k] = prod
            J[..., k, m] = prod
    values, vectors = np.linalg.eigh(J)
    # deterministic sign: largest-magnitude entry of each eigenvector positive
    lead = np.take_along_axis(vectors, np.argmax(np.abs(vectors), axis=-2)[..., None, :], axis=-2)
    vectors = vectors * np.where(lead < 0, -1.0, 1.0)
    return EigenField(tuple(dims), np.concatenate([vectors, values[..., :, None]], axis=-1))


def coherency(field: EigenField) -> RealImage:
    """``(l_max - mean(rest)) / (l_max + mean(rest))``, 0 where both vanish."""
    lam = np.clip(field.eigenvalues, 0.0, None)
    top = lam[..., -1]
    rest = lam[..., :-1].mean(axis=-1)
    denom = top + rest
    safe = np.where(denom > 0, denom, 1.0)
    chi = np.where(denom > 0, (top - rest) / safe, 0.0)
    return RealImage(field.dims, np.clip(chi, 0.0, 1.0))


def projection_image(field: EigenField, inputs: Sequence[RealImage],
                     eigen_rank: int | None = None) -> RealImage:
    """Inputs projected on the eigenvector of rank ``eigen_rank``.

    Ranks run 1..N in ascending eigenvalue order; the default ``N`` is the
    direction of largest response.
    """
    n = field.channels
    rank = n if eigen_rank is None else int(eigen_rank)
    if not 1 <= rank <= n:
        raise ValueError(f"eigen_rank must be in 1..{n}, got {eigen_rank}")
    if len(inputs) != n or any(im.dims != field.dims for im in inputs):
        raise ValueError("inputs do not match the eigen field")
    u = field.eigenvectors[..., :, rank - 1]
    stack = np.stack([im.data for im in inputs], axis=-1)
    return RealImage(field.dims, np.sum(u * stack, axis=-1))
