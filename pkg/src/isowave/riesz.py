"""Generalized Riesz transform of order N and its steering matrices.

Component ``n`` (a multiindex with ``|n| = N``) has frequency response

    (-j)**N * sqrt(N! / n!) * w**n / |w|**N

and is zero at DC. The ``sqrt(N!/n!)`` weights make the squared responses sum
to one at every non-zero frequency (multinomial theorem).
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .frequency import frequency_grids
from .image import ComplexSpectrum, Layout

MultiIndex = tuple[int, ...]


def riesz_count(order: int, dim: int) -> int:
    """Number of components ``(N+d-1)! / ((d-1)! N!)``."""
    return math.comb(order + dim - 1, dim - 1)


def multiindices(order: int, dim: int) -> list[MultiIndex]:
    """All ``dim``-tuples of non-negative integers summing to ``order``.

    Ordered descending lexicographically, e.g. ``(2,0), (1,1), (0,2)``.
    """
    if order < 0 or dim < 1:
        raise ValueError(f"need order >= 0 and dim >= 1, got ({order}, {dim})")
    if dim == 1:
        return [(order,)]
    return [(first,) + rest
            for first in range(order, -1, -1)
            for rest in multiindices(order - first, dim - 1)]


def _weight(n: Sequence[int]) -> float:
    return math.sqrt(math.factorial(sum(n)) / math.prod(math.factorial(k) for k in n))


def eval_riesz_component(n: Sequence[int], omega) -> complex | np.ndarray:
    """Response of component ``n`` at frequency ``omega`` (last axis = dimension)."""
    n = tuple(int(k) for k in n)
    w = np.asarray(omega, dtype=np.float64)
    if w.shape[-1] != len(n):
        raise ValueError(f"multiindex {n} does not match frequency dimension {w.shape[-1]}")
    order = sum(n)
    norm = np.sqrt(np.sum(w * w, axis=-1))
    mono = np.prod(w ** np.array(n), axis=-1)
    safe = np.where(norm == 0, 1.0, norm)
    val = np.where(norm == 0, 0.0, _weight(n) * mono / safe ** order) * (-1j) ** order
    return complex(val) if val.ndim == 0 else val


@dataclass(frozen=True, eq=False)
class RieszBank:
    order: int
    dims: tuple[int, ...]
    components: tuple[ComplexSpectrum, ...]
    index_order: tuple[MultiIndex, ...]

    def __len__(self):
        return len(self.components)


def generate_riesz_bank(order: int, dims: Sequence[int]) -> RieszBank:
    """Sample every order-``order`` component on a Standard-layout grid."""
    dims = tuple(int(n) for n in dims)
    grids = frequency_grids(dims)
    r = np.sqrt(sum(g * g for g in grids))
    safe = np.where(r == 0, 1.0, r)
    unit = [np.broadcast_to(g / safe, dims) for g in grids]
    phase = (-1j) ** order
    comps = []
    indices = multiindices(order, len(dims))
    for n in indices:
        resp = np.ones(dims)
        for u, k in zip(unit, n):
            if k:
                resp = resp * u ** k
        resp = np.where(r == 0, 0.0, phase * _weight(n) * resp)
        comps.append(ComplexSpectrum(dims, resp, Layout.STANDARD))
    return RieszBank(order, dims, tuple(comps), tuple(indices))


def apply_riesz(bank: RieszBank, spectrum: ComplexSpectrum) -> list[ComplexSpectrum]:
    if spectrum.dims != bank.dims:
        raise ValueError(f"bank dims {bank.dims} do not match spectrum dims {spectrum.dims}")
    if spectrum.layout is not Layout.STANDARD:
        raise ValueError("apply_riesz needs a standard-layout spectrum")
    return [ComplexSpectrum(spectrum.dims, spectrum.data * c.data) for c in bank.components]


def component_name(n: Sequence[int]) -> str:
    """File stem for a component, e.g. ``riesz_n2-0-1``."""
    return "riesz_n" + "-".join(str(k) for k in n)


# ------------------------------------------------------------------ steering


@dataclass(frozen=True, eq=False)
class SteerMatrix:
    order: int
    dim: int
    rotation: np.ndarray
    matrix: np.ndarray

    @property
    def index_order(self) -> list[MultiIndex]:
        return multiindices(self.order, self.dim)


def _poly_mul(p: dict, q: dict) -> dict:
    out = defaultdict(float)
    for ea, ca in p.items():
        for eb, cb in q.items():
            out[tuple(a + b for a, b in zip(ea, eb))] += ca * cb
    return out


def steer_matrix(rotation, order: int) -> SteerMatrix:
    """Matrix ``S`` with ``Y(R^T u) = S @ Y(u)`` for the weighted monomials
    ``Y_n(u) = sqrt(N!/n!) u**n``.

    For ``order == 1`` this is ``R^T``. Composition reverses order:
    ``S(R1 @ R2) == S(R2) @ S(R1)``.
    """
    R = np.asarray(rotation, dtype=np.float64)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise ValueError(f"rotation must be square, got shape {R.shape}")
    d = R.shape[0]
    if np.linalg.norm(R.T @ R - np.eye(d)) >= 1e-8:
        raise ValueError("rotation matrix is not orthogonal")
    indices = multiindices(order, d)
    pos = {n: i for i, n in enumerate(indices)}
    Rt = R.T
    # (R^T u)_i as a linear form in u
    forms = [{tuple(int(j == k) for k in range(d)): Rt[i, j] for j in range(d)} for i in range(d)]
    S = np.zeros((len(indices), len(indices)))
    for row, n in enumerate(indices):
        poly = {(0,) * d: 1.0}
        for i, k in enumerate(n):
            for _ in range(k):
                poly = _poly_mul(poly, forms[i])
        for m, c in poly.items():
            S[row, pos[m]] += c * _weight(n) / _weight(m)
    return SteerMatrix(order, d, R.copy(), S)


def steer_coefficients(steer: SteerMatrix | np.ndarray, values):
    """Apply ``S`` to a component vector, or to a stack of ``M`` component images.

    ``values`` has the component axis first: shape ``(M,)`` or ``(M, *dims)``.
    """
    S = steer.matrix if isinstance(steer, SteerMatrix) else np.asarray(steer)
    v = np.asarray(values)
    if v.shape[0] != S.shape[1]:
        raise ValueError(f"expected {S.shape[1]} components, got {v.shape[0]}")
    return np.tensordot(S, v, axes=1)
