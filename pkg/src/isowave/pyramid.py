"""Forward and inverse isotropic wavelet pyramids in the frequency domain."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .frequency import expand_spectrum, is_hermitian, shrink_spectrum
from .image import ComplexSpectrum, Layout
from .wavelets import FilterBank, WaveletFunction, generate_filter_bank


class PyramidError(ValueError):
    """Invalid pyramid parameters or inconsistent coefficients."""


class NonHermitianInputWarning(RuntimeWarning):
    pass


def max_levels(dims: Sequence[int]) -> int:
    """Largest ``L`` with every axis divisible by ``2**L`` and quotient >= 2."""
    levels = 0
    while all(n % 2 ** (levels + 1) == 0 and n // 2 ** (levels + 1) >= 2 for n in dims):
        levels += 1
    return levels


def level_dims(dims: Sequence[int], level: int) -> tuple[int, ...]:
    """Grid size of the detail coefficients at ``level`` (1 = finest)."""
    return tuple(n // 2 ** (level - 1) for n in dims)


@dataclass(eq=False)
class PyramidCoefficients:
    """Detail spectra ``details[(level, band)]`` plus the coarsest approximation."""

    details: dict[tuple[int, int], ComplexSpectrum]
    approximation: ComplexSpectrum
    wavelet: WaveletFunction
    levels: int
    bands: int
    input_dims: tuple[int, ...]
    banks: dict[int, FilterBank] = field(default_factory=dict)

    def energy(self) -> float:
        return sum(d.energy() for d in self.details.values()) + self.approximation.energy()

    def validate(self):
        for s in range(1, self.levels + 1):
            want = level_dims(self.input_dims, s)
            for h in range(1, self.bands + 1):
                d = self.details.get((s, h))
                if d is None:
                    raise PyramidError(f"missing detail (level {s}, band {h})")
                if d.dims != want:
                    raise PyramidError(
                        f"detail (level {s}, band {h}) has dims {d.dims}, expected {want}"
                    )
        if len(self.details) != self.levels * self.bands:
            raise PyramidError("unexpected extra detail coefficients")
        want = tuple(n // 2 ** self.levels for n in self.input_dims)
        if self.approximation.dims != want:
            raise PyramidError(
                f"approximation has dims {self.approximation.dims}, expected {want}"
            )

    def bank(self, level: int) -> FilterBank:
        """Filter bank of ``level``, generated on demand when not cached."""
        if level in self.banks:
            return self.banks[level]
        return generate_filter_bank(self.wavelet, level_dims(self.input_dims, level), self.bands)

    def map_details(self, fn) -> "PyramidCoefficients":
        """New coefficients with ``fn(level, band, spectrum)`` applied to each detail."""
        details = {key: fn(key[0], key[1], d) for key, d in self.details.items()}
        return PyramidCoefficients(details, self.approximation, self.wavelet, self.levels,
                                   self.bands, self.input_dims, dict(self.banks))


def forward(spectrum: ComplexSpectrum, levels: int, bands: int,
            wavelet: WaveletFunction, check_hermitian: bool = True) -> PyramidCoefficients:
    """Analysis pyramid.

    At each level the details are ``current * HP_b`` at the current size, and
    the next level continues from ``shrink(current * LP)``.
    """
    if spectrum.layout is not Layout.STANDARD:
        raise PyramidError(f"forward needs a standard-layout spectrum, got {spectrum.layout.value}")
    if bands < 1:
        raise PyramidError(f"bands must be >= 1, got {bands}")
    top = max_levels(spectrum.dims)
    if not 1 <= levels <= top:
        raise PyramidError(f"levels must be in 1..{top} for dims {spectrum.dims}, got {levels}")
    if check_hermitian and not is_hermitian(spectrum, tol=1e-8):
        warnings.warn("forward pyramid input is not hermitian", NonHermitianInputWarning,
                      stacklevel=2)
    details = {}
    banks = {}
    current = spectrum.data
    for s in range(1, levels + 1):
        bank = generate_filter_bank(wavelet, current.shape, bands)
        banks[s] = bank
        for h, hp in enumerate(bank.sub_bands, start=1):
            details[(s, h)] = ComplexSpectrum(current.shape, current * hp.data.real)
        low = ComplexSpectrum(current.shape, current * bank.low_pass.data.real)
        current = shrink_spectrum(low).data
    approximation = ComplexSpectrum(current.shape, current)
    return PyramidCoefficients(details, approximation, wavelet, levels, bands,
                               tuple(spectrum.dims), banks)


def inverse(coeffs: PyramidCoefficients, use_cached_banks: bool = True) -> ComplexSpectrum:
    """Synthesis pyramid; exact inverse of :func:`forward` for unmodified coefficients."""
    coeffs.validate()
    current = coeffs.approximation
    for s in range(coeffs.levels, 0, -1):
        if use_cached_banks:
            bank = coeffs.bank(s)
        else:
            bank = generate_filter_bank(coeffs.wavelet, level_dims(coeffs.input_dims, s),
                                        coeffs.bands)
        acc = expand_spectrum(current).data * bank.low_pass.data.real
        for h, hp in enumerate(bank.sub_bands, start=1):
            acc = acc + coeffs.details[(s, h)].data * hp.data.real
        current = ComplexSpectrum(acc.shape, acc)
    return current


def admissible_levels(dims: Sequence[int]) -> int:
    """Deepest pyramid reachable after :func:`~isowave.frequency.pad_to_levels`.

    Largest ``L`` with ``2**(L+1) <= min(dims)``: the unpadded smallest axis
    already spans two samples of the coarsest grid. Equals :func:`max_levels`
    for power-of-two sizes.
    """
    smallest = min(dims)
    return max(smallest.bit_length() - 2, 0)
