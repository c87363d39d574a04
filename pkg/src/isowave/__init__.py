"""Frequency-domain isotropic wavelet pyramids, Riesz transforms and local phase."""
from .frequency import (
    bin_to_frequency,
    expand_spectrum,
    forward_dft,
    inverse_dft,
    is_hermitian,
    pad_to_levels,
    radial_frequency,
    shift_layout,
    shrink_spectrum,
    unshift_layout,
)
from .image import ComplexSpectrum, Layout, RealImage
from .phase import monogenic, phase_amplitude, riesz_wavelet_phase_pipeline, soft_threshold_phase
from .pyramid import PyramidCoefficients, forward, inverse, max_levels
from .riesz import generate_riesz_bank, multiindices, steer_coefficients, steer_matrix
from .tensor import coherency, projection_image, structure_tensor
from .wavelets import WaveletFunction, generate_filter_bank

__version__ = "0.1.0"
