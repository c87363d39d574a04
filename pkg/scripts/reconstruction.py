"""Perfect-reconstruction and energy errors over a grid of pyramid configurations.

    python3 scripts/reconstruction.py --size 64 --ndim 2
"""
from __future__ import annotations

import argparse
import itertools
import time
from dataclasses import dataclass

import numpy as np

from isowave.frequency import forward_dft, inverse_dft
from isowave.image import RealImage
from isowave.pyramid import admissible_levels, forward, inverse
from isowave.wavelets import KINDS, WaveletFunction


@dataclass(frozen=True)
class ReconstructionConfig:
    size: int = 64
    ndim: int = 2
    bands: tuple[int, ...] = (1, 2, 5)
    seed: int = 0


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=ReconstructionConfig.size)
    parser.add_argument("--ndim", type=int, default=ReconstructionConfig.ndim)
    parser.add_argument("--seed", type=int, default=ReconstructionConfig.seed)
    args = parser.parse_args()
    cfg = ReconstructionConfig(size=args.size, ndim=args.ndim, seed=args.seed)

    x = np.random.default_rng(cfg.seed).standard_normal((cfg.size,) * cfg.ndim)
    X = forward_dft(RealImage.from_array(x))
    top = admissible_levels(X.dims)
    print("wavelet     levels bands  recon/range   energy rel    seconds")
    for kind, levels, bands in itertools.product(KINDS, range(1, top + 1), cfg.bands):
        start = time.perf_counter()
        coeffs = forward(X, levels, bands, WaveletFunction(kind))
        y = inverse_dft(inverse(coeffs)).data
        seconds = time.perf_counter() - start
        recon = np.max(np.abs(y - x)) / np.ptp(x)
        energy = abs(coeffs.energy() - X.energy()) / X.energy()
        print(f"{kind:11s} {levels:6d} {bands:5d}  {recon:11.2e}  {energy:11.2e}  {seconds:8.4f}")


if __name__ == "__main__":
    main()
