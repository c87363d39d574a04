"""Radial profiles of every wavelet as CSV, with the tiling error of each.

    python3 scripts/profiles.py --outdir results/profiles --bands 3
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from isowave.wavelets import KINDS, MAX_HELD_ORDER, WaveletFunction, emit_profile, write_profile_csv


@dataclass(frozen=True)
class ProfileConfig:
    bands: int = 1
    samples: int = 512
    outdir: Path = Path("results/profiles")


def tiling_error(wavelet: WaveletFunction, samples: int = 10_000) -> float:
    """Largest deviation of the summed squared dilations from 1 on (0, pi]."""
    omega = np.linspace(1e-3, np.pi, samples)
    total = sum(wavelet.squared(2.0 ** i * omega) for i in range(-20, 21))
    return float(np.max(np.abs(total - 1)))


def wavelets() -> list[tuple[str, WaveletFunction]]:
    out = [(k, WaveletFunction(k)) for k in KINDS if k != "held"]
    out += [(f"held{n}", WaveletFunction("held", held_order=n)) for n in range(MAX_HELD_ORDER + 1)]
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=ProfileConfig.outdir)
    parser.add_argument("--bands", type=int, default=ProfileConfig.bands)
    parser.add_argument("--samples", type=int, default=ProfileConfig.samples)
    args = parser.parse_args()
    cfg = ProfileConfig(args.bands, args.samples, args.outdir)
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    for name, w in wavelets():
        path = cfg.outdir / f"{name}_B{cfg.bands}.csv"
        write_profile_csv(emit_profile(w, cfg.bands, cfg.samples), path, cfg.bands)
        print(f"{name:10s} tiling error {tiling_error(w):.2e} -> {path}")


if __name__ == "__main__":
    main()
