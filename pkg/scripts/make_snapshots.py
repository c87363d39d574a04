"""Regenerate the phase-pipeline regression snapshots.

Run only when a deliberate change to the pipeline is accepted::

    python3 scripts/make_snapshots.py
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from isowave.phase import riesz_wavelet_phase_pipeline
from isowave.synthetic import checkerboard
from isowave.wavelets import WaveletFunction

ROOT = Path(__file__).resolve().parents[1]


@dataclass(frozen=True)
class SnapshotConfig:
    size: int = 128
    square: int = 16
    wavelet: str = "simoncelli"
    levels: tuple[int, ...] = (1, 2, 3, 4)
    bands: tuple[int, ...] = (1, 2, 5)
    k_sigmas: float = 1.0
    out: Path = ROOT / "tests" / "snapshots" / "phase_checkerboard.npz"


def snapshot_key(levels: int, bands: int) -> str:
    return f"L{levels}_B{bands}"


def compute(cfg: SnapshotConfig) -> dict[str, np.ndarray]:
    image = checkerboard((cfg.size, cfg.size), cfg.square)
    wavelet = WaveletFunction(cfg.wavelet)
    return {
        snapshot_key(L, B): riesz_wavelet_phase_pipeline(image, wavelet, L, B, cfg.k_sigmas).data
        for L in cfg.levels for B in cfg.bands
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=SnapshotConfig.out)
    args = parser.parse_args()
    cfg = SnapshotConfig(out=args.out)
    arrays = compute(cfg)
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    np.savez(cfg.out, **arrays)
    print(f"wrote {len(arrays)} snapshots to {cfg.out}")


if __name__ == "__main__":
    main()
