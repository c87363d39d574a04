"""Batch command-line front end.

Exit codes: 0 success, 2 input/output failure, 3 invalid parameter,
4 manifest or coefficient inconsistency.
"""
from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .formats import (
    FormatError,
    ManifestEntry,
    PyramidManifest,
    read_image,
    read_manifest,
    read_ndf,
    write_manifest,
    write_ndf,
    write_pgm,
)
from .frequency import crop, forward_dft, inverse_dft, is_hermitian, pad_to_levels, padded_size
from .image import ComplexSpectrum, RealImage
from .phase import riesz_wavelet_phase_pipeline
from .pyramid import (
    PyramidCoefficients,
    PyramidError,
    admissible_levels,
    forward,
    inverse,
    max_levels,
)
from .riesz import apply_riesz, component_name, generate_riesz_bank
from .tensor import coherency, projection_image, structure_tensor
from .wavelets import KINDS, MAX_HELD_ORDER, WaveletFunction, emit_profile, write_profile_csv

EXIT_OK, EXIT_IO, EXIT_PARAM, EXIT_CONSISTENCY = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class Outputs:
    """Stage files under temporary names; rename all of them only on success."""

    def __init__(self):
        self._staged: list[tuple[Path, Path]] = []

    def path(self, target) -> Path:
        target = Path(target)
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
        os.close(fd)
        self._staged.append((Path(tmp), target))
        return Path(tmp)

    def commit(self):
        for tmp, target in self._staged:
            os.replace(tmp, target)
        self._staged.clear()

    def discard(self):
        for tmp, _ in self._staged:
            tmp.unlink(missing_ok=True)
        self._staged.clear()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self.commit()
        else:
            self.discard()
        return False


# ------------------------------------------------------------------ helpers


def _read_input(path) -> RealImage | ComplexSpectrum:
    try:
        return read_image(path)
    except (OSError, FormatError) as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}") from exc


def _read_real(path) -> RealImage:
    obj = _read_input(path)
    if not isinstance(obj, RealImage):
        raise CliError(EXIT_PARAM, f"{path}: expected a spatial (real) image")
    return obj


def _wavelet(args) -> WaveletFunction:
    try:
        return WaveletFunction(args.wavelet, kappa=args.kappa, held_order=args.held_order)
    except ValueError as exc:
        raise CliError(EXIT_PARAM, str(exc)) from exc


def _check_levels_bands(args, dims):
    top = admissible_levels(dims)
    if not 1 <= args.levels <= top:
        raise CliError(EXIT_PARAM,
                       f"invalid levels {args.levels} for dims {list(dims)}; max levels: {top}")
    if args.bands < 1:
        raise CliError(EXIT_PARAM, f"bands must be >= 1, got {args.bands}")


def _output_format(args, path) -> str:
    if args.format:
        return args.format
    return "pgm" if str(path).lower().endswith(".pgm") else "ndf"


def _write_image(image: RealImage, path, fmt: str, outputs: Outputs, stretch: bool = False):
    tmp = outputs.path(path)
    if fmt == "ndf":
        write_ndf(image, tmp)
        return
    if image.ndim != 2:
        raise CliError(EXIT_PARAM, f"PGM output needs a 2D image, got dims {list(image.dims)}")
    if stretch:
        lo, hi = float(image.data.min()), float(image.data.max())
        scale = 255.0 / (hi - lo) if hi > lo else 0.0
        image = image.with_data((image.data - lo) * scale)
    write_pgm(image, tmp)


# ------------------------------------------------------------------ commands


def cmd_forward(args) -> int:
    image = _read_real(args.input)
    _check_levels_bands(args, image.dims)
    wavelet = _wavelet(args)
    padded = pad_to_levels(image, args.levels)
    coeffs = forward(forward_dft(padded), args.levels, args.bands, wavelet)
    outdir = Path(args.outdir)
    entries = []
    with Outputs() as out:
        for (s, h), d in sorted(coeffs.details.items()):
            name = f"detail_s{s}_b{h}.ndf"
            write_ndf(d, out.path(outdir / name))
            entries.append(ManifestEntry(s, h, name))
        write_ndf(coeffs.approximation, out.path(outdir / "approximation.ndf"))
        manifest = PyramidManifest(
            wavelet_kind=wavelet.kind,
            wavelet_params=wavelet.params,
            levels=args.levels,
            bands=args.bands,
            input_dims=list(image.dims),
            entries=entries,
            approximation_path="approximation.ndf",
        )
        write_manifest(manifest, out.path(outdir / "manifest.json"))
    print(f"wrote {len(entries) + 1} coefficient files and manifest to {outdir}")
    return EXIT_OK


def _load_coefficients(manifest_path) -> tuple[PyramidManifest, PyramidCoefficients]:
    try:
        manifest = read_manifest(manifest_path)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read manifest {manifest_path}: {exc}") from exc
    except FormatError as exc:
        raise CliError(EXIT_CONSISTENCY, f"invalid manifest: {exc}") from exc
    base = Path(manifest_path).parent
    params = manifest.wavelet_params
    try:
        wavelet = WaveletFunction(manifest.wavelet_kind, kappa=params.get("kappa", 0.75),
                                  held_order=params.get("held_order", 0))
    except ValueError as exc:
        raise CliError(EXIT_CONSISTENCY, f"invalid manifest wavelet: {exc}") from exc

    def load(rel):
        path = base / rel
        try:
            obj = read_ndf(path)
        except (OSError, FormatError) as exc:
            raise CliError(EXIT_CONSISTENCY, f"coefficient file {path}: {exc}") from exc
        if not isinstance(obj, ComplexSpectrum):
            raise CliError(EXIT_CONSISTENCY, f"coefficient file {path} is not a spectrum")
        return obj

    padded = tuple(padded_size(n, manifest.levels) for n in manifest.input_dims)
    details = {(e.level, e.band): load(e.path) for e in manifest.entries}
    coeffs = PyramidCoefficients(details, load(manifest.approximation_path), wavelet,
                                 manifest.levels, manifest.bands, padded)
    try:
        coeffs.validate()
    except PyramidError as exc:
        raise CliError(EXIT_CONSISTENCY, f"manifest/coefficient mismatch: {exc}") from exc
    return manifest, coeffs


def cmd_inverse(args) -> int:
    manifest, coeffs = _load_coefficients(args.input)
    image = inverse_dft(inverse(coeffs), tol=None)
    image = crop(image, manifest.input_dims)
    fmt = _output_format(args, args.output)
    with Outputs() as out:
        _write_image(image, args.output, fmt, out)
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_phase(args) -> int:
    image = _read_real(args.input)
    _check_levels_bands(args, image.dims)
    if args.k_sigmas < 0:
        raise CliError(EXIT_PARAM, f"k-sigmas must be >= 0, got {args.k_sigmas}")
    wavelet = _wavelet(args)
    fmt = _output_format(args, args.output)
    if fmt == "pgm" and image.ndim != 2:
        raise CliError(EXIT_PARAM, "PGM output needs a 2D image")
    result, bands = riesz_wavelet_phase_pipeline(image, wavelet, args.levels, args.bands,
                                                 args.k_sigmas, return_bands=True)
    with Outputs() as out:
        _write_image(result, args.output, fmt, out, stretch=True)
        if args.band_dir:
            for (s, h), band in sorted(bands.items()):
                write_ndf(band, out.path(Path(args.band_dir) / f"phase_s{s}_b{h}.ndf"))
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_riesz(args) -> int:
    if args.order < 1:
        raise CliError(EXIT_PARAM, f"order must be >= 1, got {args.order}")
    obj = _read_input(args.input)
    spatial = isinstance(obj, RealImage)
    spectrum = forward_dft(obj) if spatial else obj
    if spectrum.layout.value != "standard":
        raise CliError(EXIT_PARAM, "Riesz input spectrum must use the standard layout")
    bank = generate_riesz_bank(args.order, spectrum.dims)
    outdir = Path(args.outdir)
    with Outputs() as out:
        for n, comp in zip(bank.index_order, apply_riesz(bank, spectrum)):
            result = inverse_dft(comp, tol=None) if spatial else comp
            write_ndf(result, out.path(outdir / f"{component_name(n)}.ndf"))
    print(f"wrote {len(bank)} Riesz components to {outdir}")
    return EXIT_OK


def cmd_structure_tensor(args) -> int:
    if len(args.input) < 2:
        raise CliError(EXIT_PARAM, "structure-tensor needs at least two --input images")
    if not args.sigma > 0:
        raise CliError(EXIT_PARAM, f"sigma must be positive, got {args.sigma}")
    if args.radius < 1:
        raise CliError(EXIT_PARAM, f"radius must be >= 1, got {args.radius}")
    inputs = [_read_real(p) for p in args.input]
    if any(im.dims != inputs[0].dims for im in inputs):
        raise CliError(EXIT_PARAM, "structure-tensor inputs must share dims")
    field = structure_tensor(inputs, args.sigma, args.radius)
    n = len(inputs)
    outdir = Path(args.outdir)
    with Outputs() as out:
        write_ndf(RealImage(field.dims + (n, n + 1), field.matrix), out.path(outdir / "eigen.ndf"))
        write_ndf(coherency(field), out.path(outdir / "coherency.ndf"))
        write_ndf(projection_image(field, inputs), out.path(outdir / "projection.ndf"))
    print(f"wrote eigen.ndf, coherency.ndf, projection.ndf to {outdir}")
    return EXIT_OK


def cmd_profile(args) -> int:
    if args.samples < 2:
        raise CliError(EXIT_PARAM, f"samples must be >= 2, got {args.samples}")
    if args.bands < 1:
        raise CliError(EXIT_PARAM, f"bands must be >= 1, got {args.bands}")
    wavelet = _wavelet(args)
    table = emit_profile(wavelet, args.bands, args.samples)
    with Outputs() as out:
        write_profile_csv(table, out.path(args.output), args.bands)
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_info(args) -> int:
    obj = _read_input(args.input)
    kind = "spectrum" if isinstance(obj, ComplexSpectrum) else "image"
    print(f"type: {kind}")
    print(f"dims: {' '.join(str(n) for n in obj.dims)}")
    print(f"max levels: {max_levels(obj.dims)}")
    if isinstance(obj, ComplexSpectrum):
        print(f"layout: {obj.layout.value}")
        if obj.layout.value == "standard":
            print(f"hermitian: {'yes' if is_hermitian(obj, tol=1e-8) else 'no'}")
    else:
        print(f"range: {obj.data.min():.6g} {obj.data.max():.6g}")
    return EXIT_OK


# ------------------------------------------------------------------ parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(EXIT_PARAM, message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="isowave", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def wavelet_opts(p):
        p.add_argument("--wavelet", choices=KINDS, default="simoncelli")
        p.add_argument("--held-order", type=int, default=0,
                       help=f"Held polynomial order, 0..{MAX_HELD_ORDER}")
        p.add_argument("--kappa", type=float, default=0.75, help="Vow shape parameter")

    def pyramid_opts(p):
        wavelet_opts(p)
        p.add_argument("--levels", type=int, required=True)
        p.add_argument("--bands", type=int, default=1)

    fmt = dict(choices=("pgm", "ndf"), default=None,
               help="output format (default: from the output file extension)")

    p = sub.add_parser("forward", help="decompose an image into pyramid coefficients")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--outdir", required=True)
    pyramid_opts(p)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("inverse", help="reconstruct an image from a manifest")
    p.add_argument("-i", "--input", required=True, help="manifest.json")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("phase", help="Riesz-wavelet local phase analysis")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    pyramid_opts(p)
    p.add_argument("--k-sigmas", type=float, default=1.0)
    p.add_argument("--band-dir", help="also write per-band phase images here")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("riesz", help="Riesz transform components of an image")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=cmd_riesz)

    p = sub.add_parser("structure-tensor", help="structure tensor eigensystem and coherency")
    p.add_argument("-i", "--input", action="append", required=True,
                   help="channel image; repeat for each channel")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=cmd_structure_tensor)

    p = sub.add_parser("profile", help="radial wavelet profile as CSV")
    wavelet_opts(p)
    p.add_argument("--bands", type=int, default=1)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("info", help="print dims, max levels and hermitian status")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"isowave: error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"isowave: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
