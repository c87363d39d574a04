"""File formats: PGM (P2/P5), the NDF raw container and the pyramid manifest.

NDF layout::

    NDF1
    dims 4 4
    dtype c128
    layout standard

    <little-endian payload, row-major, complex as (re, im) pairs>
"""
from __future__ import annotations

import json
import math
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .image import ComplexSpectrum, Layout, RealImage

PathLike = Union[str, os.PathLike]

WAVELET_KINDS = ("vow", "held", "simoncelli", "shannon")


class FormatError(ValueError):
    """Malformed or inconsistent file content."""


# --------------------------------------------------------------------- PGM

_PGM_TOKEN = re.compile(rb"#[^\n\r]*|\S+")


def _pgm_header(raw: bytes) -> tuple[bytes, list[int], int]:
    """Magic, [width, height, maxval] and offset of the first payload byte."""
    tokens: list[bytes] = []
    pos = 0
    while len(tokens) < 4:
        m = _PGM_TOKEN.search(raw, pos)
        if m is None:
            raise FormatError("truncated PGM header")
        pos = m.end()
        if not m.group().startswith(b"#"):
            tokens.append(m.group())
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"not a PGM file (magic {magic!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise FormatError("non-numeric PGM header field") from exc
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise FormatError(f"bad PGM header {width}x{height} maxval {maxval}")
    # exactly one whitespace byte separates the header from binary data
    return magic, [width, height, maxval], pos + 1


def read_pgm(path: PathLike) -> RealImage:
    """Read a grayscale PGM. dims are ``[height, width]``."""
    raw = Path(path).read_bytes()
    magic, (width, height, maxval), offset = _pgm_header(raw)
    n = width * height
    if magic == b"P2":
        values = [v for v in _PGM_TOKEN.findall(raw, offset - 1) if not v.startswith(b"#")]
        if len(values) < n:
            raise FormatError(f"P2 payload has {len(values)} of {n} samples")
        data = np.array([int(v) for v in values[:n]], dtype=np.float64)
    else:
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        need = n * dtype.itemsize
        if len(raw) - offset < need:
            raise FormatError(f"P5 payload has {len(raw) - offset} of {need} bytes")
        data = np.frombuffer(raw, dtype=dtype, count=n, offset=offset).astype(np.float64)
    if data.max(initial=0) > maxval:
        raise FormatError("sample exceeds maxval")
    return RealImage((height, width), data)


def write_pgm(image: RealImage, path: PathLike, maxval: int | None = None, binary: bool = True):
    """Write a 2D image as P5 (or P2 with ``binary=False``).

    Samples are rounded and clipped to ``[0, maxval]``; ``maxval`` defaults to
    255 unless the data needs 16 bits.
    """
    if image.ndim != 2:
        raise FormatError(f"PGM needs a 2D image, got dims {image.dims}")
    values = np.clip(np.rint(image.data), 0, None)
    if maxval is None:
        maxval = 255 if values.max(initial=0) <= 255 else 65535
    values = np.minimum(values, maxval).astype(np.int64)
    height, width = image.dims
    header = f"{'P5' if binary else 'P2'}\n{width} {height}\n{maxval}\n".encode()
    if binary:
        dtype = ">u2" if maxval > 255 else "u1"
        payload = values.astype(dtype).tobytes()
    else:
        payload = "\n".join(" ".join(str(v) for v in row) for row in values).encode() + b"\n"
    Path(path).write_bytes(header + payload)


# --------------------------------------------------------------------- NDF

_DTYPES = {"f64": np.dtype("<f8"), "c128": np.dtype("<c16")}


def write_ndf(obj: RealImage | ComplexSpectrum, path: PathLike):
    """Write a real image (``dtype f64``) or spectrum (``dtype c128``)."""
    if isinstance(obj, RealImage):
        tag, layout = "f64", "spatial"
    elif isinstance(obj, ComplexSpectrum):
        tag, layout = "c128", obj.layout.value
    else:
        raise TypeError(f"cannot write {type(obj).__name__} as NDF")
    header = (
        "NDF1\n"
        f"dims {' '.join(str(n) for n in obj.dims)}\n"
        f"dtype {tag}\n"
        f"layout {layout}\n"
        "\n"
    ).encode("ascii")
    payload = np.ascontiguousarray(obj.data, dtype=_DTYPES[tag]).tobytes()
    Path(path).write_bytes(header + payload)


def read_ndf(path: PathLike) -> RealImage | ComplexSpectrum:
    raw = Path(path).read_bytes()
    lines = raw.split(b"\n", 5)
    if len(lines) < 6 or lines[0] != b"NDF1":
        raise FormatError(f"{path}: not an NDF1 file")
    if lines[4] != b"":
        raise FormatError(f"{path}: header must end with a blank line")
    fields = {}
    for line in lines[1:4]:
        key, _, value = line.decode("ascii", "replace").partition(" ")
        fields[key] = value.strip()
    if set(fields) != {"dims", "dtype", "layout"}:
        raise FormatError(f"{path}: header needs dims, dtype and layout lines")
    try:
        dims = tuple(int(n) for n in fields["dims"].split())
    except ValueError as exc:
        raise FormatError(f"{path}: bad dims line {fields['dims']!r}") from exc
    if not dims or any(n < 1 for n in dims):
        raise FormatError(f"{path}: bad dims {dims}")
    tag = fields["dtype"]
    if tag not in _DTYPES:
        raise FormatError(f"{path}: unknown dtype {tag!r} (expected f64 or c128)")
    dtype = _DTYPES[tag]
    payload = lines[5]
    expected = math.prod(dims) * dtype.itemsize
    if len(payload) != expected:
        raise FormatError(
            f"{path}: payload length {len(payload)} bytes, header requires {expected}"
        )
    data = np.frombuffer(payload, dtype=dtype)
    layout = fields["layout"]
    if tag == "f64":
        if layout != "spatial":
            raise FormatError(f"{path}: real payload with layout {layout!r}")
        return RealImage(dims, data)
    try:
        return ComplexSpectrum(dims, data, Layout(layout))
    except ValueError as exc:
        raise FormatError(f"{path}: unknown layout {layout!r}") from exc


def read_image(path: PathLike) -> RealImage | ComplexSpectrum:
    """Read a PGM or NDF file, dispatching on the magic bytes."""
    with open(path, "rb") as fh:
        magic = fh.read(4)
    if magic == b"NDF1":
        return read_ndf(path)
    if magic[:2] in (b"P2", b"P5"):
        return read_pgm(path)
    raise FormatError(f"{path}: unrecognized file format")


# ---------------------------------------------------------------- manifest


@dataclass
class ManifestEntry:
    level: int
    band: int
    path: str


@dataclass
class PyramidManifest:
    """Index of the files holding one pyramid decomposition.

    Paths are stored as written; relative paths resolve against the manifest's
    own directory.
    """

    wavelet_kind: str
    levels: int
    bands: int
    input_dims: list[int]
    entries: list[ManifestEntry]
    approximation_path: str
    wavelet_params: dict = field(default_factory=dict)
    scale_factor: int = 2

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.wavelet_kind not in WAVELET_KINDS:
            raise FormatError(
                f"unknown wavelet {self.wavelet_kind!r}; supported: {', '.join(WAVELET_KINDS)}"
            )
        for name in ("levels", "bands"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise FormatError(f"{name} must be a positive integer, got {value!r}")
        if self.scale_factor != 2:
            raise FormatError(f"scale_factor must be 2, got {self.scale_factor}")
        if not self.input_dims or any(
            not isinstance(n, int) or n < 1 for n in self.input_dims
        ):
            raise FormatError(f"bad input_dims {self.input_dims!r}")
        if len(self.entries) != self.levels * self.bands:
            raise FormatError(
                f"{len(self.entries)} entries, expected levels*bands = "
                f"{self.levels * self.bands}"
            )
        seen = set()
        for e in self.entries:
            if not (1 <= e.level <= self.levels and 1 <= e.band <= self.bands):
                raise FormatError(f"entry (level {e.level}, band {e.band}) out of range")
            if (e.level, e.band) in seen:
                raise FormatError(f"duplicate entry (level {e.level}, band {e.band})")
            seen.add((e.level, e.band))

    def entry_path(self, level: int, band: int) -> str:
        for e in self.entries:
            if e.level == level and e.band == band:
                return e.path
        raise KeyError((level, band))

    def to_json(self) -> dict:
        return {
            "wavelet": self.wavelet_kind,
            "wavelet_params": self.wavelet_params,
            "levels": self.levels,
            "bands": self.bands,
            "input_dims": list(self.input_dims),
            "scale_factor": self.scale_factor,
            "entries": [
                {"level": e.level, "band": e.band, "path": e.path} for e in self.entries
            ],
            "approximation": self.approximation_path,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PyramidManifest":
        if not isinstance(obj, dict):
            raise FormatError("manifest must be a JSON object")
        required = (
            "wavelet", "wavelet_params", "levels", "bands",
            "input_dims", "scale_factor", "entries", "approximation",
        )
        missing = [k for k in required if k not in obj]
        if missing:
            raise FormatError(f"manifest missing field(s): {', '.join(missing)}")
        try:
            entries = [ManifestEntry(int(e["level"]), int(e["band"]), str(e["path"]))
                       for e in obj["entries"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed manifest entry: {exc}") from exc
        return cls(
            wavelet_kind=obj["wavelet"],
            levels=obj["levels"],
            bands=obj["bands"],
            input_dims=list(obj["input_dims"]),
            entries=entries,
            approximation_path=str(obj["approximation"]),
            wavelet_params=dict(obj["wavelet_params"]),
            scale_factor=obj["scale_factor"],
        )


def write_manifest(manifest: PyramidManifest, path: PathLike):
    manifest.validate()
    Path(path).write_text(json.dumps(manifest.to_json(), indent=2, sort_keys=True) + "\n")


def read_manifest(path: PathLike) -> PyramidManifest:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    return PyramidManifest.from_json(obj)
