"""Binary model file format.

Layout, all little-endian:

    magic            4 bytes  "CBM1"
    format_version   u32
    hidden_width     u32
    feature_dim      u32
    w1               float32[hidden_width * feature_dim], row-major
    b1               float32[hidden_width]
    w2               float32[hidden_width]
    b2               float32
    hash_seed        u64
    threshold        float64
    vocab_size       u32
    entries          vocab_size * (u32 byte length + UTF-8 bytes), id order

The round-trip is bit-exact: load(save(m)) reproduces every weight bit.
"""

from __future__ import annotations

import struct
from pathlib import Path
from typing import BinaryIO, Union

import numpy as np

from .model import HIDDEN_WIDTH, ModelArtifact
from .text import Vocabulary

MAGIC = b"CBM1"
FORMAT_VERSION = 1


class ModelFormatError(Exception):
    """Malformed model file."""


class BadMagicError(ModelFormatError):
    """File does not start with the expected magic bytes."""


class UnsupportedVersionError(ModelFormatError):
    """File declares a format version this code cannot read."""


class TruncatedFileError(ModelFormatError):
    """File ends before the declared content."""


def save_model(model: ModelArtifact, sink: Union[str, Path, BinaryIO]) -> None:
    if isinstance(sink, (str, Path)):
        with open(sink, "wb") as fh:
            _write(model, fh)
    else:
        _write(model, sink)


def load_model(source: Union[str, Path, BinaryIO]) -> ModelArtifact:
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            return _read(fh)
    return _read(source)


def _write(model: ModelArtifact, fh: BinaryIO) -> None:
    fh.write(MAGIC)
    fh.write(struct.pack("<III", model.format_version, HIDDEN_WIDTH, model.feature_dim))
    fh.write(model.w1.astype("<f4", copy=False).tobytes(order="C"))
    fh.write(model.b1.astype("<f4", copy=False).tobytes())
    fh.write(model.w2.astype("<f4", copy=False).tobytes())
    fh.write(struct.pack("<f", model.b2))
    fh.write(struct.pack("<Q", model.hash_seed))
    fh.write(struct.pack("<d", model.threshold))
    tokens = model.vocab.tokens
    fh.write(struct.pack("<I", len(tokens)))
    for token in tokens:
        raw = token.encode("utf-8")
        fh.write(struct.pack("<I", len(raw)))
        fh.write(raw)


def _read_exact(fh: BinaryIO, n: int, what: str) -> bytes:
    data = fh.read(n)
    if len(data) != n:
        raise TruncatedFileError(f"file ends inside {what} (wanted {n} bytes, got {len(data)})")
    return data


def _read(fh: BinaryIO) -> ModelArtifact:
    magic = _read_exact(fh, len(MAGIC), "magic")
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
    version, hidden, feature_dim = struct.unpack("<III", _read_exact(fh, 12, "header"))
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(f"format version {version} not supported (expected {FORMAT_VERSION})")
    if hidden != HIDDEN_WIDTH:
        raise ModelFormatError(f"hidden width {hidden} not supported (expected {HIDDEN_WIDTH})")
    if feature_dim < 1:
        raise ModelFormatError(f"non-positive feature dimension {feature_dim}")

    def read_f32(count: int, what: str) -> np.ndarray:
        raw = _read_exact(fh, 4 * count, what)
        return np.frombuffer(raw, dtype="<f4").copy()

    w1 = read_f32(hidden * feature_dim, "w1").reshape(hidden, feature_dim)
    b1 = read_f32(hidden, "b1")
    w2 = read_f32(hidden, "w2")
    (b2,) = struct.unpack("<f", _read_exact(fh, 4, "b2"))
    (hash_seed,) = struct.unpack("<Q", _read_exact(fh, 8, "hash_seed"))
    (threshold,) = struct.unpack("<d", _read_exact(fh, 8, "threshold"))
    (vocab_size,) = struct.unpack("<I", _read_exact(fh, 4, "vocabulary size"))
    tokens = []
    for i in range(vocab_size):
        (length,) = struct.unpack("<I", _read_exact(fh, 4, f"vocabulary entry {i} length"))
        raw = _read_exact(fh, length, f"vocabulary entry {i}")
        try:
            tokens.append(raw.decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise ModelFormatError(f"vocabulary entry {i} is not valid UTF-8") from exc
    if fh.read(1):
        raise ModelFormatError("trailing data after vocabulary")
    try:
        vocab = Vocabulary(tokens)
        return ModelArtifact(
            w1=w1,
            b1=b1,
            w2=w2,
            b2=b2,
            vocab=vocab,
            hash_seed=hash_seed,
            feature_dim=feature_dim,
            threshold=threshold,
            format_version=version,
        )
    except ValueError as exc:
        raise ModelFormatError(str(exc)) from exc
