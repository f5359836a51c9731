"""Hashed bag-of-subwords feature encoding."""

from __future__ import annotations

import numpy as np

from .text import SPECIAL_TOKENS, TokenSequence

DEFAULT_FEATURE_DIM = 1 << 15
DEFAULT_HASH_SEED = 0x9E3779B97F4A7C15

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64_MASK = 0xFFFFFFFFFFFFFFFF

_SPECIALS = frozenset(SPECIAL_TOKENS)


def fnv1a_64(data: bytes) -> int:
    """64-bit FNV-1a hash."""
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _U64_MASK
    return h


def feature_index(token: str, hash_seed: int, feature_dim: int) -> int:
    """Bucket for a token: FNV-1a of its UTF-8 bytes folded with the seed."""
    return (fnv1a_64(token.encode("utf-8")) ^ hash_seed) % feature_dim


def embed(
    tokens: TokenSequence,
    hash_seed: int = DEFAULT_HASH_SEED,
    feature_dim: int = DEFAULT_FEATURE_DIM,
) -> np.ndarray:
    """Count non-special tokens into hashed buckets, then L2-normalize.

    Returns the zero vector when the sequence carries no content tokens.
    """
    if feature_dim < 1:
        raise ValueError(f"feature_dim must be positive, got {feature_dim}")
    vec = np.zeros(feature_dim, dtype=np.float64)
    content = 0
    for token in tokens.surface:
        if token in _SPECIALS:
            continue
        vec[feature_index(token, hash_seed, feature_dim)] += 1.0
        content += 1
    if content:
        vec /= np.linalg.norm(vec)
    return vec
