"""Text normalization, vocabulary handling, and greedy subword tokenization."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Union

PAD_TOKEN = "[PAD]"
UNK_TOKEN = "[UNK]"
CLS_TOKEN = "[CLS]"
SEP_TOKEN = "[SEP]"
SPECIAL_TOKENS = (PAD_TOKEN, UNK_TOKEN, CLS_TOKEN, SEP_TOKEN)

PAD_ID = 0
UNK_ID = 1
CLS_ID = 2
SEP_ID = 3

CONTINUATION_PREFIX = "##"
DEFAULT_MAX_SEQ_LEN = 128


def normalize(text: str) -> str:
    """NFC-compose, lowercase, and collapse whitespace runs to single spaces."""
    composed = unicodedata.normalize("NFC", text)
    return " ".join(composed.lower().split())


class Vocabulary:
    """Dense token-to-id mapping with the four special tokens pinned to ids 0..3.

    Entries are ordered; the id of a token is its position. Non-initial
    subword pieces are stored with the continuation prefix (e.g. "##nya").
    """

    def __init__(self, tokens: Iterable[str], continuation_prefix: str = CONTINUATION_PREFIX):
        tokens = list(tokens)
        if tokens[:4] != list(SPECIAL_TOKENS):
            raise ValueError(
                f"first four vocabulary entries must be {SPECIAL_TOKENS}, got {tokens[:4]!r}"
            )
        ids: dict[str, int] = {}
        for i, tok in enumerate(tokens):
            if tok == "":
                raise ValueError(f"empty token at id {i}")
            if tok in ids:
                raise ValueError(f"duplicate token {tok!r} at ids {ids[tok]} and {i}")
            ids[tok] = i
        if not continuation_prefix:
            raise ValueError("continuation prefix must be non-empty")
        self._token_to_id = ids
        self._tokens = tokens
        self.continuation_prefix = continuation_prefix

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Vocabulary":
        """Read a vocabulary file: one UTF-8 token per line, line number = id."""
        with open(path, encoding="utf-8") as fh:
            tokens = [line.rstrip("\n") for line in fh]
        while tokens and tokens[-1] == "":
            tokens.pop()
        return cls(tokens)

    @property
    def tokens(self) -> list[str]:
        return list(self._tokens)

    def id_of(self, token: str) -> int:
        return self._token_to_id[token]

    def token_of(self, token_id: int) -> str:
        return self._tokens[token_id]

    def __contains__(self, token: str) -> bool:
        return token in self._token_to_id

    def __len__(self) -> int:
        return len(self._tokens)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vocabulary):
            return NotImplemented
        return (
            self._tokens == other._tokens
            and self.continuation_prefix == other.continuation_prefix
        )

    def __repr__(self) -> str:
        return f"Vocabulary({len(self._tokens)} tokens)"


@dataclass(frozen=True)
class TokenSequence:
    """Parallel token ids and surface strings, wrapped in [CLS]...[SEP]."""

    ids: tuple[int, ...]
    surface: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.ids)


def _split_word(word: str, vocab: Vocabulary) -> list[str] | None:
    """Greedy longest-prefix split of one word; None if no decomposition exists."""
    prefix = vocab.continuation_prefix
    pieces: list[str] = []
    start = 0
    while start < len(word):
        end = len(word)
        found = None
        while start < end:
            piece = word[start:end]
            if start > 0:
                piece = prefix + piece
            if piece in vocab:
                found = piece
                break
            end -= 1
        if found is None:
            return None
        pieces.append(found)
        start = end
    return pieces


def tokenize(text: str, vocab: Vocabulary, max_seq_len: int = DEFAULT_MAX_SEQ_LEN) -> TokenSequence:
    """Split normalized text into subword tokens framed by [CLS] and [SEP].

    Each whitespace-delimited word is decomposed by greedy longest-prefix
    match against the vocabulary; words with no decomposition become [UNK].
    Output is truncated to max_seq_len, always keeping the trailing [SEP].
    """
    if max_seq_len < 2:
        raise ValueError(f"max_seq_len must allow [CLS] and [SEP], got {max_seq_len}")
    surface = [CLS_TOKEN]
    ids = [CLS_ID]
    for word in text.split():
        pieces = _split_word(word, vocab)
        if pieces is None:
            surface.append(UNK_TOKEN)
            ids.append(UNK_ID)
        else:
            surface.extend(pieces)
            ids.extend(vocab.id_of(p) for p in pieces)
    if len(ids) > max_seq_len - 1:
        ids = ids[: max_seq_len - 1]
        surface = surface[: max_seq_len - 1]
    surface.append(SEP_TOKEN)
    ids.append(SEP_ID)
    return TokenSequence(ids=tuple(ids), surface=tuple(surface))
