import numpy as np
import pytest

from clickbait_detector.core.model import HIDDEN_WIDTH, ModelArtifact
from clickbait_detector.core.text import SPECIAL_TOKENS, Vocabulary

TINY_TOKENS = list(SPECIAL_TOKENS) + [
    "##!",
    "##nya",
    "berita",
    "bikin",
    "ini",
    "kamu",
    "rahasia",
    "resmi",
    "tahu",
    "terkini",
    "viral",
    "wah",
]


@pytest.fixture(scope="session")
def tiny_vocab() -> Vocabulary:
    return Vocabulary(TINY_TOKENS)


@pytest.fixture
def make_model(tiny_vocab):
    """Factory for small random artifacts with reproducible weights."""

    def build(
        feature_dim: int = 32,
        seed: int = 0,
        threshold: float = 0.5,
        vocab: Vocabulary | None = None,
        scale: float = 0.5,
    ) -> ModelArtifact:
        rng = np.random.default_rng(seed)
        return ModelArtifact(
            w1=rng.uniform(-scale, scale, size=(HIDDEN_WIDTH, feature_dim)),
            b1=rng.uniform(-scale, scale, size=HIDDEN_WIDTH),
            w2=rng.uniform(-scale, scale, size=HIDDEN_WIDTH),
            b2=float(rng.uniform(-scale, scale)),
            vocab=vocab or tiny_vocab,
            hash_seed=rng.integers(0, 1 << 64, dtype=np.uint64).item(),
            feature_dim=feature_dim,
            threshold=threshold,
        )

    return build


class FakeClock:
    """Injectable monotonic clock for limiter and service tests."""

    def __init__(self, now: float = 0.0):
        self.now = now

    def __call__(self) -> float:
        return self.now

    def advance(self, seconds: float) -> None:
        self.now += seconds


@pytest.fixture
def fake_clock() -> FakeClock:
    return FakeClock()
