import numpy as np
import pytest

from clickbait_detector.cli import SYNTHETIC_CORPUS_PATH
from clickbait_detector.core.model import HIDDEN_WIDTH, Label, classify
from clickbait_detector.core.train import (
    INIT_SCALE,
    DatasetError,
    InvalidTrainingSetError,
    TrainConfig,
    load_training_file,
    mean_loss,
    train,
)

SEPARABLE = [("wah kamu", 1), ("berita resmi", 0)]


class TestTrainConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [{"epochs": 0}, {"learning_rate": 0.0}, {"learning_rate": -1.0}, {"batch_size": 0}],
    )
    def test_rejects_nonpositive_hyperparameters(self, kwargs):
        with pytest.raises(ValueError):
            TrainConfig(**kwargs)

    def test_defaults(self):
        config = TrainConfig()
        assert config.epochs == 30
        assert config.batch_size == 16


class TestTrain:
    def test_deterministic_bit_identical(self, tiny_vocab):
        config = TrainConfig(epochs=3, seed=11)
        a = train(SEPARABLE, config, tiny_vocab, feature_dim=64)
        b = train(SEPARABLE, config, tiny_vocab, feature_dim=64)
        assert a == b

    def test_seed_changes_weights(self, tiny_vocab):
        a = train(SEPARABLE, TrainConfig(epochs=1, seed=0), tiny_vocab, feature_dim=64)
        b = train(SEPARABLE, TrainConfig(epochs=1, seed=1), tiny_vocab, feature_dim=64)
        assert a != b

    def test_separable_pair_reaches_low_loss(self, tiny_vocab):
        config = TrainConfig(epochs=200, learning_rate=0.1, seed=0)
        model = train(SEPARABLE, config, tiny_vocab, feature_dim=64)
        assert mean_loss(model, SEPARABLE) < 0.1
        assert classify(model, "wah kamu").label is Label.CLICKBAIT
        assert classify(model, "berita resmi").label is Label.NON_CLICKBAIT

    def test_initialization_contract(self, tiny_vocab):
        # a vanishing learning rate keeps the weights at their initial values
        # (up to one ~1e-12-scaled update; float32 absorbs it for the uniform
        # draws, and the zero-born biases stay within machine dust of zero)
        feature_dim = 32
        seed = 5
        model = train(
            SEPARABLE,
            TrainConfig(epochs=1, learning_rate=1e-12, seed=seed),
            tiny_vocab,
            feature_dim=feature_dim,
        )
        rng = np.random.default_rng(seed)
        expected_w1 = rng.uniform(-INIT_SCALE, INIT_SCALE, size=(HIDDEN_WIDTH, feature_dim))
        expected_w2 = rng.uniform(-INIT_SCALE, INIT_SCALE, size=HIDDEN_WIDTH)
        assert np.array_equal(model.w1, expected_w1.astype(np.float32))
        assert np.array_equal(model.w2, expected_w2.astype(np.float32))
        assert np.abs(model.b1).max() <= 1e-9
        assert abs(model.b2) <= 1e-9

    def test_empty_data_rejected(self, tiny_vocab):
        with pytest.raises(InvalidTrainingSetError):
            train([], TrainConfig(), tiny_vocab)

    def test_single_class_rejected(self, tiny_vocab):
        with pytest.raises(InvalidTrainingSetError):
            train([("wah", 1), ("kamu", 1)], TrainConfig(), tiny_vocab, feature_dim=16)

    def test_bad_label_rejected(self, tiny_vocab):
        with pytest.raises(InvalidTrainingSetError):
            train([("wah", 2), ("kamu", 0)], TrainConfig(), tiny_vocab, feature_dim=16)

    def test_model_carries_encoder_parameters(self, tiny_vocab):
        model = train(
            SEPARABLE,
            TrainConfig(epochs=1),
            tiny_vocab,
            hash_seed=123,
            feature_dim=64,
            threshold=0.25,
        )
        assert model.hash_seed == 123
        assert model.feature_dim == 64
        assert model.threshold == 0.25
        assert model.vocab == tiny_vocab

    def test_held_out_clickbait_headline_classifies_clickbait(self):
        rows = load_training_file(SYNTHETIC_CORPUS_PATH)
        from clickbait_detector.core.text import Vocabulary
        from clickbait_detector.cli import DEFAULT_VOCAB_PATH

        vocab = Vocabulary.load(DEFAULT_VOCAB_PATH)
        held_out = next(pair for pair in rows if pair[1] == 1)
        rest = [pair for pair in rows if pair != held_out]
        model = train(rest, TrainConfig(epochs=10), vocab, feature_dim=2048)
        assert classify(model, held_out[0]).label is Label.CLICKBAIT


class TestMeanLoss:
    def test_empty_rejected(self, tiny_vocab, make_model):
        with pytest.raises(InvalidTrainingSetError):
            mean_loss(make_model(), [])


class TestLoadTrainingFile:
    def test_csv(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text('text,label\n"wah, kamu",1\nberita resmi,0\n', encoding="utf-8")
        assert load_training_file(path) == [("wah, kamu", 1), ("berita resmi", 0)]

    def test_csv_extra_columns_ignored(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("text,label,source\nwah,1,x\nberita,0,y\n", encoding="utf-8")
        assert load_training_file(path) == [("wah", 1), ("berita", 0)]

    def test_csv_missing_header_rejected(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("headline,tag\nwah,1\n", encoding="utf-8")
        with pytest.raises(DatasetError):
            load_training_file(path)

    def test_csv_bad_label_rejected(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("text,label\nwah,maybe\n", encoding="utf-8")
        with pytest.raises(DatasetError):
            load_training_file(path)

    def test_jsonl(self, tmp_path):
        path = tmp_path / "data.jsonl"
        path.write_text(
            '{"text": "wah kamu", "label": 1}\n\n{"text": "berita", "label": 0}\n',
            encoding="utf-8",
        )
        assert load_training_file(path) == [("wah kamu", 1), ("berita", 0)]

    def test_jsonl_bad_json_rejected(self, tmp_path):
        path = tmp_path / "data.jsonl"
        path.write_text('{"text": "wah", "label": 1}\nnot json\n', encoding="utf-8")
        with pytest.raises(DatasetError):
            load_training_file(path)

    def test_jsonl_missing_field_rejected(self, tmp_path):
        path = tmp_path / "data.jsonl"
        path.write_text('{"text": "wah"}\n', encoding="utf-8")
        with pytest.raises(DatasetError):
            load_training_file(path)

    def test_jsonl_non_string_text_rejected(self, tmp_path):
        path = tmp_path / "data.jsonl"
        path.write_text('{"text": 5, "label": 1}\n', encoding="utf-8")
        with pytest.raises(DatasetError):
            load_training_file(path)

    def test_bundled_corpus_loads_balanced(self):
        rows = load_training_file(SYNTHETIC_CORPUS_PATH)
        assert len(rows) == 200
        assert sum(label for _, label in rows) == 100
