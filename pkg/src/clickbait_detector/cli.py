"""Operator entry point: serve, predict, train, eval, export.

Every config field resolves flag > environment variable (CBD_ prefix) >
default. Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import json
import socket
import sys
from pathlib import Path

import click
import uvicorn

from .core.model import DEFAULT_THRESHOLD, classify
from .core.features import DEFAULT_FEATURE_DIM
from .core.serialize import ModelFormatError, load_model, save_model
from .core.text import Vocabulary, normalize
from .core.train import (
    DatasetError,
    InvalidTrainingSetError,
    TrainConfig,
    load_training_file,
    mean_loss,
    train,
)
from .metrics import emit_roc_csv, evaluate
from .ratelimit import FixedWindowLimiter
from .service import ServiceConfig, create_app
from .store import PredictionStore, StoreError

PROG = "clickbait-detector"

DATA_DIR = Path(__file__).resolve().parent / "data"
DEFAULT_VOCAB_PATH = DATA_DIR / "vocab.txt"
SYNTHETIC_CORPUS_PATH = DATA_DIR / "synthetic_headlines.csv"


class RuntimeFailure(click.ClickException):
    exit_code = 2


def _load_model_or_fail(path: str):
    try:
        return load_model(path)
    except (ModelFormatError, OSError) as exc:
        raise RuntimeFailure(f"cannot load model from {path}: {exc}") from exc


def _load_vocab_or_fail(path: str | None) -> Vocabulary:
    target = Path(path) if path else DEFAULT_VOCAB_PATH
    try:
        return Vocabulary.load(target)
    except (ValueError, OSError) as exc:
        raise RuntimeFailure(f"cannot load vocabulary from {target}: {exc}") from exc


def _load_dataset_or_fail(path: str):
    try:
        return load_training_file(path)
    except (DatasetError, OSError) as exc:
        raise RuntimeFailure(f"cannot read dataset {path}: {exc}") from exc


@click.group(name=PROG)
def cli():
    """Clickbait headline detector: train, evaluate, and serve the classifier."""


def _train_options(fn):
    defaults = TrainConfig()
    fn = click.option(
        "--epochs", default=defaults.epochs, show_default=True, type=click.IntRange(min=1)
    )(fn)
    fn = click.option(
        "--learning-rate",
        "--lr",
        "learning_rate",
        default=defaults.learning_rate,
        show_default=True,
        type=click.FloatRange(min=0, min_open=True),
    )(fn)
    fn = click.option(
        "--batch-size", default=defaults.batch_size, show_default=True, type=click.IntRange(min=1)
    )(fn)
    fn = click.option("--seed", default=defaults.seed, show_default=True, type=int)(fn)
    fn = click.option(
        "--vocab",
        "vocab_path",
        default=None,
        help="Vocabulary file (one token per line); defaults to the bundled one.",
    )(fn)
    fn = click.option(
        "--feature-dim",
        default=DEFAULT_FEATURE_DIM,
        show_default=True,
        type=click.IntRange(min=1),
    )(fn)
    fn = click.option(
        "--threshold",
        default=DEFAULT_THRESHOLD,
        show_default=True,
        type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True),
    )(fn)
    return fn


@cli.command()
@click.option("--host", envvar="CBD_HOST", default="127.0.0.1", show_default=True)
@click.option(
    "--port", envvar="CBD_PORT", default=8000, show_default=True, type=click.IntRange(1, 65535)
)
@click.option("--model", "model_path", envvar="CBD_MODEL_PATH", required=True)
@click.option(
    "--store", "store_path", envvar="CBD_STORE_PATH", default="predictions.db", show_default=True
)
@click.option(
    "--allowed-origin",
    "allowed_origins",
    envvar="CBD_ALLOWED_ORIGINS",
    multiple=True,
    default=("*",),
    show_default=True,
    help="Origin allowed for CORS; repeat for several, or '*' for any.",
)
@click.option(
    "--rate-capacity",
    envvar="CBD_RATE_CAPACITY",
    default=2,
    show_default=True,
    type=click.IntRange(min=1),
    help="Allowed /predict requests per client per window.",
)
@click.option(
    "--rate-window",
    "rate_window_seconds",
    envvar="CBD_RATE_WINDOW_SECONDS",
    default=60.0,
    show_default=True,
    type=click.FloatRange(min=1),
)
@click.option(
    "--max-text-len",
    envvar="CBD_MAX_TEXT_LEN",
    default=500,
    show_default=True,
    type=click.IntRange(min=1),
)
@click.option("--trust-proxy", envvar="CBD_TRUST_PROXY", is_flag=True, default=False)
@click.option(
    "--check",
    is_flag=True,
    default=False,
    help="Validate configuration and model, print the resolved config, exit.",
)
def serve(
    host,
    port,
    model_path,
    store_path,
    allowed_origins,
    rate_capacity,
    rate_window_seconds,
    max_text_len,
    trust_proxy,
    check,
):
    """Serve the prediction API until interrupted."""
    model = _load_model_or_fail(model_path)
    if check:
        click.echo(
            json.dumps(
                {
                    "host": host,
                    "port": port,
                    "model": model_path,
                    "store": store_path,
                    "allowed_origins": list(allowed_origins),
                    "rate_capacity": rate_capacity,
                    "rate_window_seconds": rate_window_seconds,
                    "max_text_len": max_text_len,
                    "trust_proxy": trust_proxy,
                }
            )
        )
        return

    config = ServiceConfig(
        allowed_origins=tuple(allowed_origins),
        rate_capacity=rate_capacity,
        rate_window_seconds=rate_window_seconds,
        max_text_len=max_text_len,
        trust_proxy=trust_proxy,
    )
    # Bind before handing off so an occupied port fails with a clean error.
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((host, port))
    except OSError as exc:
        sock.close()
        raise RuntimeFailure(f"cannot bind {host}:{port}: {exc}") from exc

    try:
        store = PredictionStore(store_path)
    except StoreError as exc:
        sock.close()
        raise RuntimeFailure(str(exc)) from exc
    try:
        app = create_app(
            model,
            store,
            config,
            limiter=FixedWindowLimiter(rate_capacity, rate_window_seconds),
        )
        server = uvicorn.Server(uvicorn.Config(app, host=host, port=port, log_level="info"))
        try:
            server.run(sockets=[sock])
        except KeyboardInterrupt:
            # uvicorn finishes its graceful shutdown before replaying the
            # signal; an interrupt here is a normal stop, not a failure.
            pass
    finally:
        store.close()
        sock.close()


@cli.command()
@click.option("--model", "model_path", envvar="CBD_MODEL_PATH", required=True)
@click.argument("text")
def predict(model_path, text):
    """Score one headline and print the prediction as JSON."""
    if not normalize(text):
        raise click.UsageError("text is empty")
    model = _load_model_or_fail(model_path)
    prediction = classify(model, text)
    click.echo(json.dumps({"score": prediction.score, "label": prediction.label.value}))


@cli.command("train")
@click.option("--data", "data_path", required=True, help="CSV (text,label) or JSONL dataset.")
@click.option("--out", "out_path", required=True, help="Where to write the model file.")
@_train_options
def train_cmd(data_path, out_path, epochs, learning_rate, batch_size, seed, vocab_path, feature_dim, threshold):
    """Train a model on a labeled dataset and write it to disk."""
    pairs = _load_dataset_or_fail(data_path)
    vocab = _load_vocab_or_fail(vocab_path)
    config = TrainConfig(
        epochs=epochs, learning_rate=learning_rate, batch_size=batch_size, seed=seed
    )
    try:
        model = train(pairs, config, vocab, feature_dim=feature_dim, threshold=threshold)
    except InvalidTrainingSetError as exc:
        raise RuntimeFailure(str(exc)) from exc
    try:
        save_model(model, out_path)
    except OSError as exc:
        raise RuntimeFailure(f"cannot write model to {out_path}: {exc}") from exc
    click.echo(
        json.dumps(
            {"final_loss": mean_loss(model, pairs), "examples": len(pairs), "model": out_path}
        )
    )


@cli.command("eval")
@click.option("--data", "data_path", required=True, help="CSV (text,label) or JSONL dataset.")
@click.option("--k", default=5, show_default=True, type=click.IntRange(min=2))
@click.option("--fold-seed", "fold_seed", default=0, show_default=True, type=int)
@click.option(
    "--roc-dir",
    default="roc",
    show_default=True,
    help="Directory that receives one fpr,tpr CSV per fold.",
)
@_train_options
def eval_cmd(data_path, k, fold_seed, roc_dir, epochs, learning_rate, batch_size, seed, vocab_path, feature_dim, threshold):
    """Cross-validate on a dataset; print the ROC-AUC report as JSON."""
    pairs = _load_dataset_or_fail(data_path)
    if k > len(pairs):
        raise click.UsageError(f"k={k} exceeds the dataset size ({len(pairs)})")
    vocab = _load_vocab_or_fail(vocab_path)
    config = TrainConfig(
        epochs=epochs, learning_rate=learning_rate, batch_size=batch_size, seed=seed
    )
    try:
        report = evaluate(
            pairs,
            k=k,
            seed=fold_seed,
            train_config=config,
            vocab=vocab,
            feature_dim=feature_dim,
            threshold=threshold,
        )
    except InvalidTrainingSetError as exc:
        raise RuntimeFailure(str(exc)) from exc
    out_dir = Path(roc_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for i, fold in enumerate(report.folds):
            emit_roc_csv(fold, out_dir / f"roc_fold_{i}.csv")
    except OSError as exc:
        raise RuntimeFailure(f"cannot write ROC CSVs to {out_dir}: {exc}") from exc
    click.echo(json.dumps(report.to_dict()))


@cli.command()
@click.option("--store", "store_path", envvar="CBD_STORE_PATH", required=True)
@click.option("--out", "out_path", required=True)
@click.option(
    "--format", "fmt", type=click.Choice(["csv", "jsonl"]), default="csv", show_default=True
)
def export(store_path, out_path, fmt):
    """Export feedback-labeled predictions for retraining; print the row count."""
    if not Path(store_path).exists():
        raise RuntimeFailure(f"store not found at {store_path}")
    try:
        with PredictionStore(store_path) as store:
            count = store.export_training_data(out_path, fmt)
    except (StoreError, OSError) as exc:
        raise RuntimeFailure(str(exc)) from exc
    click.echo(str(count))


def main(argv=None) -> int:
    """Run the CLI; return the process exit code instead of raising SystemExit."""
    try:
        cli.main(args=argv, prog_name=PROG, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        click.echo("Aborted.", err=True)
        return 1
    except Exception as exc:  # last-resort guard so errors never hit stdout
        click.echo(f"Error: {exc!r}", err=True)
        return 2


def entrypoint() -> None:
    sys.exit(main())
