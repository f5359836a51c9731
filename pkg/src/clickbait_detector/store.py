"""SQLite-backed record of predictions and feedback verdicts.

Single-writer, multi-reader: one shared connection guarded by a lock, with a
commit after every insert so records are durable before the call returns.
"""

from __future__ import annotations

import csv
import json
import sqlite3
import threading
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import TextIO, Union

from .core.model import Label

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)
_MS = timedelta(milliseconds=1)


class StoreError(Exception):
    """Base error for store operations."""


class ConflictError(StoreError):
    """Record already exists."""


class NotFoundError(StoreError):
    """Referenced record does not exist."""


class StorageError(StoreError):
    """Underlying I/O or database failure."""


def utc_now_ms() -> datetime:
    """Current UTC time truncated to whole milliseconds (stored precision)."""
    return _from_ms(_to_ms(datetime.now(timezone.utc)))


def _to_ms(dt: datetime) -> int:
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return (dt - _EPOCH) // _MS


def _from_ms(ms: int) -> datetime:
    return _EPOCH + ms * _MS


@dataclass(frozen=True)
class PredictionRecord:
    uuid: str
    text: str
    score: float
    label: Label
    ip: str
    created_at: datetime

    def validate(self) -> None:
        if not self.uuid:
            raise ValueError("uuid must be non-empty")
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score must lie in [0, 1], got {self.score}")
        if not isinstance(self.label, Label):
            raise ValueError(f"label must be a Label, got {self.label!r}")
        if not self.ip:
            raise ValueError("ip must be non-empty")


@dataclass(frozen=True)
class FeedbackRecord:
    prediction_uuid: str
    correct: bool
    created_at: datetime


class PredictionStore:
    """Durable prediction/feedback log behind a small storage interface."""

    def __init__(self, path: Union[str, Path]):
        self._path = str(path)
        try:
            self._conn = sqlite3.connect(self._path, check_same_thread=False)
            self._conn.execute("PRAGMA foreign_keys = ON")
            self._init_schema()
        except sqlite3.Error as exc:
            raise StorageError(f"cannot open store at {self._path}: {exc}") from exc
        self._lock = threading.Lock()

    def _init_schema(self) -> None:
        with self._conn:
            self._conn.execute(
                """
                CREATE TABLE IF NOT EXISTS predictions (
                    uuid TEXT PRIMARY KEY,
                    text TEXT NOT NULL,
                    score REAL NOT NULL,
                    label TEXT NOT NULL,
                    ip TEXT NOT NULL,
                    created_at_ms INTEGER NOT NULL
                )
                """
            )
            self._conn.execute(
                """
                CREATE TABLE IF NOT EXISTS feedback (
                    prediction_uuid TEXT PRIMARY KEY
                        REFERENCES predictions(uuid),
                    correct INTEGER NOT NULL,
                    created_at_ms INTEGER NOT NULL
                )
                """
            )

    def insert_request(self, rec: PredictionRecord) -> None:
        rec.validate()
        with self._lock:
            try:
                with self._conn:
                    self._conn.execute(
                        "INSERT INTO predictions (uuid, text, score, label, ip, created_at_ms)"
                        " VALUES (?, ?, ?, ?, ?, ?)",
                        (
                            rec.uuid,
                            rec.text,
                            rec.score,
                            rec.label.value,
                            rec.ip,
                            _to_ms(rec.created_at),
                        ),
                    )
            except sqlite3.IntegrityError as exc:
                raise ConflictError(f"prediction {rec.uuid} already stored") from exc
            except sqlite3.Error as exc:
                raise StorageError(f"insert failed: {exc}") from exc

    def insert_feedback(self, fb: FeedbackRecord) -> None:
        with self._lock:
            try:
                with self._conn:
                    row = self._conn.execute(
                        "SELECT 1 FROM predictions WHERE uuid = ?", (fb.prediction_uuid,)
                    ).fetchone()
                    if row is None:
                        raise NotFoundError(f"no prediction with uuid {fb.prediction_uuid}")
                    self._conn.execute(
                        "INSERT INTO feedback (prediction_uuid, correct, created_at_ms)"
                        " VALUES (?, ?, ?)",
                        (fb.prediction_uuid, int(fb.correct), _to_ms(fb.created_at)),
                    )
            except sqlite3.IntegrityError as exc:
                raise ConflictError(
                    f"feedback for {fb.prediction_uuid} already stored"
                ) from exc
            except sqlite3.Error as exc:
                raise StorageError(f"insert failed: {exc}") from exc

    def get_request(self, uuid: str) -> PredictionRecord | None:
        with self._lock:
            try:
                row = self._conn.execute(
                    "SELECT uuid, text, score, label, ip, created_at_ms"
                    " FROM predictions WHERE uuid = ?",
                    (uuid,),
                ).fetchone()
            except sqlite3.Error as exc:
                raise StorageError(f"read failed: {exc}") from exc
        if row is None:
            return None
        return PredictionRecord(
            uuid=row[0],
            text=row[1],
            score=row[2],
            label=Label(row[3]),
            ip=row[4],
            created_at=_from_ms(row[5]),
        )

    def get_feedback(self, uuid: str) -> FeedbackRecord | None:
        with self._lock:
            try:
                row = self._conn.execute(
                    "SELECT prediction_uuid, correct, created_at_ms"
                    " FROM feedback WHERE prediction_uuid = ?",
                    (uuid,),
                ).fetchone()
            except sqlite3.Error as exc:
                raise StorageError(f"read failed: {exc}") from exc
        if row is None:
            return None
        return FeedbackRecord(
            prediction_uuid=row[0], correct=bool(row[1]), created_at=_from_ms(row[2])
        )

    def export_training_data(self, sink: Union[str, Path, TextIO], format: str = "csv") -> int:
        """Write text,label rows for every prediction that has feedback.

        The exported label is the model's when the verdict confirmed it and
        the flipped one otherwise, so the file feeds retraining directly.
        Rows are ordered by creation time, then uuid. Returns the row count.
        """
        if format not in ("csv", "jsonl"):
            raise ValueError(f"format must be 'csv' or 'jsonl', got {format!r}")
        rows = self._feedback_rows()
        if isinstance(sink, (str, Path)):
            with open(sink, "w", encoding="utf-8", newline="") as fh:
                return self._write_export(rows, fh, format)
        return self._write_export(rows, sink, format)

    def _feedback_rows(self) -> list[tuple[str, int]]:
        with self._lock:
            try:
                raw = self._conn.execute(
                    "SELECT p.text, p.label, f.correct FROM predictions p"
                    " JOIN feedback f ON f.prediction_uuid = p.uuid"
                    " ORDER BY p.created_at_ms, p.uuid"
                ).fetchall()
            except sqlite3.Error as exc:
                raise StorageError(f"export query failed: {exc}") from exc
        rows = []
        for text, label, correct in raw:
            predicted = 1 if label == Label.CLICKBAIT.value else 0
            rows.append((text, predicted if correct else 1 - predicted))
        return rows

    @staticmethod
    def _write_export(rows: list[tuple[str, int]], fh: TextIO, format: str) -> int:
        if format == "csv":
            writer = csv.writer(fh)
            writer.writerow(["text", "label"])
            writer.writerows(rows)
        else:
            for text, label in rows:
                fh.write(json.dumps({"text": text, "label": label}, ensure_ascii=False) + "\n")
        return len(rows)

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    def __enter__(self) -> "PredictionStore":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()
