"""Fixed-window request limiter keyed by client."""

from __future__ import annotations

import threading
from dataclasses import dataclass


@dataclass(frozen=True)
class Decision:
    allowed: bool
    retry_after: float | None = None


class _Window:
    __slots__ = ("start", "count")

    def __init__(self, start: float, count: int):
        self.start = start
        self.count = count


class FixedWindowLimiter:
    """Per-key fixed windows: at most `capacity` allowed per `window_seconds`.

    Timestamps come from the caller (any monotonic clock), so decisions are
    reproducible in tests. Check-and-increment is atomic per key.
    """

    def __init__(self, capacity: int = 2, window_seconds: float = 60.0):
        if capacity < 1:
            raise ValueError(f"capacity must be at least 1, got {capacity}")
        if window_seconds <= 0:
            raise ValueError(f"window_seconds must be positive, got {window_seconds}")
        self.capacity = capacity
        self.window_seconds = window_seconds
        self._windows: dict[str, _Window] = {}
        self._lock = threading.Lock()

    def check(self, key: str, now: float) -> Decision:
        """Count a request against the key's current window.

        A window opens at the first counted request and expires once
        `window_seconds` have elapsed; denial reports seconds until then.
        """
        with self._lock:
            window = self._windows.get(key)
            if window is None or now - window.start >= self.window_seconds:
                self._windows[key] = _Window(start=now, count=1)
                return Decision(allowed=True)
            if window.count < self.capacity:
                window.count += 1
                return Decision(allowed=True)
            return Decision(
                allowed=False,
                retry_after=window.start + self.window_seconds - now,
            )
