"""Thread-safe memo table: concurrent reads, idempotent fills."""
from __future__ import annotations

import threading
from typing import Callable, Hashable, TypeVar

T = TypeVar("T")


class Memo:
    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key: Hashable, compute: Callable[[], T]) -> T:
        with self._lock:
            if key in self._data:
                return self._data[key]
        value = compute()
        with self._lock:
            # a racing fill computed the same value; keep the first one
            return self._data.setdefault(key, value)

    def __len__(self) -> int:
        return len(self._data)
