"""Persistent memo of maximum triple packing numbers keyed by canonical graph6.

File format: one ``<canonical-graph6>\\t<value>`` line per entry, UTF-8,
sorted by key when flushed.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path

ENV_VAR = "KAPPA3_CACHE"


class CacheConflict(RuntimeError):
    """A key was stored twice with different values."""


class CacheFormatError(ValueError):
    pass


class Kappa3Cache:
    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self._data: dict[str, int] = {}
        self._lock = threading.Lock()
        if self.path is not None and self.path.exists():
            self.load(self.path)

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: str) -> bool:
        return key in self._data

    def items(self) -> list[tuple[str, int]]:
        return sorted(self._data.items())

    def get(self, key: str) -> int | None:
        return self._data.get(key)

    def put(self, key: str, value: int) -> None:
        with self._lock:
            old = self._data.setdefault(key, value)
        if old != value:
            raise CacheConflict(f"{key}: cached {old}, new value {value}")

    def load(self, path: str | os.PathLike) -> None:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                try:
                    key, value = line.split("\t")
                    parsed = int(value)
                except ValueError as exc:
                    raise CacheFormatError(f"{path}:{lineno}: malformed cache line") from exc
                self.put(key, parsed)

    def flush(self, path: str | os.PathLike | None = None) -> None:
        target = Path(path) if path is not None else self.path
        if target is None:
            raise ValueError("no cache path given")
        tmp = target.with_name(target.name + ".tmp")
        with self._lock:
            rows = sorted(self._data.items())
        with open(tmp, "w", encoding="utf-8") as fh:
            for key, value in rows:
                fh.write(f"{key}\t{value}\n")
        os.replace(tmp, target)


def default_cache_path() -> str | None:
    return os.environ.get(ENV_VAR) or None
