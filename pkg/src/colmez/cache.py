"""Persistent L-value cache: an append-only JSON-lines file.

One record per line::

    {"key": [modulus, index, tag, precision], "version": "...", "value": [re, im, re', im', err]}

Records written by a different evaluator version are ignored on load.  Floats
round-trip exactly through JSON, so a warm cache returns the same bits a cold
computation would.  A single lock serializes writers inside one process;
``compact`` rewrites the file through an atomic rename.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from pathlib import Path

from .lfunctions import EVALUATOR_VERSION

ENV_VAR = "COLMEZ_CACHE_DIR"
FILENAME = "lvalues.jsonl"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "colmez"


class LValueCache:
    def __init__(self, directory: str | os.PathLike | None = None, version: str = EVALUATOR_VERSION):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.path = self.directory / FILENAME
        self.version = version
        self._lock = threading.Lock()
        self._data: dict[tuple, tuple] = {}
        self.hits = 0
        self.misses = 0
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        with self.path.open() as fh:
            for line in fh:
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    continue  # torn final line from an interrupted writer
                if rec.get("version") != self.version:
                    continue
                self._data[tuple(rec["key"])] = tuple(rec["value"])

    @staticmethod
    def _encode(value) -> list:
        l0, l0p, err = value
        return [l0.real, l0.imag, l0p.real, l0p.imag, err]

    @staticmethod
    def _decode(raw) -> tuple:
        re0, im0, re1, im1, err = raw
        return complex(re0, im0), complex(re1, im1), err

    def get(self, key):
        with self._lock:
            raw = self._data.get(tuple(key))
            if raw is None:
                self.misses += 1
                return None
            self.hits += 1
        return self._decode(raw)

    def put(self, key, value) -> None:
        key = tuple(key)
        raw = tuple(self._encode(value))
        with self._lock:
            if self._data.get(key) == raw:
                return
            self._data[key] = raw
            self.directory.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(json.dumps({"key": list(key), "version": self.version, "value": list(raw)}) + "\n")

    def compact(self) -> None:
        """Rewrite the file with one line per live key, replacing it atomically."""
        with self._lock:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".lvalues.", suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                for key in sorted(self._data, key=repr):
                    rec = {"key": list(key), "version": self.version, "value": list(self._data[key])}
                    fh.write(json.dumps(rec) + "\n")
            os.replace(tmp, self.path)

    def __len__(self) -> int:
        return len(self._data)
