"""Small content-addressed JSON cache on disk."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from pathlib import Path

ENV_VAR = "JETCALC_CACHE_DIR"
DEFAULT_DIR = Path.home() / ".cache" / "jetcalc"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else DEFAULT_DIR


class DiskCache:
    """Values are JSON documents stored under ``sha256(key)``.

    Writes go to a temporary file and are renamed into place, so a reader
    sees either nothing or a complete entry.  An existing entry is never
    rewritten.
    """

    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()
        self._lock = threading.Lock()

    def _path(self, key: str) -> Path:
        digest = hashlib.sha256(key.encode()).hexdigest()
        return self.root / digest[:2] / f"{digest}.json"

    def get(self, key: str):
        path = self._path(key)
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except (FileNotFoundError, json.JSONDecodeError):
            return None
        if doc.get("key") != key:
            return None
        return doc["value"]

    def put(self, key: str, value) -> None:
        path = self._path(key)
        with self._lock:
            if path.exists():
                return
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            try:
                with os.fdopen(fd, "w") as fh:
                    json.dump({"key": key, "value": value}, fh, sort_keys=True)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
