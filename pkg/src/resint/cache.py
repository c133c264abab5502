"""Content-addressed on-disk cache for expensive ideal operations.

Entries are small JSON files named by the SHA-256 of a canonical key.  Writes
go to a temporary file in the same directory followed by ``os.replace``, so
concurrent processes never observe a partial entry.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Optional

CACHE_FORMAT = 1


def default_dir() -> Path:
    env = os.environ.get("RESINT_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "resint"


def key_for(ring, ideal_parts, order: str, operation: str) -> str:
    """Hash of (ring, ideal data, order, operation).  ``ideal_parts`` is any JSON-able value."""
    payload = {
        "format": CACHE_FORMAT,
        "ring": {"names": list(ring.names), "characteristic": ring.characteristic,
                 "weights": list(ring.weights)},
        "ideal": ideal_parts,
        "order": order,
        "operation": operation,
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


class DiskCache:
    def __init__(self, directory: Optional[Path] = None, enabled: bool = True):
        self.directory = Path(directory) if directory is not None else default_dir()
        self.enabled = enabled
        self.hits = []
        self.misses = []

    def _path(self, key: str) -> Path:
        return self.directory / key[:2] / f"{key}.json"

    def get(self, key: str, label: str = ""):
        if not self.enabled:
            return None
        try:
            with open(self._path(key), encoding="utf-8") as fh:
                value = json.load(fh)
        except (OSError, ValueError):
            self.misses.append(label or key)
            return None
        self.hits.append(label or key)
        return value

    def put(self, key: str, value) -> None:
        if not self.enabled:
            return
        path = self._path(key)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(value, fh, sort_keys=True)
            os.replace(tmp, path)
        except OSError:
            # an unwritable cache only costs recomputation
            try:
                os.unlink(tmp)
            except (OSError, UnboundLocalError):
                pass

    def summary(self) -> dict:
        return {"enabled": self.enabled, "hits": sorted(self.hits), "misses": sorted(self.misses)}
