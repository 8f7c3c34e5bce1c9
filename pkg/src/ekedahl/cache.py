"""Content-addressed result cache shared by CLI runs.

Entries are keyed by the SHA-256 of (input fingerprint, subcommand, normalized
arguments, package version) and written atomically, so concurrent processes
never see a half-written file.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

import platformdirs

ENV_VAR = "EKEDAHL_CACHE_DIR"


def cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(platformdirs.user_cache_dir("ekedahl"))


def cache_key(fingerprint: str, subcommand: str, args: dict, version: str) -> str:
    payload = json.dumps(
        {"fingerprint": fingerprint, "subcommand": subcommand, "args": args, "version": version},
        sort_keys=True, separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


class ResultCache:
    def __init__(self, directory: Path | None = None):
        self.directory = Path(directory) if directory is not None else cache_dir()

    def _path(self, key: str) -> Path:
        return self.directory / key[:2] / f"{key}.json"

    def get(self, key: str):
        try:
            return json.loads(self._path(key).read_text())
        except (OSError, json.JSONDecodeError):
            return None

    def put(self, key: str, value) -> None:
        path = self._path(key)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(value, fh, sort_keys=True)
            os.replace(tmp, path)
        except OSError:
            # an unwritable cache only costs recomputation
            pass
