"""Content-addressed on-disk cache for constructed modules."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .root_data import RootSystem, format_system, format_weight

ENV_VAR = "ARTIFACT_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "artifact"


class ModuleCache:
    """Files named by the hash of (kind, canonical key, version); stale versions are ignored."""

    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()

    def _path(self, kind: str, key: str) -> Path:
        digest = hashlib.sha256(f"{kind}\0{key}\0{__version__}".encode()).hexdigest()
        return self.root / kind / f"{digest}.json"

    def load(self, kind: str, key: str) -> str | None:
        p = self._path(kind, key)
        try:
            text = p.read_text()
        except OSError:
            return None
        try:
            head = json.loads(text)
        except ValueError:
            return None
        if not isinstance(head, dict) or head.get("version") != __version__ or head.get("key") != key:
            return None
        return text

    def store(self, kind: str, key: str, text: str) -> None:
        p = self._path(kind, key)
        try:
            p.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=p.parent, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, p)
        except OSError:
            pass  # caching is best effort

    @staticmethod
    def module_key(rs: RootSystem, lam) -> str:
        return f"{format_system(rs.factors)}:{format_weight(rs, lam)}"

    def load_module(self, rs: RootSystem, lam) -> str | None:
        return self.load("module", self.module_key(rs, lam))

    def store_module(self, rs: RootSystem, lam, text: str) -> None:
        self.store("module", self.module_key(rs, lam), text)
