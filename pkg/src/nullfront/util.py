"""Small process-level helpers: thread cap and atomic file output."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path


def thread_count() -> int:
    """Worker cap from NULLFRONT_THREADS, defaulting to the available cores."""
    raw = os.environ.get("NULLFRONT_THREADS", "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"NULLFRONT_THREADS must be a positive integer, got {raw!r}") from None
        if n < 1:
            raise ValueError("NULLFRONT_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1


def _umask() -> int:
    mask = os.umask(0)
    os.umask(mask)
    return mask


def atomic_write(path, data) -> None:
    """Write text or bytes to ``path`` via a temp file renamed on success."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"newline": "", "encoding": "utf-8"})) as fh:
            fh.write(data)
        os.chmod(tmp, 0o666 & ~_umask())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
