"""Content-addressed cache for computed polynomial files.

Each entry is a text file whose first line is "hash: <sha256 of the
payload>"; the rest is the payload verbatim.  A digest mismatch is
treated as a miss, so a corrupted entry is recomputed and overwritten,
never silently reused.
"""

import hashlib
import os
from typing import Optional


def _digest(payload: str) -> str:
    return hashlib.sha256(payload.encode()).hexdigest()


def fetch(cache_dir: str, key: str) -> Optional[str]:
    """The cached payload for key, or None on miss or corruption."""
    path = os.path.join(cache_dir, key)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError:
        return None
    head, _, payload = text.partition("\n")
    if not head.startswith("hash: "):
        return None
    if head[len("hash: "):].strip() != _digest(payload):
        return None
    return payload


def store(cache_dir: str, key: str, payload: str) -> str:
    """Write payload under key; returns the file path."""
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, key)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"hash: {_digest(payload)}\n")
        fh.write(payload)
    return path
