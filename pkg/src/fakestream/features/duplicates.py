from __future__ import annotations

import hashlib


def text_hash(normalized: str) -> int:
    digest = hashlib.blake2b(normalized.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


class DuplicateStore:
    """64-bit hashes of every normalized text seen so far."""

    def __init__(self):
        self.hashes = set()

    def seen(self, normalized):
        return text_hash(normalized) in self.hashes

    def add(self, normalized):
        self.hashes.add(text_hash(normalized))

    def __len__(self):
        return len(self.hashes)


def duplicate_check(normalized: str, store: DuplicateStore) -> bool:
    """True iff the text was seen earlier; the hash is inserted afterwards."""
    h = text_hash(normalized)
    dup = h in store.hashes
    store.hashes.add(h)
    return dup
