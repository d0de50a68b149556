"""Versioned, zlib-compressed pickles of engine state."""
from __future__ import annotations

import pickle
import zlib

MAGIC = b"FAKESTREAM-SNAPSHOT"
VERSION = 2
LEVEL = 1    # tree statistics compress about tenfold even at the fastest level


class SnapshotError(RuntimeError):
    pass


def dumps(obj) -> bytes:
    header = MAGIC + b" v%d\n" % VERSION
    return header + zlib.compress(pickle.dumps(obj, protocol=pickle.HIGHEST_PROTOCOL), LEVEL)


def loads(blob: bytes):
    head, sep, body = blob.partition(b"\n")
    if not sep or not head.startswith(MAGIC):
        raise SnapshotError("not a snapshot file")
    try:
        version = int(head[len(MAGIC):].strip().lstrip(b"v"))
    except ValueError:
        raise SnapshotError("unreadable snapshot header") from None
    if version != VERSION:
        raise SnapshotError(f"snapshot version {version} not supported (expected {VERSION})")
    try:
        return pickle.loads(zlib.decompress(body))
    except zlib.error as exc:
        raise SnapshotError(f"corrupt snapshot: {exc}") from None


def save(obj, path):
    with open(path, "wb") as fh:
        fh.write(dumps(obj))


def load(path):
    with open(path, "rb") as fh:
        return loads(fh.read())
