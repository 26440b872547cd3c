"""Seeded, splittable random streams.

Every randomized routine takes a base seed plus a stream key and builds a
Philox (counter-based) generator from them, so any trial can be replayed from
the ``(seed, stream)`` pair recorded in its report.
"""

from __future__ import annotations

import zlib
from typing import Union

import numpy as np

StreamKey = Union[int, str]


def _key(part: StreamKey) -> int:
    if isinstance(part, str):
        return zlib.crc32(part.encode())
    return int(part)


def stream(seed: int, *key: StreamKey) -> np.random.Generator:
    """Generator for the sub-stream ``key`` of ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(_key(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def child_seed(seed: int, *key: StreamKey) -> int:
    """Derive a plain integer seed for a sub-stream (useful for nested calls)."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(_key(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint32)[0])
