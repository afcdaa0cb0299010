"""Deterministic random-number stream handles.

A stream is identified by ``(master_seed, stream_index)``; identical
identifiers produce identical variate sequences regardless of hardware,
thread count, or execution order.  ``child(i)`` derives an independent
substream by extending the index path, which keeps replicate-level
parallelism reproducible: replicate ``b`` always draws from
``seed.child(b)`` no matter which worker runs it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_MAX_SEED = 2**64


@dataclass(frozen=True)
class RngStream:
    """Handle for a reproducible stream of random variates."""

    master_seed: int = 0
    stream_index: tuple = (0,)

    def __post_init__(self):
        if not isinstance(self.master_seed, (int, np.integer)):
            raise DomainError("master_seed must be an integer")
        if not 0 <= int(self.master_seed) < _MAX_SEED:
            raise DomainError("master_seed must be a 64-bit unsigned integer")
        idx = self.stream_index
        if isinstance(idx, (int, np.integer)):
            idx = (int(idx),)
        idx = tuple(int(i) for i in idx)
        if any(i < 0 for i in idx):
            raise DomainError("stream_index components must be non-negative")
        object.__setattr__(self, "master_seed", int(self.master_seed))
        object.__setattr__(self, "stream_index", idx)

    def child(self, index: int) -> "RngStream":
        """Derive the ``index``-th independent substream of this stream."""
        return RngStream(self.master_seed, self.stream_index + (int(index),))

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        seq = np.random.SeedSequence(self.master_seed, spawn_key=self.stream_index)
        return np.random.default_rng(seq)
