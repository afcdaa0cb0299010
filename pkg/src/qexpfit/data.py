"""Validated observation vectors.

A ``Sample`` is a vector of finite observations together with the left
censoring threshold ``x0`` under which it was collected.  ``x0 = 0`` means
no censoring; every value must satisfy ``value >= x0 >= 0``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError


@dataclass(frozen=True, eq=False)
class Sample:
    """Observations plus the censoring threshold they were collected above."""

    values: np.ndarray
    x0: float = 0.0

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise DataError(f"sample values must be one-dimensional, got shape {values.shape}")
        if values.size < 1:
            raise DataError("a sample needs at least one observation")
        if not np.all(np.isfinite(values)):
            raise DataError("sample values must all be finite")
        x0 = float(self.x0)
        if not np.isfinite(x0) or x0 < 0.0:
            raise DataError(f"censoring threshold must be finite and >= 0, got {x0!r}")
        if values.min() < x0:
            bad = int(np.sum(values < x0))
            raise DataError(
                f"{bad} value(s) fall below the censoring threshold x0={x0!r}; "
                "a censored sample may only contain values >= x0"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "x0", x0)

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def censored(self) -> bool:
        return self.x0 > 0.0
