"""Finite real sequences."""

from __future__ import annotations

import math
from typing import Iterable, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from ..exceptions import NonFinite

ArrayLike = Union["Vector", Iterable[float], np.ndarray]


class Vector(BaseModel):
    """An immutable finite real sequence."""

    model_config = ConfigDict(frozen=True)

    entries: Tuple[float, ...]

    @field_validator("entries")
    @classmethod
    def validate_entries(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        if len(v) == 0:
            raise ValueError("Invalid vector: at least one entry is required")
        for i, value in enumerate(v):
            if not math.isfinite(value):
                raise ValueError(f"Invalid vector: entry {i} is not finite ({value})")
        return v

    @property
    def dim(self) -> int:
        return len(self.entries)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)

    @classmethod
    def of(cls, values: ArrayLike) -> "Vector":
        """Build a Vector, raising NonFinite instead of a validation error."""
        return cls(entries=tuple(float(v) for v in as_array(values)))

    @classmethod
    def ones(cls, n: int) -> "Vector":
        return cls(entries=(1.0,) * n)

    @classmethod
    def unit(cls, n: int, k: int) -> "Vector":
        values = [0.0] * n
        values[k] = 1.0
        return cls(entries=tuple(values))


def as_array(values: ArrayLike) -> np.ndarray:
    """Return a float64 copy of `values`; non-finite entries raise NonFinite."""
    if isinstance(values, Vector):
        return values.to_array()
    arr = np.array(values, dtype=float).reshape(-1)
    if arr.size == 0:
        raise NonFinite("empty vector")
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"vector has non-finite entries: {arr.tolist()}")
    return arr
