"""Finite matrices, operators between descriptor spaces, and vector families."""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .descriptors import Lp, SpaceDescriptor


class Matrix(BaseModel):
    """A dense real matrix stored row-major."""

    model_config = ConfigDict(frozen=True)

    rows: Tuple[Tuple[float, ...], ...]

    @field_validator("rows")
    @classmethod
    def validate_rows(cls, v: Tuple[Tuple[float, ...], ...]) -> Tuple[Tuple[float, ...], ...]:
        if not v or not v[0]:
            raise ValueError("Invalid matrix: at least one row and column are required")
        width = len(v[0])
        for i, row in enumerate(v):
            if len(row) != width:
                raise ValueError(f"Invalid matrix: row {i} has {len(row)} entries, expected {width}")
            if not all(math.isfinite(x) for x in row):
                raise ValueError(f"Invalid matrix: row {i} has non-finite entries")
        return v

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def to_array(self) -> np.ndarray:
        return np.asarray(self.rows, dtype=float)

    @classmethod
    def of(cls, values: np.ndarray) -> "Matrix":
        arr = np.atleast_2d(np.asarray(values, dtype=float))
        return cls(rows=tuple(tuple(float(x) for x in row) for row in arr))


class FiniteOperator(BaseModel):
    """T: domain_n → codomain_m given by an m × n matrix."""

    model_config = ConfigDict(frozen=True)

    matrix: Matrix
    domain: SpaceDescriptor = Lp(p=2.0)
    codomain: SpaceDescriptor = Lp(p=2.0)

    @property
    def domain_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def codomain_dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.matrix.to_array() @ x

    def scaled(self, c: float) -> "FiniteOperator":
        return self.model_copy(update={"matrix": Matrix.of(c * self.matrix.to_array())})

    @classmethod
    def identity(cls, n: int, domain: SpaceDescriptor, codomain: SpaceDescriptor) -> "FiniteOperator":
        return cls(matrix=Matrix.of(np.eye(n)), domain=domain, codomain=codomain)


class VectorFamily(BaseModel):
    """A finite family x_1, ..., x_N of vectors of a common dimension."""

    model_config = ConfigDict(frozen=True)

    vectors: Tuple[Tuple[float, ...], ...]
    label: str = ""

    @model_validator(mode="after")
    def validate_family(self) -> "VectorFamily":
        if not self.vectors:
            raise ValueError("Invalid family: at least one vector is required")
        dim = len(self.vectors[0])
        if dim == 0 or any(len(v) != dim for v in self.vectors):
            raise ValueError("Invalid family: vectors must share a positive dimension")
        if not all(math.isfinite(x) for v in self.vectors for x in v):
            raise ValueError("Invalid family: entries must be finite")
        return self

    @property
    def size(self) -> int:
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    def to_array(self) -> np.ndarray:
        """Rows are the family members."""
        return np.asarray(self.vectors, dtype=float)

    @classmethod
    def of(cls, rows: np.ndarray, label: str = "") -> "VectorFamily":
        arr = np.atleast_2d(np.asarray(rows, dtype=float))
        return cls(vectors=tuple(tuple(float(x) for x in row) for row in arr), label=label)
