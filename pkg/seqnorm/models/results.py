"""Result records returned by the computational modules."""

from __future__ import annotations

import math
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .vector import Vector


class Certification(str, Enum):
    """How a reported number was obtained."""
    EXACT = "exact"
    NUMERICAL = "numerical"
    REFERENCE = "reference"


class NormResult(BaseModel):
    """A non-negative value with its certification tag."""

    model_config = ConfigDict(frozen=True)

    value: float
    certification: Certification = Certification.EXACT
    tolerance: Optional[float] = None

    @model_validator(mode="after")
    def validate_result(self) -> "NormResult":
        if not self.value >= 0:
            raise ValueError(f"Invalid norm value {self.value}: must be non-negative")
        if self.certification == Certification.NUMERICAL:
            if self.tolerance is None or not self.tolerance > 0:
                raise ValueError("Invalid numerical result: a positive tolerance is required")
        return self

    @classmethod
    def exact(cls, value: float) -> "NormResult":
        return cls(value=float(value))

    @classmethod
    def numerical(cls, value: float, tolerance: float) -> "NormResult":
        return cls(
            value=float(value),
            certification=Certification.NUMERICAL,
            tolerance=tolerance,
        )

    @property
    def exact_value(self) -> bool:
        return self.certification == Certification.EXACT


class BoundPair(BaseModel):
    """Lower and upper bounds for a quantity without a closed form."""

    model_config = ConfigDict(frozen=True)

    lower: float
    upper: float = math.inf
    certification: Certification = Certification.NUMERICAL
    witness: Optional[Tuple[float, ...]] = None
    checks: Dict[str, bool] = Field(default_factory=dict)
    note: str = ""

    @model_validator(mode="after")
    def validate_bounds(self) -> "BoundPair":
        if not self.lower >= 0:
            raise ValueError(f"Invalid lower bound {self.lower}: must be non-negative")
        if self.lower > self.upper + 1e-9 * max(1.0, abs(self.upper)):
            raise ValueError(
                f"Invalid bounds: lower {self.lower} exceeds upper {self.upper}"
            )
        return self

    @property
    def gap(self) -> float:
        """Relative gap (upper - lower) / upper."""
        if math.isinf(self.upper):
            return math.inf
        if self.upper == 0:
            return 0.0
        return max(0.0, (self.upper - self.lower) / self.upper)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


class Splitting(BaseModel):
    """A decomposition x = x0 + x1."""

    model_config = ConfigDict(frozen=True)

    x0: Vector
    x1: Vector

    @model_validator(mode="after")
    def validate_dims(self) -> "Splitting":
        if self.x0.dim != self.x1.dim:
            raise ValueError("Invalid splitting: x0 and x1 differ in dimension")
        return self

    def total(self) -> Tuple[float, ...]:
        return tuple(a + b for a, b in zip(self.x0.entries, self.x1.entries))

    def sparsity(self) -> int:
        """Number of coordinates carried by x0."""
        return sum(1 for value in self.x0.entries if value != 0.0)


class Check(BaseModel):
    """One verified inequality: lhs <= rhs (or the named relation)."""

    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    lhs: float = 0.0
    rhs: float = 0.0
    detail: str = ""


class Report(BaseModel):
    """A named collection of checks."""

    name: str
    certification: Certification = Certification.NUMERICAL
    checks: List[Check] = Field(default_factory=list)
    values: Dict[str, float] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, name: str, lhs: float, rhs: float, tol: float = 0.0, detail: str = "") -> Check:
        """Record the inequality lhs <= rhs + tol."""
        check = Check(name=name, passed=bool(lhs <= rhs + tol), lhs=lhs, rhs=rhs, detail=detail)
        self.checks.append(check)
        return check

    def failures(self) -> List[Check]:
        return [check for check in self.checks if not check.passed]


class ValidationReport(BaseModel):
    """Grid-based (advisory) validation of an Orlicz function."""

    model_config = ConfigDict(frozen=True)

    convex: bool
    sqrt_concave: bool
    normalized: bool
    inverse_consistent: bool
    grid_size: int
    advisory: bool = True


class SNumberKind(str, Enum):
    """Kinds of s-number tables."""
    APPROXIMATION = "approximation"
    WEYL_PROXY = "weyl-proxy"
    GELFAND_LOWER = "gelfand-lower"


class SNumberRow(BaseModel):
    """One k-indexed entry of an s-number table."""

    model_config = ConfigDict(frozen=True)

    k: int
    bounds: BoundPair
    exact: Optional[float] = None


class SNumberReport(BaseModel):
    """s-number values or bounds indexed by k."""

    kind: SNumberKind
    n: int
    rows: List[SNumberRow] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.bounds.passed for row in self.rows)
