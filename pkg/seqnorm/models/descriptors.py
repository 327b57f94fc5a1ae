"""Space descriptors: immutable trees naming symmetric sequence spaces.

Base catalog: ``Lp``, ``LorentzPQ``, ``LorentzD``, ``Orlicz``, ``Marcinkiewicz``.
Constructors: ``Dual`` (Köthe dual), ``Power`` (E^r with ‖x‖ = ‖|x|^{1/r}‖^r) and
``Multiplier`` (diagonal multipliers M(E, F)).
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Annotated, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

INF = math.inf


class OrliczFamily(str, Enum):
    """Parametrized Young function families."""
    POWER = "power"
    POWLOG = "powlog"
    MIXED = "mixed"


class OrliczFunction(BaseModel):
    """A normalized Young function φ with φ(0) = 0 and φ(1) = 1."""

    model_config = ConfigDict(frozen=True)

    family: OrliczFamily
    params: Tuple[float, ...]

    @model_validator(mode="after")
    def validate_params(self) -> "OrliczFunction":
        expected = 2 if self.family == OrliczFamily.MIXED else 1
        if len(self.params) != expected:
            raise ValueError(
                f"Invalid Orlicz parameters: {self.family.value} takes {expected}, "
                f"got {len(self.params)}"
            )
        if any(not math.isfinite(a) or a < 1 for a in self.params):
            raise ValueError(f"Invalid Orlicz exponent(s) {self.params}: need 1 <= a < inf")
        if self.family == OrliczFamily.MIXED and self.params[0] > self.params[1]:
            raise ValueError("Invalid Orlicz parameters: mixed(a, b) needs a <= b")
        return self

    def __call__(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.family == OrliczFamily.POWER:
            return t ** self.params[0]
        if self.family == OrliczFamily.POWLOG:
            a = self.params[0]
            return t**a * np.log(math.e + t) / math.log(math.e + 1.0)
        a, b = self.params
        return 0.5 * (t**a + t**b)

    def derivative(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.family == OrliczFamily.POWER:
            a = self.params[0]
            return a * t ** (a - 1.0)
        if self.family == OrliczFamily.POWLOG:
            a = self.params[0]
            scale = math.log(math.e + 1.0)
            return (a * t ** (a - 1.0) * np.log(math.e + t) + t**a / (math.e + t)) / scale
        a, b = self.params
        return 0.5 * (a * t ** (a - 1.0) + b * t ** (b - 1.0))

    def inverse(self, s: float) -> float:
        """Return φ⁻¹(s) for s >= 0."""
        if s < 0:
            raise ValueError(f"Invalid argument {s}: φ⁻¹ is defined on [0, inf)")
        if s == 0:
            return 0.0
        if self.family == OrliczFamily.POWER:
            return s ** (1.0 / self.params[0])
        lo, hi = (0.0, 1.0) if s <= 1.0 else (1.0, 2.0)
        while float(self(hi)) < s:
            lo, hi = hi, 2.0 * hi
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if float(self(mid)) < s:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-16 * hi:
                break
        return 0.5 * (lo + hi)

    def label(self) -> str:
        return f"{self.family.value}({','.join(format_number(a) for a in self.params)})"


class WeightRule(BaseModel):
    """Power weights w_n = n^{-alpha}; w_1 = 1 and the sequence is non-increasing."""

    model_config = ConfigDict(frozen=True)

    alpha: float = 0.0

    @field_validator("alpha")
    @classmethod
    def validate_alpha(cls, v: float) -> float:
        if not math.isfinite(v) or v < 0:
            raise ValueError(f"Invalid weight exponent {v}: need 0 <= alpha < inf")
        return v

    def weights(self, n: int) -> np.ndarray:
        return np.arange(1, n + 1, dtype=float) ** (-self.alpha)

    def partial_sum(self, n: int) -> float:
        """W(n) = Σ_{k<=n} w_k (closed form for constant weights)."""
        if self.alpha == 0.0:
            return float(n)
        return float(np.sum(self.weights(n)))

    def regularity_ratio(self, n: int, p: float) -> float:
        """n·w_n^{2/(2-p)} / Σ_{k<=n} w_k^{2/(2-p)} for 1 <= p < 2."""
        if not 1.0 <= p < 2.0:
            raise ValueError(f"Invalid exponent {p}: the regularity ratio needs 1 <= p < 2")
        powered = self.weights(n) ** (2.0 / (2.0 - p))
        return float(n * powered[-1] / np.sum(powered))

    def label(self) -> str:
        return f"pow({format_number(self.alpha)})"


class Attestation(BaseModel):
    """Analytically known lattice properties of a descriptor.

    ``convex`` is the largest p for which p-convexity is attested (1 for every
    normed space, 0 for quasi-normed ones); ``concave`` the smallest q for which
    q-concavity is attested (inf when nothing is known). ``m2`` is the recorded
    2-concavity constant when it is known.
    """

    model_config = ConfigDict(frozen=True)

    convex: float
    concave: float
    m2: Optional[float] = None

    @property
    def normed(self) -> bool:
        return self.convex >= 1.0

    @property
    def two_concave(self) -> bool:
        return self.concave <= 2.0


class _Descriptor(BaseModel):
    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        from ..utils.expressions import to_expression

        return to_expression(self)


class Lp(_Descriptor):
    """ℓ_p, 1 <= p <= inf."""
    kind: Literal["lp"] = "lp"
    p: float

    @field_validator("p")
    @classmethod
    def validate_p(cls, v: float) -> float:
        if math.isnan(v) or v < 1:
            raise ValueError(f"Invalid exponent p={v}: ℓ_p needs 1 <= p <= inf")
        return v


class LorentzPQ(_Descriptor):
    """Lorentz ℓ_{p,q}: (Σ n^{q/p-1} (x*_n)^q)^{1/q}, or sup n^{1/p} x*_n for q = inf."""
    kind: Literal["lorentz"] = "lorentz"
    p: float
    q: float

    @model_validator(mode="after")
    def validate_exponents(self) -> "LorentzPQ":
        if not (1 < self.p < INF):
            raise ValueError(f"Invalid exponent p={self.p}: ℓ_{{p,q}} needs 1 < p < inf")
        if math.isnan(self.q) or self.q < 1:
            raise ValueError(f"Invalid exponent q={self.q}: ℓ_{{p,q}} needs q >= 1")
        return self

    @property
    def normed(self) -> bool:
        return self.q <= self.p


class LorentzD(_Descriptor):
    """Lorentz d(w, p): (Σ w_n (x*_n)^p)^{1/p}."""
    kind: Literal["dwp"] = "dwp"
    w: WeightRule
    p: float

    @field_validator("p")
    @classmethod
    def validate_p(cls, v: float) -> float:
        if not (1 <= v < INF):
            raise ValueError(f"Invalid exponent p={v}: d(w,p) needs 1 <= p < inf")
        return v


class Orlicz(_Descriptor):
    """Orlicz ℓ_φ with the Luxemburg norm."""
    kind: Literal["orlicz"] = "orlicz"
    phi: OrliczFunction


class Marcinkiewicz(_Descriptor):
    """Marcinkiewicz m_λ: sup_n x**_n λ(n), λ(n) = n^exponent or λ_base(n)."""
    kind: Literal["marcinkiewicz"] = "marcinkiewicz"
    exponent: Optional[float] = None
    base: Optional["SpaceDescriptor"] = None

    @model_validator(mode="after")
    def validate_rule(self) -> "Marcinkiewicz":
        if (self.exponent is None) == (self.base is None):
            raise ValueError(
                "Invalid Marcinkiewicz rule: give exactly one of a power exponent "
                "or a base space"
            )
        if self.exponent is not None and not 0 <= self.exponent <= 1:
            raise ValueError(
                f"Invalid fundamental exponent {self.exponent}: need 0 <= a <= 1"
            )
        return self


class Dual(_Descriptor):
    """Köthe dual E^×."""
    kind: Literal["dual"] = "dual"
    inner: "SpaceDescriptor"


class Power(_Descriptor):
    """Power space E^r."""
    kind: Literal["power"] = "power"
    inner: "SpaceDescriptor"
    r: float

    @field_validator("r")
    @classmethod
    def validate_r(cls, v: float) -> float:
        if not (0 < v < INF):
            raise ValueError(f"Invalid power r={v}: need 0 < r < inf")
        return v


class Multiplier(_Descriptor):
    """Multiplier space M(source, target)."""
    kind: Literal["mult"] = "mult"
    source: "SpaceDescriptor"
    target: "SpaceDescriptor"


SpaceDescriptor = Annotated[
    Union[Lp, LorentzPQ, LorentzD, Orlicz, Marcinkiewicz, Dual, Power, Multiplier],
    Field(discriminator="kind"),
]

for _model in (Marcinkiewicz, Dual, Power, Multiplier):
    _model.model_rebuild()

BASE_TYPES = (Lp, LorentzPQ, LorentzD, Orlicz, Marcinkiewicz)


def format_number(value: float) -> str:
    """Shortest text that parses back to exactly `value`."""
    from ..utils.expressions import format_literal

    return format_literal(value)
