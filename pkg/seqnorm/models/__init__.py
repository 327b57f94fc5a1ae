"""Domain models and common model utilities."""

from .vector import Vector, as_array
from .descriptors import (
    Attestation,
    Dual,
    INF,
    LorentzD,
    LorentzPQ,
    Lp,
    Marcinkiewicz,
    Multiplier,
    Orlicz,
    OrliczFamily,
    OrliczFunction,
    Power,
    SpaceDescriptor,
    WeightRule,
)
from .results import (
    BoundPair,
    Certification,
    Check,
    NormResult,
    Report,
    SNumberKind,
    SNumberReport,
    SNumberRow,
    Splitting,
    ValidationReport,
)
from .operators import FiniteOperator, Matrix, VectorFamily
from .experiment import ExperimentConfig, ExperimentKind, SolverConfig

# Export models for easy importing
__all__ = [
    "Vector",
    "as_array",
    "Attestation",
    "Dual",
    "INF",
    "LorentzD",
    "LorentzPQ",
    "Lp",
    "Marcinkiewicz",
    "Multiplier",
    "Orlicz",
    "OrliczFamily",
    "OrliczFunction",
    "Power",
    "SpaceDescriptor",
    "WeightRule",
    "BoundPair",
    "Certification",
    "Check",
    "NormResult",
    "Report",
    "SNumberKind",
    "SNumberReport",
    "SNumberRow",
    "Splitting",
    "ValidationReport",
    "FiniteOperator",
    "Matrix",
    "VectorFamily",
    "ExperimentConfig",
    "ExperimentKind",
    "SolverConfig",
]
