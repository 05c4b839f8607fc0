"""Orbit-closure finiteness for (C*)^k x SL2 acting on vectors of binary forms."""

__version__ = "0.1.0"

from .criterion import (  # noqa: E402
    ComponentSpec,
    FaceReport,
    ProblemSpec,
    Verdict,
    decide,
    decide_affine,
    decide_projective,
    face_condition,
    modality,
    module_always_finite,
    witness_vector,
)
from .numbers import GaussianRational  # noqa: E402

__all__ = [
    "ComponentSpec",
    "FaceReport",
    "GaussianRational",
    "ProblemSpec",
    "Verdict",
    "decide",
    "decide_affine",
    "decide_projective",
    "face_condition",
    "modality",
    "module_always_finite",
    "witness_vector",
]
