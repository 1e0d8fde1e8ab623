"""Exact divisor invariants on surfaces and the stability-threshold bounds built on them."""
from .errors import DeltaboundError, DomainError, InputError, InvariantViolation, ModelError
from .lattice import DivClass, PointModel, SurfaceModel, blow_up, builtin_surface, enumerate_negative_classes, pairing
from .rayscan import RayInvariants, ray_invariants, s_invariant, thresholds, volume_ray
from .zariski import ZariskiDecomp, is_nef, is_pseudoeffective, zariski_decompose

__all__ = [
    "DeltaboundError",
    "DomainError",
    "InputError",
    "InvariantViolation",
    "ModelError",
    "DivClass",
    "PointModel",
    "SurfaceModel",
    "blow_up",
    "builtin_surface",
    "enumerate_negative_classes",
    "pairing",
    "RayInvariants",
    "ray_invariants",
    "s_invariant",
    "thresholds",
    "volume_ray",
    "ZariskiDecomp",
    "is_nef",
    "is_pseudoeffective",
    "zariski_decompose",
]
