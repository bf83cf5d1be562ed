"""Surface invariants and feasibility checks for branched covers of the plane."""
from __future__ import annotations

from .feasibility import EnumerationQuery, check_constraints, enumerate_profiles
from .galois import GaloisReport, galois_report
from .invariants import InvariantReport, invariant_report
from .kernels import available_backends, backend_name, set_backend
from .local_models import verify_local_model
from .monodromy import Permutation, TrackingParams, certify, make_model
from .profile import Family, SingularityClass, SingularProfile, delta_invariant, make_class

__version__ = "0.1.0"

__all__ = [
    "EnumerationQuery",
    "Family",
    "GaloisReport",
    "InvariantReport",
    "Permutation",
    "SingularProfile",
    "SingularityClass",
    "TrackingParams",
    "available_backends",
    "backend_name",
    "certify",
    "check_constraints",
    "delta_invariant",
    "enumerate_profiles",
    "galois_report",
    "invariant_report",
    "make_class",
    "make_model",
    "set_backend",
    "verify_local_model",
]
