"""Finite simple left braces from asymmetric products, with exact verification."""

from .brace import CheckReport, FiniteBrace, SizeGuardError, ideal_closure, is_simple, verify_brace_axioms
from .family import (
    EmbeddingPlan,
    Family,
    FamilyParams,
    ParamsError,
    additive_signature,
    brace_order,
    build_family,
    synthesize_embedding,
    verify_embedding,
)
from .ybe import SolutionMap, check_involutive, check_nondegenerate, check_ybe, solution_from_brace

__all__ = [
    "CheckReport",
    "EmbeddingPlan",
    "Family",
    "FamilyParams",
    "FiniteBrace",
    "ParamsError",
    "SizeGuardError",
    "SolutionMap",
    "additive_signature",
    "brace_order",
    "build_family",
    "check_involutive",
    "check_nondegenerate",
    "check_ybe",
    "ideal_closure",
    "is_simple",
    "solution_from_brace",
    "synthesize_embedding",
    "verify_brace_axioms",
    "verify_embedding",
]
