"""Formal matrix rings M(n, R, Sigma) over the integers and the integers mod m."""

from .rings import RingSpec
from .multipliers import MultiplierSystem, Permutation, permute, principal_matrix, validate_identities
from .matrices import FormalMatrix, tau_image, twisted_multiply
from .patterns import PrincipalPattern, canonical_form, enumerate_patterns, realize01, realize_s1
from .isomorphism import IsoVerdict, check_hypotheses, decide_iso_01, decide_iso_s1, decide_quotient_iso

__all__ = [
    "RingSpec",
    "MultiplierSystem",
    "Permutation",
    "permute",
    "principal_matrix",
    "validate_identities",
    "FormalMatrix",
    "tau_image",
    "twisted_multiply",
    "PrincipalPattern",
    "canonical_form",
    "enumerate_patterns",
    "realize01",
    "realize_s1",
    "IsoVerdict",
    "check_hypotheses",
    "decide_iso_01",
    "decide_iso_s1",
    "decide_quotient_iso",
]
