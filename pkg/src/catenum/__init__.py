"""Enumeration and verification of finite categories whose hom-sets all have two elements."""

__version__ = "0.1.0"

from .core import AlphaFunction, Morphism, alpha_eval, triple_rank, triple_unrank
from .composition import build_table, check_axioms, compose
from .conditions import alpha_check, product_identity_check
from .action import act, canonical_form
from .enumeration import burnside_count, classify_n3, enumerate_ordered, enumerate_reduced
from .bounds import bounds_report, build_noninterferant, is_noninterferant, sigma_estimate

__all__ = [
    "AlphaFunction",
    "Morphism",
    "act",
    "alpha_check",
    "alpha_eval",
    "bounds_report",
    "build_noninterferant",
    "build_table",
    "burnside_count",
    "canonical_form",
    "check_axioms",
    "classify_n3",
    "compose",
    "enumerate_ordered",
    "enumerate_reduced",
    "is_noninterferant",
    "product_identity_check",
    "sigma_estimate",
    "triple_rank",
    "triple_unrank",
]
