"""Minimal Recursion Semantics: extraction, checking, scope resolution, comparison."""

from deepja.mrs.compare import mrs_equal
from deepja.mrs.core import EP, Check, Mrs, canonicalize
from deepja.mrs.extract import MalformedSemanticsError, extract_mrs
from deepja.mrs.negatives import generate_negatives
from deepja.mrs.scope import SCOPE_CAP, ScopeLimitExceeded, check_wellformed, resolve_scopes

__all__ = [
    "EP", "Mrs", "Check", "canonicalize", "extract_mrs", "MalformedSemanticsError",
    "check_wellformed", "resolve_scopes", "ScopeLimitExceeded", "SCOPE_CAP",
    "mrs_equal", "generate_negatives",
]
