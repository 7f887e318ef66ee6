"""Agenda-driven chart parsing, ranking and a brute-force oracle."""

from deepja.parser.brute import enumerate_derivations
from deepja.parser.chart import (
    EDGE_LIMIT, Edge, Forest, ParseOptions, ParseStats, ResourceLimitExceeded, derivation,
    parse, quick_check,
)
from deepja.parser.rank import Reading, is_left_branching, preference_table, unpack_nbest

__all__ = [
    "parse", "ParseOptions", "ParseStats", "Forest", "Edge", "ResourceLimitExceeded",
    "EDGE_LIMIT", "quick_check", "derivation", "unpack_nbest", "Reading",
    "preference_table", "is_left_branching", "enumerate_derivations",
]
