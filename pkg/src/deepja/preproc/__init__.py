"""Placeholder substitution and lattice segmentation."""

from deepja.preproc.placeholders import PlaceholderSpan, preprocess, restore
from deepja.preproc.segment import Lattice, SegmentationGapError, Token, map_inflection, segment

__all__ = ["preprocess", "restore", "PlaceholderSpan", "segment", "Lattice", "Token",
           "map_inflection", "SegmentationGapError"]
