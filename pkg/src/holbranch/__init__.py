"""Branching of holomorphic discrete series, verified with exact arithmetic."""
from .lie import (
    Embedding,
    Family,
    HermitianPair,
    blattner_of_hc,
    build_embedding,
    build_pair,
    classify_weight,
    make_embedding,
)

__all__ = [
    "Embedding",
    "Family",
    "HermitianPair",
    "blattner_of_hc",
    "build_embedding",
    "build_pair",
    "classify_weight",
    "make_embedding",
]
__version__ = "0.1.0"
