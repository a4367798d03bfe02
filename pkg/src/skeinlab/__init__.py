"""skeinlab: exact skein modules, modified traces and renormalized invariants.

The package computes, in exact arithmetic over rational-function or
cyclotomic ground fields: trace spaces on ideals of concrete pivotal and
ribbon categories, cutting-path evaluations of disk/sphere skeins,
invariants of graphs on handlebody boundaries, trace-kernel quotients
with their induced non-degenerate traces, and graded dimension bounds of
skein modules on surfaces.
"""

from .category import (CategoryInstance, Entry, GradingGroup, Morphism,
                       ObjectHandle, TRIVIAL_GROUP, Word, word, word_dual)
from .fields import (FieldSpec, Scalar, cyclotomic_field, parse_scalar,
                     rational_function_field)
from .linalg import ExactMatrix, inverse, nullspace, rank, rref, solve

__all__ = [
    "CategoryInstance", "Entry", "ExactMatrix", "FieldSpec", "GradingGroup",
    "Morphism", "ObjectHandle", "Scalar", "TRIVIAL_GROUP", "Word",
    "cyclotomic_field", "inverse", "nullspace", "parse_scalar", "rank",
    "rational_function_field", "rref", "solve", "word", "word_dual",
]

__version__ = "0.1.0"
