"""Certified upper bounds on overlap functionals via sampled moment matrices."""

from .interchange import FunctionalDoc, functional_from_doc, load_functional
from .moments import MomentMatrix, moment_matrix, operator_words, sample_moment_basis
from .relax import RelaxResult, default_sample_dim, upper_bound

__all__ = [
    "FunctionalDoc",
    "MomentMatrix",
    "RelaxResult",
    "default_sample_dim",
    "functional_from_doc",
    "load_functional",
    "moment_matrix",
    "operator_words",
    "sample_moment_basis",
    "upper_bound",
]
