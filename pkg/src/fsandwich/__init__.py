"""Exact classification of degree-p F-sandwiches of projective space by toric data."""

from .diagonalize import ClassificationVerdict, DiagonalForm, Verdict, diagonalize
from .field import Field, FieldElement, embed, find_root, make_field
from .pipeline import run_census, run_classify, run_verify
from .toric import FanData, build_fan, normalize_weights
from .vector_field import LinearVectorField, VectorFieldClass, class_from_matrix

__all__ = [
    "ClassificationVerdict", "DiagonalForm", "FanData", "Field", "FieldElement", "LinearVectorField",
    "Verdict", "VectorFieldClass", "build_fan", "class_from_matrix", "diagonalize", "embed",
    "find_root", "make_field", "normalize_weights", "run_census", "run_classify", "run_verify",
]
