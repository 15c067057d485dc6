"""Exact-arithmetic analysis of finitely generated nilpotent matrix groups."""

from .fields import QQ, FiniteField, FunctionField, NumberField, field_from_json
from .groups import GroupSpec
from .linalg import Matrix

__all__ = [
    "QQ",
    "FiniteField",
    "FunctionField",
    "NumberField",
    "field_from_json",
    "GroupSpec",
    "Matrix",
]

__version__ = "0.1.0"
