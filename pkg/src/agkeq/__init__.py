"""Residue algebraic-geometry codes on smooth plane curves, with a
key-equation solver wrapped in majority coset decoding."""

__version__ = "0.1.0"

from .gf import Field, FieldElement, FieldSpec

__all__ = ["Field", "FieldElement", "FieldSpec", "__version__"]
