"""Finite and infinite-rank polar spaces: regularity, tight embeddings and partial dualities."""
from .errors import PolarError
from .forms import (Form, canonical_hermitian, canonical_hyperbolic, canonical_symplectic,
                    char2_universal_lift, custom_form, parabolic)
from .gf import FiniteField, make_field, parse_field
from .polar import PolarSpace, polar_space

__all__ = [
    "PolarError", "Form", "FiniteField", "PolarSpace", "make_field", "parse_field", "polar_space",
    "canonical_symplectic", "canonical_hyperbolic", "canonical_hermitian", "parabolic",
    "custom_form", "char2_universal_lift",
]
__version__ = "0.1.0"
