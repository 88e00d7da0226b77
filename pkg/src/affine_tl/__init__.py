"""Exact computations in the Temperley-Lieb algebra of type affine C and its
decorated diagram representation."""

from .coxeter import (
    CoxeterContext,
    FCElement,
    NotFullyCommutative,
    bond,
    canonical_form,
    fc_elements,
    identity,
    is_fc_reduced,
    left_descents,
    new_context,
    right_descents,
    support,
)
from .diagram import Diagram, DiagramElement, concat, identity_diagram, is_admissible, simple_diagram
from .theta import d_of_w, descents_from_diagram, invert, theta
from .tl import DeltaPoly, MonomialElement, from_word, gen_times, mul, times_gen

__version__ = "0.1.0"

__all__ = [
    "CoxeterContext",
    "DeltaPoly",
    "Diagram",
    "DiagramElement",
    "FCElement",
    "MonomialElement",
    "NotFullyCommutative",
    "bond",
    "canonical_form",
    "concat",
    "d_of_w",
    "descents_from_diagram",
    "fc_elements",
    "from_word",
    "gen_times",
    "identity",
    "identity_diagram",
    "invert",
    "is_admissible",
    "is_fc_reduced",
    "left_descents",
    "mul",
    "new_context",
    "right_descents",
    "simple_diagram",
    "support",
    "theta",
    "times_gen",
]
