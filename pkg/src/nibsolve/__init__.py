"""Exact solver for normal integral bases of abelian number fields."""

from .groups import AbelianGroup, Character, CharacterSystem, dual_group, multiplicity_check
from .groupring import DecomposedElt, GroupRingDecomposition, GroupRingElt, gr_mul

__all__ = [
    "AbelianGroup",
    "Character",
    "CharacterSystem",
    "DecomposedElt",
    "GroupRingDecomposition",
    "GroupRingElt",
    "dual_group",
    "gr_mul",
    "multiplicity_check",
]

__version__ = "0.1.0"
