"""Exact computations with relaxed Verma modules over affine Kac-Moody algebras."""
from fractions import Fraction as Q

from .cartan import GCM, WeightVector, cartan_type_a, parse_type, positive_roots_up_to_height
from .characters import FormalCharacter, Region, char_relaxed_formula, char_verma, equal_on_region
from .induced import InducedModule, eq_module, relaxed_module, verma_module
from .p1 import TwistedP1Module, cohomology
from .sl2 import construct, dual_sl2, verma_sl2
from .weyl import WeylElement, bruhat_leq, strata

__all__ = [
    "Q", "GCM", "WeightVector", "cartan_type_a", "parse_type", "positive_roots_up_to_height",
    "FormalCharacter", "Region", "char_relaxed_formula", "char_verma", "equal_on_region",
    "InducedModule", "eq_module", "relaxed_module", "verma_module",
    "TwistedP1Module", "cohomology", "construct", "dual_sl2", "verma_sl2",
    "WeylElement", "bruhat_leq", "strata",
]
__version__ = "0.1.0"
