"""Rational cohomology calculus for circle actions on Toda-type spaces."""

from .classify import FixedSetType, compare_theorem, enumerate_fixed_types, theorem_reference_list
from .dsl import parse, to_text
from .equivariant import fixed_set, gallery, report
from .graded import PoincarePolynomial, euler_char, total_rank
from .space import classify_type, eval_poincare, mapping_cone_ring, toda_ring

__version__ = "0.1.0"
