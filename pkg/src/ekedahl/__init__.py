"""Bogomolov multipliers, Ekedahl invariants and precision-tracked classes
in the completed Grothendieck ring of varieties."""

__version__ = "0.1.0"

from .abelian import FGAbelian, L0AbElement, l0_class_of, pontryagin_dual  # noqa: E402
from .cohomology import bogomolov_multiplier, h2_units  # noqa: E402
from .groups import FiniteGroup, builtin_group, group_from_permutations, group_from_table  # noqa: E402
from .invariants import ekedahl_invariant, solve_from_projective_sums  # noqa: E402
from .kring import KElement, class_gl, k_invert_unit  # noqa: E402
from .parser import parse_kring_expr  # noqa: E402
from .varieties import CohomologyTable, h_k  # noqa: E402

__all__ = [
    "CohomologyTable", "FGAbelian", "FiniteGroup", "KElement", "L0AbElement",
    "bogomolov_multiplier", "builtin_group", "class_gl", "ekedahl_invariant",
    "group_from_permutations", "group_from_table", "h2_units", "h_k", "k_invert_unit",
    "l0_class_of", "parse_kring_expr", "pontryagin_dual", "solve_from_projective_sums",
]
