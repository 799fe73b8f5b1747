"""Exact computation with context-free grammars, normal ordered operators, and tableau formulas."""

from .boxsort import Owp, enumerate_owp, fiber_count, fiber_counts, owp_weight, owp_weight_sum, phi
from .families import FamilyId, family, number_table
from .grammar import Grammar, NormalOp, derive, derive_alternating, derive_n, op_apply, op_power
from .normalorder import JetContext, cd_power_on_f, ckd_power_on_c, project
from .oracle import ObjectClass, stat_poly
from .polyring import Poly, Var, parse_poly
from .suite import CATALOG, verify, verify_all
from .tableaux import Tableau, box_index, box_product, enumerate_syt, syt_expansion

__all__ = [
    "CATALOG", "FamilyId", "Grammar", "JetContext", "NormalOp", "ObjectClass", "Owp", "Poly", "Tableau", "Var",
    "box_index", "box_product", "cd_power_on_f", "ckd_power_on_c", "derive", "derive_alternating", "derive_n",
    "enumerate_owp", "enumerate_syt", "family", "fiber_count", "fiber_counts", "number_table", "op_apply",
    "op_power", "owp_weight", "owp_weight_sum", "parse_poly", "phi", "project", "stat_poly", "syt_expansion",
    "verify", "verify_all",
]
