"""Exact cyclic-subgroup counting for small finite groups.

The package builds explicit multiplication tables for the families of
groups that admit closed-form cyclic-subgroup counts (small prime-power
groups, groups of order p*q, p^2*q and p*q^2), counts cyclic subgroups
directly on the tables, and cross-checks the counts against the encoded
formulas and classification lists.
"""

from .groups import Group, GroupError
from .construct import (
    FamilySpec,
    CatalogEntry,
    cyclic,
    direct_product,
    semidirect_cyclic,
    from_pc_presentation,
    dihedral,
    quaternion8,
    alternating_4,
    heisenberg,
    modular_prime_cube,
    group_by_name,
    build_catalog,
    catalog_plan,
)
from .formulas import predicted_total, predicted_count_by_order, lower_bound, classification_list
from .census import (
    Verdict,
    CensusReport,
    run_formula_suite,
    verify_classification,
    lagrange_sweep,
    count_one,
)

__version__ = "0.1.0"

__all__ = [
    "Group",
    "GroupError",
    "FamilySpec",
    "CatalogEntry",
    "cyclic",
    "direct_product",
    "semidirect_cyclic",
    "from_pc_presentation",
    "dihedral",
    "quaternion8",
    "alternating_4",
    "heisenberg",
    "modular_prime_cube",
    "group_by_name",
    "build_catalog",
    "catalog_plan",
    "predicted_total",
    "predicted_count_by_order",
    "lower_bound",
    "classification_list",
    "Verdict",
    "CensusReport",
    "run_formula_suite",
    "verify_classification",
    "lagrange_sweep",
    "count_one",
    "__version__",
]
