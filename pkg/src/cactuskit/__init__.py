"""Cactus groups of Coxeter systems: presentations, abelianizations, sections."""
from .coxeter import (
    CoxeterInputError,
    CoxeterMatrix,
    FiniteTypeLabel,
    omega_action,
    parse_coxeter,
    preset,
    recognize_finite_type,
)
from .cactus import (
    CactusPresentation,
    Relation,
    abelianization,
    defining_presentation,
    enumerate_F,
    equivalence_classes,
)
from .sections import (
    SectionCandidate,
    catalog_section,
    search_cross_section,
    search_transversal_section,
    verify_cross_section,
    verify_section,
    verify_transversal_section,
)
from .tietze import (
    derive_via_steps,
    find_free_product_quotient,
    lower_central_z2z2,
    section_presentation,
)
from .perm import BACKEND

__version__ = "0.1.0"
