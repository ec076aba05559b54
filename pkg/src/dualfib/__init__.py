"""Dual fibrations of finite fibrations, built from classes of vh spans."""

from .category import (CategoryIso, FinCategory, FunctorData, ValidationReport, Violation,
                       compose_functors, hom_set, identity_functor, is_isomorphism, opposite,
                       validate_category, validate_functor)
from .dual import (Comorphism, DualFib, VhSpan, build_dual, compose_comorphisms,
                   double_dual, double_dual_iso, enumerate_comorphisms, fibre_duality_iso,
                   is_cartesian_comorphism_char, span_equivalent, vertical_comorphism_rep)
from .errors import CategoryError, InvalidSetup, NotAFibration, NotComposable, PreconditionError, UnknownId
from .fibration import (CounterexampleReport, FibSetup, cartesian_lifts, fibre, hom_over,
                        is_cartesian, is_fibration, is_vertical)
from .generators import (GenSpec, fibration_gallery, gen_indexed, gen_product,
                         indexed_gallery, sign_fibration, small_category)
from .indexed import (IndexedCat, check_dual_agreement, dualize_indexed, grothendieck,
                      triangle_arrow, validate_indexed)
from .vh import VhPair, compose_pairs, pairs_equivalent, vh_factorize

__version__ = "0.1.0"

__all__ = [
    "CategoryError",
    "CategoryIso",
    "Comorphism",
    "CounterexampleReport",
    "DualFib",
    "FibSetup",
    "FinCategory",
    "FunctorData",
    "GenSpec",
    "IndexedCat",
    "InvalidSetup",
    "NotAFibration",
    "NotComposable",
    "PreconditionError",
    "UnknownId",
    "ValidationReport",
    "VhPair",
    "VhSpan",
    "Violation",
    "build_dual",
    "cartesian_lifts",
    "check_dual_agreement",
    "compose_comorphisms",
    "compose_functors",
    "compose_pairs",
    "double_dual",
    "double_dual_iso",
    "dualize_indexed",
    "enumerate_comorphisms",
    "fibration_gallery",
    "fibre",
    "fibre_duality_iso",
    "gen_indexed",
    "gen_product",
    "grothendieck",
    "hom_over",
    "hom_set",
    "identity_functor",
    "indexed_gallery",
    "is_cartesian",
    "is_cartesian_comorphism_char",
    "is_fibration",
    "is_isomorphism",
    "is_vertical",
    "opposite",
    "pairs_equivalent",
    "sign_fibration",
    "small_category",
    "span_equivalent",
    "triangle_arrow",
    "validate_category",
    "validate_functor",
    "validate_indexed",
    "vertical_comorphism_rep",
    "vh_factorize",
]
