"""Unitals, their translations, and the Figueroa polar unital."""

from .analysis import (
    ClassificationReport,
    ConstantIntersectionReport,
    SharpTransitivityReport,
    SubunitalReport,
    classify,
    constant_intersection_check,
    sharply_transitive_suite,
    subunital_analysis,
)
from .figueroa import (
    FigueroaBundle,
    FigueroaVerification,
    figueroa_bundle,
    figueroa_unital,
    hermitian_restriction,
    hermitian_subunital,
    verify_figueroa_theorems,
)
from .gf import Field, FieldElement, make_field, make_field_of_order, prime_power
from .incidence import (
    Incidence,
    OnanResult,
    Unital,
    ValidationReport,
    fisher_check,
    format_unital,
    ideal_embedding_check,
    isomorphism_search,
    onan_search,
    parse_unital,
    read_unital,
    restrict_to,
    validate_unital,
    write_unital,
)
from .permgroup import (
    PermGroup,
    generalized_dihedral_check,
    gleason_check,
    is_transitive,
    is_two_transitive,
    two_point_stabilizer_orbits,
    unique_involution_check,
)
from .plane import ProjectivePlane, hermitian_unital, projective_plane, unitary_polarity
from .translations import (
    TranslationAtlas,
    build_atlas,
    is_translation,
    orbit_congruence_check,
    translation_transitivity_check,
    translations_at,
)

__version__ = "0.1.0"

__all__ = [
    "ClassificationReport",
    "ConstantIntersectionReport",
    "Field",
    "FieldElement",
    "FigueroaBundle",
    "FigueroaVerification",
    "Incidence",
    "OnanResult",
    "PermGroup",
    "ProjectivePlane",
    "SharpTransitivityReport",
    "SubunitalReport",
    "TranslationAtlas",
    "Unital",
    "ValidationReport",
    "build_atlas",
    "classify",
    "constant_intersection_check",
    "figueroa_bundle",
    "figueroa_unital",
    "fisher_check",
    "format_unital",
    "generalized_dihedral_check",
    "gleason_check",
    "hermitian_restriction",
    "hermitian_subunital",
    "hermitian_unital",
    "ideal_embedding_check",
    "is_translation",
    "is_transitive",
    "is_two_transitive",
    "isomorphism_search",
    "make_field",
    "make_field_of_order",
    "onan_search",
    "orbit_congruence_check",
    "parse_unital",
    "prime_power",
    "projective_plane",
    "read_unital",
    "restrict_to",
    "sharply_transitive_suite",
    "subunital_analysis",
    "translation_transitivity_check",
    "translations_at",
    "two_point_stabilizer_orbits",
    "unique_involution_check",
    "unitary_polarity",
    "validate_unital",
    "verify_figueroa_theorems",
    "write_unital",
]
