"""Workbench for semi-fiber products, free resolutions, and lifting tests."""

__version__ = "0.1.0"

from .fields import GF, QQ, DEFAULT_FIELD
from .poly import PolyRing, Poly, Ideal, buchberger, normal_form, morphism_kernel_truncated
from .verdicts import TriState, Verdict, SearchOutcome, SearchResult
from .algebra import (
    PresentedAlgebra,
    AlgebraElement,
    AlgebraMorphism,
    new_algebra,
    minimal_generators,
)
from .homology import (
    FreeComplex,
    ModulePresentation,
    BettiTable,
    minimal_free_resolution,
    poincare_poly,
    base_change,
    homology_dims,
    flatness_certificate,
)
from .constructions import (
    ActionTable,
    SemiFiberPresentation,
    validate_action,
    semi_fiber_product,
    fiber_product,
    trivial_extension,
    tensor_algebra,
    psi_isomorphism,
    decomposition_verify,
    universal_morphism,
)
from .lifting import (
    LiftingProblem,
    alternating_complex,
    check_lifting,
    thm_minimal_generator_test,
    poincare_factorization_test,
    ext2_sufficiency,
    socle_case_decide,
    retraction_search,
    section_search,
    regular_sequence_check,
    cor44_hypothesis_check,
    mT_generates_check,
    main_theorem_harness,
)
from .cli import (
    Manifest,
    ReportDocument,
    parse_manifest,
    pretty_print,
    run_task,
    run_manifest,
    main,
)
