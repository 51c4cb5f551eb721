"""Exact invariants of polynomial-model real hypersurfaces.

Computes the three classical boundary invariants (contact order with
holomorphic immersions, iterated-commutator length, Levi-trace derivative
length) for polynomial models in C^n, together with the frame normalization
pipeline, weighted truncation, plurisubharmonicity checks and the tangency
equation solver, all in exact Gaussian-rational arithmetic.
"""

from .gaussian import GaussianRational, gr
from .grammar import PolyParseError, parse_poly, poly_to_string
from .invariants import (
    HoloImmersion,
    JetOrderError,
    SweepReport,
    TypeReport,
    VanishingReport,
    WeightAssignmentError,
    assign_weights,
    bracket_pairing_vanishing,
    bracket_span_dim,
    commutator_type,
    contact_search,
    evaluate_bracket_word,
    levi_trace,
    levi_trace_vanishing,
    levi_type,
    order_of_contact,
    truncate_frame,
    truncated_model,
    type_sweep,
)
from .normalize import (
    DEFAULT_TRIAL_SET,
    Frame,
    GenericSlideError,
    NormalizationCertificate,
    NormalizeError,
    Substitution,
    case_split,
    euler_shear,
    generic_slide,
    kill_holomorphic_terms,
    l0_of,
    l0_star,
    normalize_full,
    pushforward_frame,
    shear_normalize,
)
from .poly import (
    INFINITE,
    Poly,
    PolyError,
    PolyRing,
    WeightSystem,
    hypersurface_ring,
    parameter_ring,
)
from .psh import (
    CheckResult,
    LeviMatrix,
    PshError,
    PshVerdict,
    bidegree_psh_check,
    default_grid,
    holo_independence_check,
    levi_matrix,
    monomial_obstruction,
    product_form_check,
    psd_at,
    sampled_psh,
)
from .tangency import (
    SolutionFamily,
    TangencyError,
    TangencyProblem,
    antiderivative_zbar1,
    dilate,
    residual,
    solution_space,
    theorem_harness,
    z2_layer,
)
from .vfield import (
    Hypersurface,
    HypersurfaceError,
    VectorField,
    cr_frame,
    lie_bracket,
    pair_with_drho,
)

__all__ = [name for name in dir() if not name.startswith("_")]
