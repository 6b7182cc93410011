"""idemx: finite-model checks for min/max-preserving functional extenders.

The library builds finite topological spaces, functionals on their function
spaces, hyperspaces of nonempty subsets, set-valued maps with semicontinuity
predicates, and extenders between function spaces, and mechanically verifies
the identities tying them together at desk scale.
"""

from .errors import (
    AxiomPrecheckFailed,
    BudgetExhaustedInconclusive,
    ClassificationFailed,
    EmptySet,
    IdemxError,
    InvariantViolation,
    MembershipViolation,
    ModeArity,
    NotARetraction,
    NotNormalized,
    ParseError,
    PreorderViolation,
    SpaceMismatch,
    TooLarge,
    UnknownAxiom,
    UnknownSuite,
)
from .spaces import (
    FiniteTopSpace,
    MetricSpace,
    SubspaceEmbedding,
    closure,
    discrete,
    embed,
    from_minimal_basis,
    induced_subspace,
    is_connected,
    is_open,
    line_metric,
    sierpinski,
)
from .functionals import (
    AXIOMS,
    AxiomReport,
    AxiomWitness,
    Classification,
    DualFunctional,
    Functional,
    IdempotentDensity,
    LambdaFunctional,
    MeanFunctional,
    RealFunction,
    SubsetFamily,
    SupportFunctional,
    TableFunctional,
    agreement_family,
    check_axiom,
    classify,
    constant,
    density,
    density_eval,
    dirac,
    dual,
    essential_family,
    fmax,
    fmin,
    from_mapping,
    indicator,
    infsup_reconstruct,
    is_essential,
    support,
    support_functional,
)
from .hyperspace import (
    HyperPoint,
    RoundtripReport,
    VietorisNbhd,
    enumerate_hyperspace,
    functional_topology,
    hausdorff_distance,
    hyperspace_roundtrip,
    lipschitz_constant,
    subset_max,
    subset_min,
    vietoris_contains,
    vietoris_topology,
)
from .setmaps import (
    SemicontinuityCheck,
    SetValuedMap,
    identity_map,
    is_connected_valued,
    is_continuous,
    is_lsc,
    is_retraction,
    is_usc,
    search_retraction,
    semicontinuity_report,
    setmap,
)
from .extenders import (
    AlgebraReport,
    ConnectivityReport,
    Extender,
    FromRetraction,
    FunctionClassReport,
    SemicontinuityTheoremReport,
    build_extender,
    check_open_extension_algebra,
    connectivity_analysis,
    extend_open_set,
    function_class,
    identity_extender,
    mu_at,
    retraction_from_open_sets,
    supports_retraction,
    verify_semicontinuity_theorem,
)

__version__ = "0.1.0"
