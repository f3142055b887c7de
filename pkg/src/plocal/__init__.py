"""Distinguished p-subgroup collections and poset topology for finite permutation groups."""

__version__ = "0.1.0"

from .config import DEFAULT_LIMITS, Limits, limits_with
from .errors import (
    ConfigError,
    CrossValidationError,
    DomainError,
    Error,
    ParseError,
    ResourceLimitError,
    UnknownNameError,
)
from .groups import (
    GroupHandle,
    SubgroupHandle,
    build_group,
    center,
    centralizer,
    conjugacy_classes,
    intersection,
    normalizer,
    omega1_center,
    p_core,
    subgroup_from_elements,
    subgroup_from_gens,
    sylow_p,
    trivial_subgroup,
    whole_group,
)
from .perms import parse_gens, parse_perm, format_perm
from .pcollect import (
    Collection,
    CollectionKind,
    build_collection,
    characteristic_classification,
    contains_p_central,
    enumerate_p_subgroups,
    has_characteristic_p,
    hat_subgroup,
    is_distinguished,
    is_p_central,
    is_p_centric,
    is_p_radical,
    local_core,
    p_central_data,
    radical_closure,
)
from .posets import (
    GPoset,
    SimplicialComplex,
    build_poset,
    fixed_subposet,
    load_complex,
    load_poset,
    subgroup_poset,
    truncate,
)
from .certificates import (
    ContractionCertificate,
    PosetSelfMap,
    central_product_certificate,
    check_certificate,
    cone_certificate,
    normalizer_contraction_certificate,
    subgroup_product,
)
from .homology import (
    HomologyProfile,
    collapse,
    cross_check_small,
    homology,
    rank_oracles,
    reduced_euler,
)
from .quotients import QuotientContext, build_frakS, noncentral_type, quotient_context
from .lefschetz import (
    ClassFunction,
    cross_validate,
    lefschetz_fixed_point,
    lefschetz_induced,
    p_singular_vanishing,
    vertex_screen,
)
from .library import build_library_group, library_lookup, library_names
from .reports import SuiteResult, VerificationReport, run_suite
from .verify import THEOREM_IDS, canonical_id, verify
