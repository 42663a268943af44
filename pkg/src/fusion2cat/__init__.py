"""Fusion rules of module categories over pointed braided fusion categories.

Exact arithmetic on finite abelian groups, Q/Z-valued forms and the fusion
of simple objects ``(E, psi)``, with a brute-force oracle for cross-checks.
"""

from .abelian import (
    DEFAULT_ENUMERATION_LIMIT,
    AbelianGroup,
    DirectSum,
    SNFDecomposition,
    Subgroup,
    canonicalize_subgroup,
    direct_sum,
    enumerate_subgroups,
    hermite_normal_form,
    image_under_sum,
    intersect,
    left_kernel,
    member,
    smith_normal_form,
    solve_left,
    subgroup_sum,
)
from .errors import (
    AmbientMismatchError,
    Fusion2CatError,
    InternalInvariantError,
    InvalidBraidingError,
    InvalidElementError,
    InvalidFormError,
    InvalidInputError,
    ResourceLimitError,
)
from .forms import (
    AlternatingForm,
    Bicharacter,
    QmodZ,
    alt_part,
    build_pair_form,
    descend_form,
    enumerate_alternating_forms,
    enumerate_bicharacters,
    evaluate,
    orthogonal_complement,
    parse_rational,
    restrict,
    validate_bicharacter,
)
from .fusion import (
    BraidedPointedCategory,
    FusionResult,
    FusionSteps,
    FusionTable,
    SimpleObject,
    VerificationReport,
    dual,
    enumerate_simples,
    fuse,
    fusion_steps,
    fusion_table,
    make_simple,
    unit,
    verify_ring,
)
from .oracle import (
    oracle_alternating_forms,
    oracle_complement,
    oracle_fuse,
    oracle_span,
    oracle_subgroups,
)

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memoized intermediate result, e.g. before a timing run."""
    from . import abelian, forms, fusion, oracle

    for module in (abelian, forms, fusion, oracle):
        for obj in vars(module).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()
