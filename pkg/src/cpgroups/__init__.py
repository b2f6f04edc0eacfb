"""Finite groups by multiplication table, central products, and the
normal / subnormal / abnormal embedding of their subgroups."""

__version__ = "0.1.0"

from .catalog import catalog_group
from .config import DEFAULT_LIMITS, Limits
from .core import (
    Element,
    Group,
    Subgroup,
    center,
    centralizer,
    conjugate,
    conjugate_subgroup,
    inverse,
    multiply,
    normalizer,
)
from .embedding import (
    ClassificationReport,
    EmbeddingVerdict,
    classify_subgroups,
    is_abnormal_central,
    is_abnormal_definition,
    is_normal_characterization,
    is_normal_definition,
    is_normal_preimage,
    is_subnormal_characterization,
    minimal_subnormal_r,
    subnormal_defect_oracle,
)
from .errors import BudgetError, GroupError, MethodDisagreement, SpecSyntaxError, ValidationError
from .isoid import are_isomorphic, identify
from .lattice import (
    all_subgroups,
    commutator_subgroup,
    derived_series,
    generated_subgroup,
    intersect,
    iterated_commutator,
    join,
)
from .morphisms import Homomorphism, correspondence_check, make_homomorphism, preimage_subgroup, quotient
from .products import (
    CentralProduct,
    CentralProductSpec,
    canonical_epimorphism,
    direct_product,
    external_central_product,
    internal_external_iso_check,
    is_internal_central_product,
)
