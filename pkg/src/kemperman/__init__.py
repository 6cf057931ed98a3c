"""Exact verification of dimension bounds for product spans <AB> in field
extensions, with the matching set-side checks in small finite groups."""

from .errors import (
    AmbientError,
    ConditionError,
    DegreeOverflowError,
    EnumerationCapError,
    GroupError,
    InvariantError,
    KempermanError,
    MixedAmbientError,
)
from .ffield import Element, FiniteExtension, RationalFunctionField, make_ambient, subfield
from .groupsets import GroupTable, GSet, olson_find, parse_group, product_set
from .report import TheoremReport
from .subspace import (
    Subspace,
    base_space,
    contains,
    enumerate_nonzero,
    equals,
    is_subspace_of,
    product_span,
    scale,
    span,
    subspace_intersect,
    subspace_sum,
    whole_space,
    zero_space,
)
from .theorems import (
    OlsonCertificate,
    PowerChainReport,
    UniqueRepInstance,
    check_abc_linear,
    check_cor3,
    check_full_product,
    check_kneser_linear,
    check_torsion_free,
    check_unique_rep,
    duality_witness,
    h_module_decompose,
    is_field_subspace,
    olson_linear,
    power_chain,
    stabilizer,
    unique_rep_transform_step,
)
from .transform import TransformTrace, find_pivot, reduce_pair, transform_pair

__version__ = "0.1.0"
