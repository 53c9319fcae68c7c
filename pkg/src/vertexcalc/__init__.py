"""Exact formal calculus for nonlocal vertex algebras over the rationals.

The package provides a windowed formal-distribution kernel, structure
checkers for finite-dimensional vertex-algebra-like structures (with and
without the locality axiom), builders for cocycle twists, matrix and tensor
algebras and cross products, module checkers, and a closure engine that
generates such structures from compatible vertex operators acting on a
finite-dimensional space.

All scalars are exact rationals; there is no floating point anywhere.
Distributions are observed on finite windows: refutations are always
conclusive, and confirmations are exact-complete whenever support
descriptors certify that nothing escapes the window, otherwise they are
flagged window-sound.
"""

from .algebra import (
    AlgebraStructure,
    check_creation_exponential,
    check_d_bracket,
    check_jacobi,
    check_skew_symmetry,
    d_operator,
    find_locality_k,
    find_weak_assoc_l,
    generate_subalgebra,
    localizer,
    stabilizer,
    validate_structure,
    weak_assoc_triple,
)
from .construct import (
    AssocAlgebraData,
    CocycleData,
    GradedTag,
    GroupActionData,
    RMap,
    check_jacobi_like,
    cocycle_twist,
    cross_product,
    from_assoc_with_derivation,
    full_matrix_algebra,
    group_algebra,
    matrix_algebra,
    tensor_product,
)
from .errors import (
    CapExceeded,
    CocycleInvalid,
    ExponentOutsideWindow,
    GradingInvalid,
    MalformedStructure,
    NonNilpotentD,
    NonSummableProduct,
    NotADerivation,
    NotAnAutomorphism,
    NotCompatible,
    ParseError,
    ValidationError,
    VertexCalcError,
)
from .fileio import AlgebraBundle, algebra_to_data, parse_algebra_file, write_algebra_file
from .modules import (
    ModuleStructure,
    adjoint_module,
    check_locality_transfer,
    check_module,
    check_product_compatibility,
    tensor_module,
    wn_module,
)
from .operators import (
    ClosureResult,
    OperatorSpan,
    VertexOperator,
    check_prop_assoc,
    closure,
    find_compat_order,
    identity_operator,
    nth_product,
    nth_product_local,
    operator_from_structure,
    truncated_t,
    verify_module_structure,
)
from .report import CheckReport, OrderSearch, Witness
from .series import (
    Distribution,
    RegionTag,
    Window,
    WindowVerdict,
    binom,
    binom_expand,
    delta_series,
    delta_three_term,
    derivative,
    mul,
    power_expand,
    residue,
    taylor_shift,
    window_equal,
)
from .suite import SuiteOptions, SuiteReport, emit_report, run_suite

__all__ = [
    "AlgebraBundle",
    "AlgebraStructure",
    "AssocAlgebraData",
    "CapExceeded",
    "CheckReport",
    "ClosureResult",
    "CocycleData",
    "CocycleInvalid",
    "Distribution",
    "ExponentOutsideWindow",
    "GradedTag",
    "GradingInvalid",
    "GroupActionData",
    "MalformedStructure",
    "ModuleStructure",
    "NonNilpotentD",
    "NonSummableProduct",
    "NotADerivation",
    "NotAnAutomorphism",
    "NotCompatible",
    "OperatorSpan",
    "OrderSearch",
    "ParseError",
    "RMap",
    "RegionTag",
    "SuiteOptions",
    "SuiteReport",
    "ValidationError",
    "VertexCalcError",
    "VertexOperator",
    "Window",
    "WindowVerdict",
    "Witness",
    "adjoint_module",
    "algebra_to_data",
    "binom",
    "binom_expand",
    "check_creation_exponential",
    "check_d_bracket",
    "check_jacobi",
    "check_jacobi_like",
    "check_locality_transfer",
    "check_module",
    "check_product_compatibility",
    "check_prop_assoc",
    "check_skew_symmetry",
    "closure",
    "cocycle_twist",
    "cross_product",
    "d_operator",
    "delta_series",
    "delta_three_term",
    "derivative",
    "emit_report",
    "find_compat_order",
    "find_locality_k",
    "find_weak_assoc_l",
    "from_assoc_with_derivation",
    "full_matrix_algebra",
    "generate_subalgebra",
    "group_algebra",
    "identity_operator",
    "localizer",
    "matrix_algebra",
    "mul",
    "nth_product",
    "nth_product_local",
    "operator_from_structure",
    "parse_algebra_file",
    "power_expand",
    "residue",
    "run_suite",
    "stabilizer",
    "taylor_shift",
    "tensor_product",
    "truncated_t",
    "validate_structure",
    "verify_module_structure",
    "weak_assoc_triple",
    "window_equal",
    "wn_module",
    "write_algebra_file",
]
