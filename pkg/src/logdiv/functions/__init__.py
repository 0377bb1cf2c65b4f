from ._errors import (
    ContextMismatchError, NotGroebnerError, OrderError, ParseError,
    NotReducedError, InconsistentBasisError, SpencerError,
    ImplicationViolation, InconclusiveError, DeadlineExceeded,
    Deadline, check_deadline)
from ._polynomials import (
    Poly, MonomialOrder, IdealBasis, polynomial_ring, variable_names,
    common_ring, format_poly, poly_to_json, rational, total_degree)
from ._groebner import (
    spoly, buchberger, groebner_basis, normal_form, ideal_contains,
    elimination_ideal, ideal_equal, minimalize, interreduce)
from ._syzygies import extended_groebner, syzygies, contract
from ._dimension import krull_dimension
from ._parse_expression import tokenize, parse_expression, expression_variables
from ._log_derivations import (
    DivisorInput, LogDerivation, SaitoBasis, as_divisor, repeated_factor,
    determinant, adjugate, jacobian_ideal, log_derivations, saito_basis)
from ._homogeneity import is_euler_homogeneous, is_quasi_homogeneous, weighted_degree
from ._rees_kernel import (
    symbol_ring, theta_generators, rees_kernel, rees_evaluate,
    is_linear_jacobian_type, theta_in_rees_kernel)
from ._koszul import order_symbols, is_koszul_free, theta_koszul_check
from ._classify import (
    ClassificationReport, classify, check_implications, implication_violations,
    corpus_divisors, implication_table)
from ._weyl_algebra import WeylOp, weyl_mul, derivation_operator
from ._fs_module import FsElement, FsVector, FsActor, act_on_fs, leading_fs_coefficient
from ._weyl_groebner import weyl_groebner, weyl_reduce, weyl_variable_names
from ._bfunction import (
    BFunction, theta_operators, verify_functional_equation,
    bfunction_via_theta, lct_threshold)
from ._connections import (
    ILCData, StructureFunctions, structure_functions, check_integrability,
    validate_ilc, twist, dual, b_twist, coordinate_connection, load_ilc)
from ._linear_algebra import SparseMatrix, rank, left_kernel
from ._spencer import (
    SpencerSpec, TruncatedComplex, SpecializationReport, build_spencer,
    check_exactness, is_exact, homology_records, graded_koszul_check, specialize_and_check, export_complex)
from ._tables import to_frame


__all__ = [
    "ContextMismatchError",
    "NotGroebnerError",
    "OrderError",
    "ParseError",
    "NotReducedError",
    "InconsistentBasisError",
    "SpencerError",
    "ImplicationViolation",
    "InconclusiveError",
    "DeadlineExceeded",
    "Deadline",
    "check_deadline",
    "Poly",
    "MonomialOrder",
    "IdealBasis",
    "polynomial_ring",
    "variable_names",
    "common_ring",
    "format_poly",
    "total_degree",
    "poly_to_json",
    "rational",
    "spoly",
    "buchberger",
    "groebner_basis",
    "normal_form",
    "ideal_contains",
    "elimination_ideal",
    "ideal_equal",
    "minimalize",
    "interreduce",
    "extended_groebner",
    "syzygies",
    "contract",
    "krull_dimension",
    "tokenize",
    "parse_expression",
    "expression_variables",
    "DivisorInput",
    "LogDerivation",
    "SaitoBasis",
    "as_divisor",
    "repeated_factor",
    "determinant",
    "adjugate",
    "jacobian_ideal",
    "log_derivations",
    "saito_basis",
    "is_euler_homogeneous",
    "is_quasi_homogeneous",
    "weighted_degree",
    "symbol_ring",
    "theta_generators",
    "rees_kernel",
    "rees_evaluate",
    "is_linear_jacobian_type",
    "theta_in_rees_kernel",
    "order_symbols",
    "is_koszul_free",
    "theta_koszul_check",
    "ClassificationReport",
    "classify",
    "check_implications",
    "implication_violations",
    "corpus_divisors",
    "implication_table",
    "WeylOp",
    "weyl_mul",
    "derivation_operator",
    "FsElement",
    "FsVector",
    "FsActor",
    "act_on_fs",
    "leading_fs_coefficient",
    "weyl_groebner",
    "weyl_reduce",
    "weyl_variable_names",
    "BFunction",
    "theta_operators",
    "verify_functional_equation",
    "bfunction_via_theta",
    "lct_threshold",
    "ILCData",
    "StructureFunctions",
    "structure_functions",
    "check_integrability",
    "validate_ilc",
    "twist",
    "dual",
    "b_twist",
    "coordinate_connection",
    "load_ilc",
    "SparseMatrix",
    "rank",
    "left_kernel",
    "SpencerSpec",
    "TruncatedComplex",
    "SpecializationReport",
    "build_spencer",
    "check_exactness",
    "is_exact",
    "homology_records",
    "graded_koszul_check",
    "specialize_and_check",
    "export_complex",
    "to_frame",
]
