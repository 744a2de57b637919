"""Exact structure-constant toolkit for hyporeductive triple algebras."""

from .algebra import (
    Algebra,
    Constants2D,
    change_basis,
    change_basis_generic,
    constants2d,
    eval_binary,
    eval_ternary,
    from_constants2d,
    make_algebra,
    specialize,
    zero_algebra,
)
from .classify import (
    ClassificationResult,
    Inconclusive,
    InvariantRecord,
    IsoWitness,
    TemplateId,
    classify,
    classify_bol,
    classify_lta,
    find_isomorphism,
    invariants,
)
from .connection import ConnectionData, algebra_from_connection, audit_connection_example
from .documents import emit_algebra, emit_connection, parse_algebra, parse_connection
from .explorer import GridSpec, enumerate_grid, oracle_isomorphic, random_algebra
from .fixtures import FIXTURES, get_fixture
from .identities import (
    all_pass,
    check_bol,
    check_hta,
    check_identity,
    check_lta,
    check_lts,
    check_reduced,
    compute_J,
    compute_N,
    residual,
    variety_predicate,
)
