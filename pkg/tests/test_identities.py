from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hta.algebra import Constants2D, change_basis, from_constants2d, specialize, zero_algebra
from hta.errors import (
    ArityMismatch,
    PreconditionBinaryNonzero,
    PreconditionDotNonzero,
    PreconditionStarNonzero,
    UnknownIdentity,
    WrongDimension,
)
from hta.fixtures import FIXTURES
from hta.identities import (
    holds,
    HTA_SET,
    IDENTITIES,
    all_pass,
    check_bol,
    check_hta,
    check_identity,
    check_lta,
    check_lts,
    check_reduced,
    compute_J,
    compute_N,
    is_hta,
    is_reduced_valid,
    residual,
    residual_at,
    variety_predicate,
)
from hta.templates import THEOREM_ORDER, template

from conftest import constants, invertible_2x2, k, valid_constants

CLAIMED = FIXTURES["section2-claimed"].value
REF3 = FIXTURES["ref3-example"].value


def failing(reports):
    return {r.identity for r in reports if not r.passed}


def test_h2_zero_algebra():
    for args in product(range(2), repeat=3):
        assert residual(zero_algebra(2), "H2", args) == (0, 0)


@given(constants())
def test_h2_collapses_on_repeated_argument(k8):
    assert residual(from_constants2d(k8), "H2", (0, 0, 1)) == (0, 0)


@given(constants())
def test_h9_on_uvuv_is_twice_n(k8):
    a, b, c, d, e, f, kk, l = k8.as_tuple()
    expected = (2 * (b * kk - a * l), 2 * (a * f - b * e))
    assert residual(from_constants2d(k8), "H9", (0, 1, 0, 1)) == expected


def test_residual_errors():
    with pytest.raises(ArityMismatch):
        residual(REF3, "H9", (0, 1))
    with pytest.raises(UnknownIdentity):
        residual(REF3, "H99", (0,))
    with pytest.raises(WrongDimension):
        residual(zero_algebra(3), "R18", ())


def test_every_identity_passes_on_zero_algebra():
    alg = zero_algebra(2)
    for tag in IDENTITIES:
        r = check_identity(alg, tag)
        assert r.passed and not r.violations


def test_claimed_constants_fail_r19_with_j():
    r = check_identity(CLAIMED, "R19")
    assert not r.passed
    assert r.violations[0].value == (-2, 0)


def test_claimed_constants_r18_residual_is_n():
    # the literal residual is +N; the negated form would differ only by convention
    r = check_identity(CLAIMED, "R18")
    assert not r.passed
    assert r.violations[0].value == (2, 2)


def test_r18_and_r19_agree_where_r14_holds():
    grid = [from_constants2d(Constants2D.of(p)) for p in product((-1, 0, 1), repeat=8)]
    with_r14 = [alg for alg in grid if holds(alg, "R14")]
    assert with_r14
    assert all(holds(alg, "R18") == holds(alg, "R19") for alg in with_r14)
    # without R14 the two are independent
    assert any(holds(alg, "R18") != holds(alg, "R19") for alg in grid)


def test_ref3_passes_full_system():
    assert all_pass(check_hta(REF3))
    assert [r.identity for r in check_hta(REF3)] == list(HTA_SET)


@pytest.mark.parametrize("name", THEOREM_ORDER)
def test_theorem_defaults_pass(name):
    alg = from_constants2d(template(name).default_constants())
    assert all_pass(check_hta(alg))
    assert all_pass(check_reduced(alg))


def test_trace_two_triple_fails():
    alg = k(0, 0, 0, 0, 1, 0, 0, 1)
    assert not all_pass(check_hta(alg))
    assert failing(check_hta(alg)) == {"H6", "H13"}
    assert failing(check_reduced(alg)) == {"R15"}


def test_check_bol():
    assert all_pass(check_bol(k(0, 0, 1, 0, 1, 2, 3, -1)))
    assert all_pass(check_bol(zero_algebra(2)))
    with pytest.raises(PreconditionDotNonzero):
        check_bol(REF3)


def test_check_lta():
    assert all_pass(check_lta(k(1, 0, 0, 0, 0, 0, 1, 0)))
    assert all_pass(check_lta(zero_algebra(2)))
    with pytest.raises(PreconditionStarNonzero):
        check_lta(REF3)


def test_check_lts():
    assert all_pass(check_lts(k(0, 0, 0, 0, 1, 0, 0, -1)))
    assert not all_pass(check_lts(k(0, 0, 0, 0, 1, 0, 0, 1)))
    assert all_pass(check_lts(zero_algebra(2)))
    with pytest.raises(PreconditionBinaryNonzero):
        check_lts(k(0, 0, 1, 0, 0, 0, 0, 0))


@given(constants())
def test_j_vanishes_with_trace_zero(k8):
    alg = from_constants2d(k8.replace(l=-k8.e))
    assert compute_J(alg) == (0, 0)
    assert compute_J(from_constants2d(k8.replace(c=0, d=0))) == (0, 0)


@given(constants())
def test_j_and_n_closed_forms(k8):
    a, b, c, d, e, f, kk, l = k8.as_tuple()
    alg = from_constants2d(k8)
    assert compute_J(alg) == ((e + l) * c, (e + l) * d)
    assert compute_N(alg) == (b * kk - a * l, a * f - b * e)
    assert compute_N(from_constants2d(k8.replace(a=0, b=0))) == (0, 0)


def test_j_and_n_examples():
    assert compute_J(k(0, 0, 1, 0, -1, 0, 0, -1)) == (-2, 0)
    assert compute_N(CLAIMED) == (2, 2)
    assert compute_N(REF3) == (0, 0)
    with pytest.raises(WrongDimension):
        compute_N(zero_algebra(3))


def test_variety_predicate_examples():
    assert variety_predicate(Constants2D.of([0] * 8))
    assert not variety_predicate(Constants2D.of([1, 1, 1, 0, -1, 1, 1, -1]))
    vii = Constants2D.of([1, 1, 1, 1, 1, 1, -1, -1])
    assert vii.a * vii.f - vii.b * vii.e == 0 and vii.b * vii.k + vii.a * vii.e == 0
    assert variety_predicate(vii)


@settings(max_examples=60, deadline=None)
@given(valid_constants(), invertible_2x2())
def test_validity_is_basis_invariant(k8, P):
    alg = from_constants2d(k8)
    moved = change_basis(alg, P)
    assert is_hta(alg) and is_hta(moved)
    assert is_reduced_valid(moved)


@settings(max_examples=60, deadline=None)
@given(constants(), invertible_2x2())
def test_invalidity_is_basis_invariant(k8, P):
    alg = from_constants2d(k8)
    assert is_hta(change_basis(alg, P)) == is_hta(alg)


@settings(max_examples=60, deadline=None)
@given(st.one_of(constants(), valid_constants()))
def test_full_and_reduced_agree(k8):
    alg = from_constants2d(k8)
    assert is_hta(alg) == is_reduced_valid(alg) == variety_predicate(k8)
    assert all_pass(check_hta(alg)) == is_hta(alg)


@settings(max_examples=40, deadline=None)
@given(constants())
def test_specialization_equivalences(k8):
    bol = specialize(from_constants2d(k8), "zero_dot")
    assert all_pass(check_bol(bol)) == is_hta(bol)
    lta = specialize(from_constants2d(k8), "zero_star")
    assert all_pass(check_lta(lta)) == is_hta(lta)


@pytest.mark.parametrize("tag", ["H5", "H6", "H9", "H10", "H11", "BOL2", "LTA3"])
def test_basis_tuples_determine_residual_at_vectors(tag):
    """Multilinearity: the value at arbitrary vectors is the expansion over basis tuples."""
    rng = random.Random(tag)
    k8 = Constants2D.of([Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(8)])
    alg = from_constants2d(k8)
    if tag == "BOL2":
        alg = specialize(alg, "zero_dot")
    if tag == "LTA3":
        alg = specialize(alg, "zero_star")
    arity = IDENTITIES[tag].arity
    vectors = [tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2)) for _ in range(arity)]
    expected = [Fraction(0), Fraction(0)]
    for args in product(range(2), repeat=arity):
        coeff = Fraction(1)
        for v, i in zip(vectors, args):
            coeff *= v[i]
        r = residual(alg, tag, args)
        expected = [x + coeff * y for x, y in zip(expected, r)]
    assert residual_at(alg, tag, vectors) == tuple(expected)


def test_reduced_identities_take_indices_not_vectors():
    with pytest.raises(ArityMismatch):
        residual_at(REF3, "R15", [(1, 0)])


def test_violation_limit_keeps_count():
    alg = k(3, -1, 2, 5, 1, 2, 3, 4)
    r = check_identity(alg, "H13", limit=2)
    assert not r.passed
    assert len(r.violations) == 2
    assert r.violation_count > 2
    assert r.tuples_checked == 2**7
