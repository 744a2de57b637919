from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from hta.algebra import Constants2D, change_basis, constants2d, from_constants2d, inverse, matmul, zero_algebra
from hta.classify import (
    Inconclusive,
    IsoWitness,
    classify,
    classify_bol,
    classify_lta,
    family_of,
    find_isomorphism,
    invariants,
    match_templates,
)
from hta.errors import NotValidBol, NotValidHta, PreconditionDotNonzero, PreconditionStarNonzero
from hta.explorer import GridSpec, oracle_isomorphic
from hta.fixtures import FIXTURES
from hta.templates import CATALOGS, THEOREM_ORDER, template

from conftest import invertible_2x2, k, random_matrix, valid_constants

SWAP = ((0, 1), (1, 0))
REF3 = FIXTURES["ref3-example"].value
HYPERBOLIC = FIXTURES["type-I-hyperbolic"].value
ELLIPTIC = FIXTURES["type-I-elliptic"].value


def labels(k8):
    return {t.label for t in match_templates(k8)}


def test_invariants_zero():
    inv = invariants(zero_algebra(2))
    assert inv.star_zero and inv.dot_zero and inv.triple_zero
    assert inv.trace_T == 0 and inv.sign_det_T == 0


def test_invariants_hyperbolic():
    inv = invariants(HYPERBOLIC)
    assert inv.star_zero and inv.dot_zero and not inv.triple_zero
    assert inv.trace_T == 0 and inv.sign_det_T == -1


def test_invariants_ref3():
    inv = invariants(REF3)
    assert not inv.star_zero and not inv.dot_zero
    assert inv.trace_T == 0 and inv.imT_in_span_dot is True


def test_invariants_require_valid():
    with pytest.raises(NotValidHta):
        invariants(FIXTURES["section2-claimed"].value)


def test_family_of():
    assert family_of(zero_algebra(2)) == "I"
    assert family_of(FIXTURES["type-V"].value) == "V"
    assert family_of(REF3) == "VI_VIII"
    assert family_of(FIXTURES["type-II"].value) == "II_IV"


def test_match_templates_zero():
    matched = match_templates(Constants2D.of([0] * 8))
    ids = {(t.catalog, t.index) for t in matched}
    assert {("THEOREM", "I"), ("T", "T1"), ("B", "B1")} <= ids
    t1 = next(t for t in matched if t.index == "T1")
    assert t1.bindings == {"α": 0, "β": 0, "γ": 0}


def test_match_templates_type_ii():
    got = labels(Constants2D.of([1, 0, 0, 0, 0, 0, 1, 0]))
    assert {"(II)", "T2"} <= got


def test_match_templates_type_v():
    matched = match_templates(Constants2D.of([0, 0, 1, 2, 1, 3, 5, -1]))
    assert {"(V)", "B2"} <= {t.label for t in matched}
    v = next(t for t in matched if t.label == "(V)")
    assert v.bindings == {"c": 1, "d": 2, "e": 1, "f": 3, "k": 5}


def test_side_conditions_are_verbatim():
    assert template("IV").side_conditions == ("a≠0", "b≠0", "e≠0", "f≠0", "k≠-e", "af-be=0", "bk+ae=0")


def test_classify_zero():
    res = classify(zero_algebra(2))
    assert (res.family, res.theorem_type) == ("I", "I")
    assert res.witness == ((1, 0), (0, 1))


def test_classify_ref3():
    res = classify(REF3)
    assert res.family == "VI_VIII" and res.theorem_type == "VI"
    c = res.canonical_constants
    assert (c.a, c.c, c.d, c.k) == (1, 0, 1, -1)


def test_classify_type_iii_instance():
    alg = k(1, 1, 0, 0, 0, 0, 0, 0)
    res = classify(alg)
    assert res.family == "II_IV" and res.theorem_type == "II"
    c = res.canonical_constants
    assert (c.a, c.b, c.k) == (1, 0, 0)
    assert "(III)" in {t.label for t in res.matched_templates}
    assert constants2d(change_basis(alg, res.witness)) == c


def test_classify_rejects_invalid():
    with pytest.raises(NotValidHta):
        classify(FIXTURES["section2-claimed"].value)


@pytest.mark.parametrize("name", [n for n, f in FIXTURES.items() if f.checker == "hta"])
def test_classification_witness_verifies_on_fixtures(name):
    alg = FIXTURES[name].value
    res = classify(alg)
    assert constants2d(change_basis(alg, res.witness)) == res.canonical_constants
    assert template(res.theorem_type).matches(res.canonical_constants)


@settings(max_examples=60, deadline=None)
@given(valid_constants(), invertible_2x2())
def test_classification_is_basis_independent(k8, P):
    alg = from_constants2d(k8)
    moved = change_basis(alg, P)
    a, b = classify(alg), classify(moved)
    assert a.family == b.family
    assert a.theorem_type == b.theorem_type
    assert invariants(alg).obstruction_key() == invariants(moved).obstruction_key()


def test_classify_lta_examples():
    assert classify_lta(zero_algebra(2)).index == "T1"
    t2 = classify_lta(k(1, 0, 0, 0, 0, 0, 1, 0))
    assert t2.index == "T2" and t2.bindings == {"k": 1}
    assert classify_lta(k(1, 1, 0, 0, 0, 0, 0, 0)).index == "T3"
    with pytest.raises(PreconditionStarNonzero):
        classify_lta(REF3)


def test_classify_bol_examples():
    assert classify_bol(k(0, 0, 0, 0, 1, 2, 3, -1)).index == "B1"
    assert classify_bol(k(0, 0, 1, 1, 1, 1, 1, -1)).index == "B2"
    assert classify_bol(k(0, 0, 1, 0, 1, 0, 0, -1)).index == "B12"
    with pytest.raises(PreconditionDotNonzero):
        classify_bol(REF3)
    with pytest.raises(NotValidBol):
        classify_bol(k(0, 0, 1, 0, 1, 0, 0, 1))


@pytest.mark.parametrize("t", CATALOGS["B"] + CATALOGS["T"], ids=lambda t: t.name)
def test_special_catalog_defaults_classify_to_themselves(t):
    alg = from_constants2d(t.default_constants())
    got = classify_bol(alg) if t.catalog == "B" else classify_lta(alg)
    assert got.index == t.name


def test_a8_a11_swap():
    verdict = find_isomorphism(FIXTURES["A8"].value, FIXTURES["A11"].value)
    assert isinstance(verdict, IsoWitness) and verdict.P == SWAP


def test_a9_a12_swap():
    verdict = find_isomorphism(FIXTURES["A9"].value, FIXTURES["A12"].value)
    assert isinstance(verdict, IsoWitness) and verdict.P == SWAP


def test_hyperbolic_and_elliptic_are_not_isomorphic():
    assert find_isomorphism(HYPERBOLIC, ELLIPTIC) is None
    assert oracle_isomorphic(HYPERBOLIC, ELLIPTIC, GridSpec(-2, 2)) is None


def test_non_square_determinant_ratio_is_inconclusive():
    # det T = -1 against det T = -2: equivalent over the reals, never over the rationals
    other = k(0, 0, 0, 0, 0, 2, 1, 0)
    verdict = find_isomorphism(HYPERBOLIC, other)
    assert isinstance(verdict, Inconclusive)
    assert oracle_isomorphic(HYPERBOLIC, other, GridSpec(-2, 2)) is None


@settings(max_examples=80, deadline=None)
@given(valid_constants(), invertible_2x2())
def test_find_isomorphism_recovers_basis_changes(k8, P):
    alg = from_constants2d(k8)
    moved = change_basis(alg, P)
    verdict = find_isomorphism(alg, moved)
    assert isinstance(verdict, IsoWitness)
    assert change_basis(alg, verdict.P) == moved


def test_distinct_theorem_types_are_not_isomorphic():
    algs = {n: FIXTURES[f"type-{n}"].value for n in THEOREM_ORDER}
    for a in THEOREM_ORDER:
        for b in THEOREM_ORDER:
            if classify(algs[a]).theorem_type != classify(algs[b]).theorem_type:
                assert find_isomorphism(algs[a], algs[b]) is None


def test_none_verdicts_agree_with_oracle_on_small_grid():
    rng = random.Random(11)
    pool = [from_constants2d(template(n).sample(rng)) for n in THEOREM_ORDER for _ in range(3)]
    pool += [change_basis(a, random_matrix(rng)) for a in pool[:8]]
    checked = 0
    for _ in range(60):
        A, B = rng.choice(pool), rng.choice(pool)
        verdict = find_isomorphism(A, B)
        if verdict is None:
            assert oracle_isomorphic(A, B, GridSpec(-2, 2)) is None
            checked += 1
        elif isinstance(verdict, IsoWitness):
            assert change_basis(A, verdict.P) == B
    assert checked > 0


def test_norm_obstruction_is_inconclusive():
    # TB is conjugate to TA by a det-5 matrix; reaching det(P) = ±1 would need
    # x^2 - 3y^2 = ±5z^2, impossible mod 3 and mod 5
    A = k(0, 0, 0, 0, 0, 3, 1, 0)
    TB = matmul(inverse(((1, 2), (-2, 1))), matmul(((0, 1), (3, 0)), ((1, 2), (-2, 1))))
    B = k(0, 0, 0, 0, TB[0][0], TB[1][0], TB[0][1], TB[1][1])
    assert invariants(A).obstruction_key() == invariants(B).obstruction_key()
    assert isinstance(find_isomorphism(A, B), Inconclusive)
    assert oracle_isomorphic(A, B, GridSpec(-2, 2)) is None


def test_family_one_witness_needs_large_entries():
    A = k(0, 0, 0, 0, Fraction(-1, 3), 7, Fraction(5, 2), Fraction(1, 3))
    P = ((Fraction(-17, 3), Fraction(-13, 6)), (Fraction(5, 2), Fraction(4, 9)))
    verdict = find_isomorphism(A, change_basis(A, P))
    assert isinstance(verdict, IsoWitness)
