"""Brute-force enumeration and random sampling of 2D algebras.

This is the ground-truth side for the closed-form results elsewhere in the
package: the full identity system is evaluated directly on every grid point,
and isomorphisms are searched for by trying every matrix on a coarse grid.
"""

from __future__ import annotations

import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice, product
from typing import Optional

from .algebra import Algebra, Constants2D, Matrix, change_basis, constants2d, det, from_constants2d, identity_matrix
from .classify import FAMILIES, classify, match_templates
from .errors import BudgetExceeded, Unclassifiable
from .identities import is_hta, is_reduced_valid, variety_predicate
from .templates import THEOREM_ORDER, template

DEFAULT_BUDGET = 10**7
MISMATCH_CAP = 100


@dataclass(frozen=True)
class GridSpec:
    """Values m/denominator for integers m in [min, max]."""

    min: int = -1
    max: int = 1
    denominator: int = 1

    def __post_init__(self):
        if self.min > self.max:
            raise ValueError("grid min exceeds max")
        if self.denominator < 1:
            raise ValueError("grid denominator must be positive")

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(m, self.denominator) for m in range(self.min, self.max + 1))

    def size(self, arity: int = 8) -> int:
        return (self.max - self.min + 1) ** arity


@dataclass
class EnumerationReport:
    grid: GridSpec
    total: int = 0
    valid: int = 0
    per_family: dict[str, int] = field(default_factory=dict)
    per_theorem_type: dict[str, int] = field(default_factory=dict)
    per_template: dict[str, int] = field(default_factory=dict)
    lemma_mismatches: list[list[str]] = field(default_factory=list)
    predicate_mismatches: list[list[str]] = field(default_factory=list)
    unclassified: list[list[str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.lemma_mismatches or self.predicate_mismatches or self.unclassified)


def budget_from_env() -> int:
    raw = os.environ.get("HTA_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def _point_strings(k8: Constants2D) -> list[str]:
    return [str(x) for x in k8.as_tuple()]


def _examine(values: tuple[Fraction, ...]):
    """Everything the report needs about one grid point."""
    k8 = Constants2D.of(values)
    alg = from_constants2d(k8)
    full = is_hta(alg)
    reduced = is_reduced_valid(alg)
    predicate = variety_predicate(k8)
    family = kind = None
    classified = True
    if reduced:
        try:
            result = classify(alg)
            witnessed = constants2d(change_basis(alg, result.witness)) == result.canonical_constants
            classified = witnessed and template(result.theorem_type).matches(result.canonical_constants)
            family, kind = result.family, result.theorem_type
        except Unclassifiable:
            classified = False
    matched = tuple(t.label for t in match_templates(k8) if t.catalog == "THEOREM") if reduced else ()
    return full, reduced, predicate, family, kind, classified, matched


def _examine_chunk(args):
    grid, start, stop = args
    points = islice(product(grid.values, repeat=8), start, stop)
    return [(start + n, _examine(p)) for n, p in enumerate(points)]


def enumerate_grid(grid: GridSpec, jobs: int = 1, budget: Optional[int] = None) -> EnumerationReport:
    """Run the full and reduced checks, the closed-form predicate and the
    classifier on every point of the grid; tally and collect mismatches."""
    budget = budget_from_env() if budget is None else budget
    total = grid.size()
    if total > budget:
        raise BudgetExceeded(f"grid has {total} points, budget is {budget}")
    jobs = max(1, jobs)
    step = -(-total // (jobs * 4)) if jobs > 1 else total
    chunks = [(grid, s, min(s + step, total)) for s in range(0, total, step)]
    if jobs == 1:
        results = [r for c in chunks for r in _examine_chunk(c)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for part in pool.map(_examine_chunk, chunks) for r in part]
    results.sort(key=lambda r: r[0])

    report = EnumerationReport(grid, total=total)
    families: Counter = Counter()
    kinds: Counter = Counter()
    literal: Counter = Counter()
    points = product(grid.values, repeat=8)
    for (_, (full, reduced, predicate, family, kind, classified, matched)), values in zip(results, points):
        label = _point_strings(Constants2D.of(values))
        if full != reduced and len(report.lemma_mismatches) < MISMATCH_CAP:
            report.lemma_mismatches.append(label)
        if predicate != reduced and len(report.predicate_mismatches) < MISMATCH_CAP:
            report.predicate_mismatches.append(label)
        if not reduced:
            continue
        report.valid += 1
        if not classified:
            if len(report.unclassified) < MISMATCH_CAP:
                report.unclassified.append(label)
            continue
        families[family] += 1
        kinds[kind] += 1
        literal.update(matched)
    report.per_family = {f: families[f] for f in FAMILIES}
    report.per_theorem_type = {t: kinds[t] for t in THEOREM_ORDER}
    report.per_template = {f"({t})": literal[f"({t})"] for t in THEOREM_ORDER}
    return report


def random_algebra(seed: int, constraint: Optional[str] = None) -> Algebra:
    """Deterministic pseudorandom 2D algebra; with ``constraint`` it satisfies
    that template's pattern and side conditions exactly."""
    rng = random.Random(seed)
    if constraint is not None:
        return from_constants2d(template(constraint).sample(rng))
    values = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(8)]
    return from_constants2d(Constants2D.of(values))


def _pgrid_matrices(pgrid: GridSpec):
    vals = pgrid.values
    mats = []
    for entries in product(vals, repeat=4):
        P = ((entries[0], entries[1]), (entries[2], entries[3]))
        if det(P) != 0:
            mats.append(P)
    # simplest first: fewest nonzeros, fewest negatives, smallest entries
    mats.sort(key=lambda P: (
        sum(x != 0 for r in P for x in r),
        sum(x < 0 for r in P for x in r),
        sum(abs(x) for r in P for x in r),
        P,
    ))
    return mats


def oracle_isomorphic(A: Algebra, B: Algebra, pgrid: GridSpec = GridSpec(-2, 2)) -> Optional[Matrix]:
    """Exhaustive search for P on the grid with change_basis(A, P) == B; identity first."""
    I = identity_matrix(2)
    if A == B:
        return I
    for P in _pgrid_matrices(pgrid):
        if change_basis(A, P) == B:
            return P
    return None
