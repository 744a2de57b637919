from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hta.algebra import Constants2D, det, from_constants2d, matmul
from hta.explorer import GridSpec, enumerate_grid
from hta.templates import THEOREM_ORDER, template

SMALL = st.fractions(min_value=-4, max_value=4, max_denominator=3)


NONZERO = SMALL.filter(lambda q: q != 0)


@st.composite
def invertible_2x2(draw):
    # every invertible matrix is a row swap times L times U
    p, q = draw(NONZERO), draw(NONZERO)
    r, s = draw(SMALL), draw(SMALL)
    L = ((p, 0), (r, 1))
    U = ((1, s), (0, q))
    P = matmul(L, U)
    if draw(st.booleans()):
        P = (P[1], P[0])
    return P


@st.composite
def constants(draw):
    return Constants2D.of([draw(SMALL) for _ in range(8)])


@st.composite
def valid_constants(draw):
    """A theorem-template instance, drawn through its own sampler."""
    name = draw(st.sampled_from(THEOREM_ORDER))
    seed = draw(st.integers(0, 10**6))
    return template(name).sample(random.Random(seed))


def random_matrix(rng: random.Random, n: int = 2):
    while True:
        P = tuple(tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)) for _ in range(n))
        if det(P) != 0:
            return P


def k(*values):
    return from_constants2d(Constants2D.of(values))


@pytest.fixture(scope="session")
def sweep():
    """The {-1,0,1}^8 enumeration, computed once per session."""
    return enumerate_grid(GridSpec(-1, 1), jobs=1)
