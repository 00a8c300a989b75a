from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from wittthreads.exactnum import Scalar

# small-height rationals keep exact arithmetic fast while exercising reduction
fractions = st.fractions(
    min_value=-20, max_value=20, max_denominator=9
)
nonzero_fractions = fractions.filter(lambda q: q != 0)


def scalars_in(d: int):
    if d == 0:
        return st.builds(lambda a: Scalar(a, Fraction(0), 0), fractions)
    return st.builds(lambda a, b: Scalar(a, b, d if b else 0), fractions, fractions)


rational_scalars = scalars_in(0)
surd19_scalars = scalars_in(19)


@pytest.fixture
def rng():
    return random.Random(20260810)


def rand_fraction(rng: random.Random, lo: int = -24, hi: int = 24, den: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_scalar(rng: random.Random, d: int = 0) -> Scalar:
    if d == 0:
        return Scalar.of(rand_fraction(rng))
    return Scalar.of(rand_fraction(rng)) + Scalar.sqrt_of(d, rand_fraction(rng))
