"""Shared strategies and fixtures: ordered rational weight vectors."""

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from tanklab.model import Weights


def ordered_weights_strategy(max_den: int = 24):
    """Random ordered weight vectors with small exact rationals."""

    def build(vals):
        vs = sorted(vals, reverse=True)
        return Weights.of(*vs)

    positive = st.fractions(
        min_value=Fraction(1, max_den), max_value=1, max_denominator=max_den
    )
    return st.tuples(positive, positive, positive, positive).map(build)


@pytest.fixture(scope="session")
def sample_weights():
    """A deterministic spread of ordered weight vectors for exact sweeps."""
    raw = [
        (1, 1, 1, 1),
        (1, 1, Fraction(1, 2), Fraction(1, 2)),
        (1, Fraction(4, 5), Fraction(1, 2), Fraction(3, 10)),
        (1, Fraction(9, 10), Fraction(3, 5), Fraction(1, 5)),
        (1, Fraction(2, 3), Fraction(2, 3), Fraction(1, 3)),
        (1, 1, 1, Fraction(1, 10)),
        (1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)),
        (1, Fraction(7, 8), Fraction(7, 8), Fraction(7, 8)),
        (1, Fraction(3, 4), Fraction(1, 4), Fraction(1, 8)),
        (1, Fraction(99, 100), Fraction(98, 100), Fraction(97, 100)),
        (1, Fraction(1, 5), Fraction(1, 5), Fraction(1, 5)),
        (1, Fraction(5, 6), Fraction(2, 3), Fraction(1, 2)),
        (1, Fraction(1, 2), Fraction(1, 2), 0),
        (1, 1, Fraction(3, 7), Fraction(2, 7)),
        (1, Fraction(6, 7), Fraction(5, 7), Fraction(1, 7)),
        (1, Fraction(9, 11), Fraction(4, 11), Fraction(3, 11)),
        (1, Fraction(10, 13), Fraction(10, 13), Fraction(2, 13)),
        (1, Fraction(8, 9), Fraction(5, 9), Fraction(5, 9)),
        (1, Fraction(3, 5), Fraction(2, 5), Fraction(1, 5)),
        (1, Fraction(17, 20), Fraction(13, 20), Fraction(7, 20)),
    ]
    return [Weights.of(*vals) for vals in raw]
