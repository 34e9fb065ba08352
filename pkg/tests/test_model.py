"""Domain basics: parsing, weight validation, schedule, reachable states."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tanklab.model import (
    SCHEDULE,
    DegenerateMatchError,
    DomainError,
    InvalidStateError,
    Weights,
    apply_result,
    as_fraction,
    effective_win_prob,
    final_standings,
    games_for_week,
    reachable_states,
    require_state,
    validate_state,
    win_prob,
)


def test_as_fraction_parses_decimals_exactly():
    assert as_fraction("0.3") == Fraction(3, 10)
    assert as_fraction(0.3) == Fraction(3, 10)
    assert as_fraction("4/5") == Fraction(4, 5)
    assert as_fraction(2) == Fraction(2)
    with pytest.raises(DomainError):
        as_fraction("four fifths")


def test_weights_must_be_ordered():
    with pytest.raises(DomainError):
        Weights.of(1, "0.5", "0.9", "0.2")
    with pytest.raises(DomainError):
        Weights.of(1, 1, 0, 0)  # two zero weights would allow a 0/0 game
    with pytest.raises(DomainError):
        Weights.of(1, 1, 1)
    v = Weights.of("0.5", "0.4", "0.3", "0.2")
    assert v.canonical() == Weights.of(1, "0.8", "0.6", "0.4")


def test_win_prob_basics():
    assert win_prob(1, 1) == Fraction(1, 2)
    assert win_prob(Fraction(1, 2), Fraction(1, 4)) == Fraction(2, 3)
    assert win_prob(1, 0) == 1
    with pytest.raises(DegenerateMatchError):
        win_prob(0, 0)


@given(
    p=st.fractions(min_value=0, max_value=1, max_denominator=20),
    q=st.fractions(min_value=0, max_value=1, max_denominator=20),
)
def test_effective_win_prob_is_a_probability(p, q):
    a = effective_win_prob(1, Fraction(1, 2), p, q)
    assert 0 <= a <= 1
    # complementary game: the two effective probabilities sum to 1
    b = effective_win_prob(Fraction(1, 2), 1, q, p)
    assert a + b == 1


def test_effective_win_prob_endpoint_semantics():
    v, w = 1, Fraction(1, 3)
    assert effective_win_prob(v, w, 1, 1) == win_prob(v, w)
    assert effective_win_prob(v, w, 0, 1) == 0  # tanking against an honest team
    assert effective_win_prob(v, w, 1, 0) == 1
    assert effective_win_prob(v, w, 0, 0) == Fraction(1, 2)  # double tank: coin
    assert effective_win_prob(0, 0, 0, 0) == Fraction(1, 2)
    with pytest.raises(DegenerateMatchError):
        effective_win_prob(0, 0, Fraction(1, 2), 1)


def test_schedule_pairs_every_team_once_per_week():
    for week, games in SCHEDULE.items():
        teams = [t for game in games for t in game]
        assert sorted(teams) == [1, 2, 3, 4], week
    assert games_for_week(1) == ((1, 4), (2, 3))
    assert games_for_week(2) == ((1, 3), (2, 4))
    assert games_for_week(3) == ((1, 2), (3, 4))
    with pytest.raises(DomainError):
        games_for_week(4)


def test_reachable_state_counts():
    assert reachable_states(1) == ((0, 0, 0, 0),)
    assert len(reachable_states(2)) == 4
    assert len(reachable_states(3)) == 15
    # two distinct outcome sequences collapse into the all-ones state
    assert (1, 1, 1, 1) in reachable_states(3)


def test_validate_state():
    assert validate_state(2, (1, 1, 0, 0))
    assert not validate_state(2, (1, 0, 0, 1))  # week-1 winners can't be 1 and 4
    assert not validate_state(3, (2, 2, 1, 1))
    assert not validate_state(1, (0, 0, 0, -1))
    with pytest.raises(InvalidStateError):
        require_state(3, (0, 1, 1, 0))


def test_final_standings_sum_to_six():
    for state in reachable_states(3):
        for w1 in (1, 2):
            for w2 in (3, 4):
                finals = final_standings(state, w1, w2)
                assert sum(finals) == 6
    assert apply_result((1, 1, 1, 1), 3) == (1, 1, 2, 1)
