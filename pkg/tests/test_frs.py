"""Simultaneous effort choices in week 3: payoffs, derivatives, equilibria."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tanklab.frs import (
    EquilibriumReport,
    effective_pair,
    equilibrium_report,
    expected_payoffs,
    mixed_nash_check,
    payoffs,
    pure_nash_enumerate,
    stationarity,
)
from tanklab.brackets import expected_champ_prob
from tanklab.model import DomainError, Weights, effective_win_prob, final_standings, win_prob
from tanklab.oracle import PolicyTable, best_response_oracle, enumerate_champ_prob

from conftest import ordered_weights_strategy

F = Fraction
ONES = Weights.of(1, 1, 1, 1)
HALF = F(1, 2)

probs = st.fractions(min_value=0, max_value=1, max_denominator=16)


def _finish(wins, V, team, w12, w34):
    return expected_champ_prob(team, final_standings(wins, 1 if w12 else 2, 3 if w34 else 4), V)


def test_conditional_tables_cover_the_four_effort_cases():
    V = Weights.of(1, F(4, 5), F(1, 2), F(3, 10))
    wins = (1, 2, 0, 1)
    a34 = F(3, 7)  # the opposing game's effective win probability, taken as given
    table = payoffs(wins, V, a34, pair=(1, 2))
    # when both try, game 1-2 is decided by raw strength
    p12 = win_prob(1, F(4, 5))
    want = (
        p12 * a34 * _finish(wins, V, 1, True, True)
        + p12 * (1 - a34) * _finish(wins, V, 1, True, False)
        + (1 - p12) * a34 * _finish(wins, V, 1, False, True)
        + (1 - p12) * (1 - a34) * _finish(wins, V, 1, False, False)
    )
    assert table.entry(1, "a") == want


def test_one_sided_tank_payoff_is_a_sure_loss_branch():
    V = Weights.of(1, F(4, 5), F(1, 2), F(3, 10))
    wins = (1, 2, 0, 1)
    a34 = HALF
    table = payoffs(wins, V, a34, pair=(1, 2))
    # condition "b": team 1 tanks while team 2 tries -> team 2 wins surely
    want = a34 * _finish(wins, V, 1, False, True) + (1 - a34) * _finish(wins, V, 1, False, False)
    assert table.entry(1, "b") == want


def test_effective_pair_reduces_to_the_tanking_formula():
    V = Weights.of(1, F(2, 3), F(1, 2), F(1, 4))
    pi = (F(1, 3), F(3, 4), 1, F(1, 5))
    a12, a34 = effective_pair(V, pi)
    assert a12 == effective_win_prob(1, F(2, 3), F(1, 3), F(3, 4))
    assert a34 == effective_win_prob(F(1, 2), F(1, 4), 1, F(1, 5))


@given(V=ordered_weights_strategy(max_den=10), t1=probs, t2=probs, t3=probs, t4=probs)
@settings(max_examples=40, deadline=None)
def test_expected_payoffs_sum_to_one(V, t1, t2, t3, t4):
    E = expected_payoffs((1, 2, 0, 1), V, (t1, t2, t3, t4))
    assert sum(E) == 1


def test_expected_payoffs_match_full_enumeration():
    """Bilinear table route against the policy-table game tree."""
    V = Weights.of(1, "0.8", "0.5", "0.3")
    wins = (1, 2, 0, 1)
    for pi in [(1, 1, 1, 1), (HALF, F(1, 3), F(2, 5), 1), (0, 1, HALF, HALF)]:
        E = expected_payoffs(wins, V, pi)
        policy = PolicyTable.week3_profile(wins, pi)
        assert E == enumerate_champ_prob(3, wins, V, policy)
    # degenerate corner: both pairs tank -> coin flips
    E = expected_payoffs(wins, V, (0, 0, 0, 0))
    assert E == enumerate_champ_prob(3, wins, V, PolicyTable.week3_profile(wins, (0, 0, 0, 0)))


def test_payoffs_are_affine_in_each_own_effort():
    """Three collinear points certify affinity in pi_i for fixed others."""
    V = Weights.of(1, F(7, 10), F(2, 5), F(1, 5))
    wins = (1, 1, 1, 1)
    base = (F(1, 3), F(2, 3), F(1, 4), F(3, 4))
    for i in range(4):
        samples = []
        for t in (0, HALF, 1):
            pi = list(base)
            pi[i] = t
            samples.append(expected_payoffs(wins, V, tuple(pi))[i])
        assert samples[1] == (samples[0] + samples[2]) / 2


def test_stationarity_matches_central_differences_exactly():
    V = Weights.of(1, "0.8", "0.5", "0.3")
    wins = (1, 2, 0, 1)
    pi = (F(1, 3), F(4, 7), F(2, 9), F(5, 6))
    h = F(1, 64)
    grads = stationarity(wins, V, pi).as_tuple()
    for i in range(4):
        hi = list(pi)
        lo = list(pi)
        hi[i] += h
        lo[i] -= h
        up = expected_payoffs(wins, V, tuple(hi))[i]
        down = expected_payoffs(wins, V, tuple(lo))[i]
        assert grads[i] == (up - down) / (2 * h)


def test_stationarity_vanishes_on_the_symmetric_continuum():
    """Any profile keeping both effective probabilities at one half is a
    stationary point when the pairs are internally balanced."""
    V = Weights.of(1, 1, HALF, HALF)
    for pi in [(1, 1, 1, 1), (F(1, 4), F(1, 4), F(3, 4), F(3, 4))]:
        a12, a34 = effective_pair(V, pi)
        assert a12 == HALF and a34 == HALF
        grads = stationarity((1, 2, 0, 1), V, pi).as_tuple()
        assert grads == (0, 0, 0, 0)


def test_continuum_detected_for_balanced_pairs():
    for t in ("0.25", "0.5", "0.75", "1"):
        V = Weights.of(1, 1, t, t)
        mixed = mixed_nash_check((1, 2, 0, 1), V)
        assert mixed is not None and mixed.kind == "continuum"
        assert mixed.a12 == HALF and mixed.a34 == HALF
        report = equilibrium_report((1, 2, 0, 1), V)
        assert report.mixed_continuum


def test_no_continuum_off_the_balanced_family():
    V = Weights.of(1, "0.8", "0.5", "0.3")
    mixed = mixed_nash_check((1, 2, 0, 1), V)
    assert mixed is None or mixed.kind != "continuum"
    report = equilibrium_report((1, 2, 0, 1), V)
    assert not report.mixed_continuum
    assert len(report.pure) >= 1


def test_pure_equilibria_certified_by_unilateral_deviation_oracle():
    V = Weights.of(1, "0.8", "0.5", "0.3")
    wins = (1, 2, 0, 1)
    report = equilibrium_report(wins, V)
    assert report.pure, "at least one pure equilibrium expected"
    for eq in report.pure:
        assert all(m >= 0 for m in eq.margins)
        for team in (1, 2, 3, 4):
            best_alpha, value = best_response_oracle(wins, V, eq.profile, team)
            assert value == eq.payoffs[team - 1], (eq.profile, team, best_alpha)


def test_all_tank_is_the_unique_pure_equilibrium_here():
    """At this score line every team strictly prefers the loss (the leaders
    dodge the stronger semifinal draw), so universal tanking is the only
    profile no one wants to leave."""
    V = Weights.of(1, "0.8", "0.5", "0.3")
    report = equilibrium_report((1, 2, 0, 1), V)
    assert [eq.profile for eq in report.pure] == [(0, 0, 0, 0)]


def test_equal_weights_make_every_pure_profile_an_equilibrium():
    report = equilibrium_report((1, 2, 0, 1), ONES)
    assert len(report.pure) == 16
    assert report.mixed_continuum


def test_interior_family_can_exist_without_the_balanced_continuum():
    """A tied-at-two state admits an interior indifference family even for
    generic weights; it must satisfy the stationarity conditions exactly and
    must not be labelled as the balanced-pairs continuum."""
    V = Weights.of(1, "0.7", "0.4", "0.2")
    mixed = mixed_nash_check((2, 2, 0, 0), V)
    assert mixed is not None
    assert mixed.kind == "family"
    grads = stationarity((2, 2, 0, 0), V, mixed.sample_profile).as_tuple()
    assert grads == (0, 0, 0, 0)
    report = equilibrium_report((2, 2, 0, 0), V)
    assert not report.mixed_continuum


def test_week_restriction_is_enforced():
    V = Weights.of(1, HALF, HALF, HALF)
    with pytest.raises(DomainError):
        equilibrium_report((1, 0, 0, 1), V)


def test_report_is_reproducible_and_value_stable():
    V = Weights.of(1, F(4, 5), F(1, 2), F(3, 10))
    a = equilibrium_report((1, 1, 1, 1), V)
    b = equilibrium_report((1, 1, 1, 1), V)
    assert isinstance(a, EquilibriumReport)
    assert a.pure == b.pure
    assert a.mixed == b.mixed
    for eq in a.pure:
        assert sum(eq.payoffs) == 1
