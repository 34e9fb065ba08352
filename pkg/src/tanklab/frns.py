"""When should the favourite throw a game?  (opponents always try to win).

Team 1 picks an action α ∈ {0, 1} for its current game — 1 means play
honestly, 0 means lose on purpose — while teams 2–4 always try.  The value of
a week-3 state is the championship probability after the random seeding and
bracket; earlier weeks recurse through "play this week's games, then act
optimally".  ``decide_week*`` compare the two actions and report both values;
a tie is resolved in favour of trying to win.

``region_scan`` sweeps the weight simplex (v1 = 1 ≥ v2 ≥ v3 ≥ v4 > 0) on a
grid and emits one row per point with both values, which is the dataset
behind the "when is losing profitable" pictures, and ``theorem_polynomial``
gives a closed-form sign test for the three week-3 states whose answer
actually depends on the weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, Sequence, Tuple

from .brackets import expected_champ_prob
from .model import (
    DomainError,
    RationalLike,
    Weights,
    apply_result,
    as_fraction,
    games_for_week,
    reachable_states,
    require_state,
    win_prob,
)

ONE = Fraction(1)


class Action(str, Enum):
    TRY_TO_WIN = "win"
    LOSE = "lose"


def _ecp(final_wins: Tuple[int, ...], V: Weights) -> Fraction:
    return expected_champ_prob(1, final_wins, V)


@dataclass(frozen=True)
class Decision:
    """Outcome of comparing team 1's two actions at one state."""

    action: Action
    value_win: Fraction
    value_lose: Fraction

    @classmethod
    def from_values(cls, value_win: Fraction, value_lose: Fraction) -> "Decision":
        action = Action.TRY_TO_WIN if value_win >= value_lose else Action.LOSE
        return cls(action, value_win, value_lose)

    @property
    def value(self) -> Fraction:
        return max(self.value_win, self.value_lose)


def _value(week: int, wins: Tuple[int, ...], V: Weights, alpha: int) -> Fraction:
    """Team 1's championship probability from `wins` at the start of `week`,
    playing `alpha` now and optimally afterwards, all opponents honest."""
    (one, opp), (k, l) = games_for_week(week)
    assert one == 1
    if alpha == 1:
        p = win_prob(V.weight(1), V.weight(opp))
        own = [(1, p), (opp, 1 - p)]
    else:
        own = [(opp, ONE)]  # a conceding team loses to an honest one surely
    q = win_prob(V.weight(k), V.weight(l))
    other = [(k, q), (l, 1 - q)]

    total = Fraction(0)
    for w_own, p_own in own:
        for w_other, p_other in other:
            if p_own == 0 or p_other == 0:
                continue
            succ = apply_result(apply_result(wins, w_own), w_other)
            if week == 3:
                cont = _ecp(succ, V)
            else:
                cont = max(_value(week + 1, succ, V, a) for a in (1, 0))
            total += p_own * p_other * cont
    return total


def _check_alpha(alpha: int) -> int:
    if alpha not in (0, 1):
        raise DomainError(f"alpha must be 0 or 1, got {alpha!r}")
    return alpha


def value_week3(wins: Sequence[int], V: Weights, alpha: int) -> Fraction:
    """Championship probability for team 1 entering week 3 at `wins` and
    playing α in the last round-robin game (the other game is honest)."""
    return _value(3, require_state(3, wins), V, _check_alpha(alpha))


def value_week2(wins: Sequence[int], V: Weights, alpha: int) -> Fraction:
    """Week-2 value: play α now, then the better of the two week-3 actions."""
    return _value(2, require_state(2, wins), V, _check_alpha(alpha))


def value_week1(V: Weights, alpha: int) -> Fraction:
    """Week-1 value from the opening 0–0–0–0 state."""
    return _value(1, (0, 0, 0, 0), V, _check_alpha(alpha))


def decide_week3(wins: Sequence[int], V: Weights) -> Decision:
    return Decision.from_values(value_week3(wins, V, 1), value_week3(wins, V, 0))


def decide_week2(wins: Sequence[int], V: Weights) -> Decision:
    return Decision.from_values(value_week2(wins, V, 1), value_week2(wins, V, 0))


def decide_week1(V: Weights) -> Decision:
    return Decision.from_values(value_week1(V, 1), value_week1(V, 0))


def decide(week: int, wins: Sequence[int], V: Weights) -> Decision:
    """Dispatch to the per-week decision for a validated (week, wins)."""
    if week == 1:
        require_state(1, wins)
        return decide_week1(V)
    if week == 2:
        return decide_week2(wins, V)
    if week == 3:
        return decide_week3(wins, V)
    raise DomainError(f"week must be 1, 2 or 3, got {week}")


# --- closed-form sign tests -------------------------------------------------
#
# For the three week-3 states below, (value at α=0) − (value at α=1) equals
# poly(v2,v3,v4) / D with v1 = 1 and a denominator D > 0 on the whole ordered
# domain, so "try to win" is exactly poly ≤ 0.  The coefficients are frozen
# here and cross-checked against value_week3 by tests on a full grid.

_POLY: Dict[Tuple[int, int, int, int], Dict[Tuple[int, int, int], int]] = {
    # -(v3 - v4) * (v2^2 v3^2 - 3 v2^2 v3 v4 - 2 v2^2 v4^2 - 2 v3^2 v4^2)
    (1, 2, 0, 1): {
        (2, 3, 0): -1,
        (2, 2, 1): 4,
        (2, 1, 2): -1,
        (2, 0, 3): -2,
        (0, 3, 2): 2,
        (0, 2, 3): -2,
    },
    # -(v3 - v4) * (2 v2^2 v3^2 + 3 v2^2 v3 v4 - v2^2 v4^2 + 2 v3^2 v4^2):
    # the second factor is positive whenever v2 >= v3 >= v4 > 0, so the sign
    # is just -(v3 - v4) and losing never strictly helps in this state.
    (1, 2, 1, 0): {
        (2, 3, 0): -2,
        (2, 2, 1): -1,
        (2, 1, 2): 4,
        (2, 0, 3): -1,
        (0, 3, 2): -2,
        (0, 2, 3): 2,
    },
}
# identical record pattern for teams (1,2) and (3,4) swapped pairwise gives
# the same decision problem, hence the same polynomial
_POLY[(0, 1, 1, 2)] = _POLY[(1, 2, 0, 1)]

THEOREM_STATES: Tuple[Tuple[int, int, int, int], ...] = tuple(_POLY)


def theorem_polynomial(wins: Sequence[int], V: Weights) -> Fraction:
    """Closed-form decision test for the weight-dependent week-3 states.

    Returns a signed rational whose sign matches value_lose − value_win:
    team 1 should try to win exactly when the value is ≤ 0.  Only defined
    for the states in THEOREM_STATES.
    """
    key = tuple(wins)
    if key not in _POLY:
        raise DomainError(
            f"no closed-form test for state {key}; covered states: "
            f"{sorted(_POLY)}"
        )
    _, v2, v3, v4 = V.canonical()
    return sum(
        c * v2**e2 * v3**e3 * v4**e4 for (e2, e3, e4), c in _POLY[key].items()
    )


# --- region sweeps ----------------------------------------------------------


@dataclass(frozen=True)
class RegionRow:
    """One grid point of a parameter sweep: both action values at weights
    (1, v2, v3, v4)."""

    v2: Fraction
    v3: Fraction
    v4: Fraction
    value_win: Fraction
    value_lose: Fraction

    @property
    def in_lose_region(self) -> bool:
        return self.value_lose - self.value_win >= 0

    @property
    def decision(self) -> Action:
        return Action.TRY_TO_WIN if self.value_win >= self.value_lose else Action.LOSE


def grid_points(step: RationalLike) -> Iterator[Tuple[Fraction, Fraction, Fraction]]:
    """Lexicographic (v2, v3, v4) over multiples of `step` with
    1 ≥ v2 ≥ v3 ≥ v4 > 0."""
    h = as_fraction(step)
    if not 0 < h <= Fraction(1, 4):
        raise DomainError(f"step must lie in (0, 1/4], got {h}")
    n = int(1 / h)
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            for k in range(1, j + 1):
                yield (i * h, j * h, k * h)


def region_scan(
    week: int, wins: Sequence[int], step: RationalLike
) -> Iterator[RegionRow]:
    """Sweep the weight grid and emit both action values at every point."""
    state = require_state(week, wins)
    for v2, v3, v4 in grid_points(step):
        V = Weights.of(1, v2, v3, v4)
        if week == 1:
            vw, vl = value_week1(V, 1), value_week1(V, 0)
        else:
            vw, vl = _value(week, state, V, 1), _value(week, state, V, 0)
        yield RegionRow(v2, v3, v4, vw, vl)


class StateClass(str, Enum):
    ALWAYS_WIN = "always-win"
    ALWAYS_LOSE = "always-lose"
    DEPENDS = "depends"


def classify_states(step: RationalLike = Fraction(1, 20)) -> Dict[Tuple[int, int, int, int], StateClass]:
    """Label every week-3 state by sweeping the weight grid.

    always-win:  losing is never strictly better at any grid point;
    always-lose: winning is never strictly better, and losing is strictly
                 better somewhere;
    depends:     each action is strictly better somewhere.
    """
    out: Dict[Tuple[int, int, int, int], StateClass] = {}
    for state in reachable_states(3):
        strict_win = strict_lose = False
        for row in region_scan(3, state, step):
            if row.value_win > row.value_lose:
                strict_win = True
            elif row.value_lose > row.value_win:
                strict_lose = True
            if strict_win and strict_lose:
                break
        if strict_win and strict_lose:
            out[state] = StateClass.DEPENDS
        elif strict_lose:
            out[state] = StateClass.ALWAYS_LOSE
        else:
            out[state] = StateClass.ALWAYS_WIN
    return out
