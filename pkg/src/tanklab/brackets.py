"""Championship probabilities for the seeded four-team knockout bracket.

After the round robin, teams are seeded by wins (ties settled by fair coin
flips, i.e. a uniformly random order inside each tied block) and play a
single-elimination bracket: seed 1 vs seed 4 and seed 2 vs seed 3, winners
meet in the final.  Ignoring which tied team holds which seed *number*, only
the induced semifinal pairing matters, and with four teams there are exactly
three possible pairings:

    type A:  1-4 and 2-3
    type B:  1-3 and 2-4
    type C:  1-2 and 3-4

(teams named by index, not by seed).  This module provides the closed-form
win probability of each team in each pairing, the distribution over pairings
induced by final standings, and the stochastic-dominance style orderings the
rest of the package leans on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, Iterable, Sequence

from .model import (
    DomainError,
    InvalidStateError,
    Weights,
    apply_result,
    final_standings,
    reachable_states,
    win_prob,
)


class BracketType(str, Enum):
    A = "A"
    B = "B"
    C = "C"

    @property
    def semifinal_pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return _PAIRINGS[self]


_PAIRINGS: dict[BracketType, tuple[tuple[int, int], tuple[int, int]]] = {
    BracketType.A: ((1, 4), (2, 3)),
    BracketType.B: ((1, 3), (2, 4)),
    BracketType.C: ((1, 2), (3, 4)),
}


def champ_prob(team: int, btype: BracketType | str, V: Weights) -> Fraction:
    """Probability that `team` wins a bracket with the given semifinal pairing.

    Closed form: P(win own semifinal) times the expected probability of
    beating whichever team emerges from the other semifinal.
    """
    btype = BracketType(btype)
    (a, b), (c, d) = btype.semifinal_pairs
    if team in (a, b):
        opp = b if team == a else a
        other = (c, d)
    elif team in (c, d):
        opp = d if team == c else c
        other = (a, b)
    else:
        raise DomainError(f"team must be 1..4, got {team}")
    semi = win_prob(V.weight(team), V.weight(opp))
    o1, o2 = other
    p_o1 = win_prob(V.weight(o1), V.weight(o2))
    final = p_o1 * win_prob(V.weight(team), V.weight(o1)) + (1 - p_o1) * win_prob(
        V.weight(team), V.weight(o2)
    )
    return semi * final


@dataclass(frozen=True)
class ChampTable:
    """All twelve T[team][type] values for one weight vector."""

    entries: Dict[int, Dict[BracketType, Fraction]]

    def prob(self, team: int, btype: BracketType | str) -> Fraction:
        return self.entries[team][BracketType(btype)]

    def column_sum(self, btype: BracketType | str) -> Fraction:
        bt = BracketType(btype)
        return sum(self.entries[t][bt] for t in (1, 2, 3, 4))

    def rows(self) -> Iterable[tuple[int, Dict[BracketType, Fraction]]]:
        return ((t, self.entries[t]) for t in (1, 2, 3, 4))


def champ_table(V: Weights) -> ChampTable:
    return ChampTable(
        {t: {bt: champ_prob(t, bt, V) for bt in BracketType} for t in (1, 2, 3, 4)}
    )


def _classify_pairing(order: Sequence[int]) -> BracketType:
    """Bracket type induced by a seed order (semis: 1st-4th and 2nd-3rd)."""
    pairs = {frozenset((order[0], order[3])), frozenset((order[1], order[2]))}
    for bt, ((a, b), (c, d)) in _PAIRINGS.items():
        if pairs == {frozenset((a, b)), frozenset((c, d))}:
            return bt
    raise AssertionError("unreachable: every pairing of 4 teams is A, B or C")


def _final_standings_set() -> frozenset[tuple[int, ...]]:
    finals = set()
    for state in reachable_states(3):
        for w1 in (1, 2):
            for w2 in (3, 4):
                finals.add(final_standings(state, w1, w2))
    return frozenset(finals)


_FINALS: frozenset[tuple[int, ...]] | None = None


def seeding_distribution(final_wins: Sequence[int]) -> Dict[BracketType, Fraction]:
    """Distribution over bracket types induced by final standings.

    Teams are sorted by wins; each block of tied teams is ordered uniformly
    at random.  Implemented by enumerating the per-block permutations (the
    oracle module independently filters all 24 orders instead).  Every
    probability is a multiple of 1/24.
    """
    global _FINALS
    if _FINALS is None:
        _FINALS = _final_standings_set()
    key = tuple(final_wins)
    if key not in _FINALS:
        raise InvalidStateError(f"{key} is not a reachable final standing")

    by_wins: dict[int, list[int]] = {}
    for team, w in enumerate(key, start=1):
        by_wins.setdefault(w, []).append(team)
    blocks = [by_wins[w] for w in sorted(by_wins, reverse=True)]

    counts: dict[BracketType, int] = {bt: 0 for bt in BracketType}
    total = 0
    for block_orders in product(*(permutations(b) for b in blocks)):
        order = [t for block in block_orders for t in block]
        counts[_classify_pairing(order)] += 1
        total += 1
    return {bt: Fraction(counts[bt], total) for bt in BracketType}


def expected_champ_prob(team: int, final_wins: Sequence[int], V: Weights) -> Fraction:
    """Championship probability of `team` given final standings: the
    seeding-distribution mixture of the three bracket-type values."""
    return _expected_champ_prob(team, tuple(final_wins), V)


@lru_cache(maxsize=None)
def _expected_champ_prob(
    team: int, final_wins: tuple[int, ...], V: Weights
) -> Fraction:
    dist = seeding_distribution(final_wins)
    return sum(p * champ_prob(team, bt, V) for bt, p in dist.items() if p)


def verify_orderings(V: Weights) -> bool:
    """Check the four bracket-preference chains under ordered weights.

    The strongest team prefers A over B over C; team 2 prefers B, then A,
    then C; team 3 prefers C, then A, then B; team 4 prefers C, then B,
    then A.  All comparisons are exact.
    """
    t = champ_table(V)
    A, B, C = BracketType.A, BracketType.B, BracketType.C
    return (
        t.prob(1, A) >= t.prob(1, B) >= t.prob(1, C)
        and t.prob(2, B) >= t.prob(2, A) >= t.prob(2, C)
        and t.prob(3, C) >= t.prob(3, A) >= t.prob(3, B)
        and t.prob(4, C) >= t.prob(4, B) >= t.prob(4, A)
    )
