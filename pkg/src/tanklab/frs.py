"""Last-week analysis when all four teams may tank simultaneously.

In week 3 the games are 1–2 and 3–4 and each team i picks a trying
probability πi.  Everything a team cares about flows through just two
numbers: the effective win probabilities A12 (team 1 beats team 2) and A34.
Team i's championship probability Ei is bilinear in (A12, A34), so each
team's payoff is affine in its own π and best responses are pure unless the
team is exactly indifferent.

This module builds the conditional payoff tables (Q[i][cond] for the four
try/tank combinations of a game), the expected payoffs and their exact
π-derivatives, enumerates the 16 pure profiles for Nash equilibria, and
solves the indifference system for fully-mixed equilibria.  When v1 = v2 and
v3 = v4 the mixed solutions form the continuum {π1 = π2, π3 = π4} with
A12 = A34 = 1/2; for some win vectors a mixed family exists for any weights
(whenever indifference pins both games to exact coin flips).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .brackets import expected_champ_prob
from .model import (
    DomainError,
    Weights,
    as_fraction,
    effective_win_prob,
    final_standings,
    require_state,
    validate_profile,
    win_prob,
)

HALF = Fraction(1, 2)
CONDITIONS = ("a", "b", "c", "d")  # both try / first tanks / second tanks / both tank
PAIRS: Tuple[Tuple[int, int], Tuple[int, int]] = ((1, 2), (3, 4))

Profile = Tuple[Fraction, Fraction, Fraction, Fraction]


def _own_game_dist(pair: Tuple[int, int], V: Weights, cond: str) -> List[Tuple[int, Fraction]]:
    """Winner distribution of the pair's game under one try/tank condition."""
    first, second = pair
    if cond == "a":
        p = win_prob(V.weight(first), V.weight(second))
        return [(first, p), (second, 1 - p)]
    if cond == "b":
        return [(second, Fraction(1))]
    if cond == "c":
        return [(first, Fraction(1))]
    if cond == "d":
        return [(first, HALF), (second, HALF)]
    raise DomainError(f"unknown condition {cond!r}")


@dataclass(frozen=True)
class PayoffTable:
    """Conditional championship probabilities Q[team][condition].

    Entries for teams 1 and 2 are computed against a fixed win probability
    A34 of the other game (and vice versa), which is exactly how they enter
    the bilinear payoff expansion.
    """

    q: Mapping[int, Mapping[str, Fraction]]

    def entry(self, team: int, cond: str) -> Fraction:
        return self.q[team][cond]

    def teams(self) -> Tuple[int, ...]:
        return tuple(sorted(self.q))


def payoffs(
    wins: Sequence[int], V: Weights, a_other, pair: Tuple[int, int]
) -> PayoffTable:
    """Q-table slice for one game's two teams, the other game fixed at `a_other`.

    For each condition the own game's winner distribution is deterministic or
    odds-weighted; the other game resolves first-team-wins with probability
    `a_other`; each joint outcome feeds the post-seeding championship value.
    """
    state = require_state(3, wins)
    if pair not in PAIRS:
        raise DomainError(f"pair must be one of {PAIRS}, got {pair}")
    a = as_fraction(a_other)
    if not 0 <= a <= 1:
        raise DomainError(f"win probability {a} outside [0, 1]")
    other = PAIRS[1] if pair == PAIRS[0] else PAIRS[0]
    other_dist = [(other[0], a), (other[1], 1 - a)]

    table: Dict[int, Dict[str, Fraction]] = {t: {} for t in pair}
    for cond in CONDITIONS:
        own_dist = _own_game_dist(pair, V, cond)
        for team in pair:
            total = Fraction(0)
            for w_own, p_own in own_dist:
                for w_other, p_other in other_dist:
                    if p_own == 0 or p_other == 0:
                        continue
                    w12, w34 = (w_own, w_other) if pair == (1, 2) else (w_other, w_own)
                    finals = final_standings(state, w12, w34)
                    total += p_own * p_other * expected_champ_prob(team, finals, V)
            table[team][cond] = total
    return PayoffTable({t: dict(cs) for t, cs in table.items()})


def _full_table(wins: Sequence[int], V: Weights, a12: Fraction, a34: Fraction) -> PayoffTable:
    front = payoffs(wins, V, a34, (1, 2))
    back = payoffs(wins, V, a12, (3, 4))
    return PayoffTable({**front.q, **back.q})


def effective_pair(V: Weights, pi: Profile) -> Tuple[Fraction, Fraction]:
    """(A12, A34): each game's first-team win probability under the profile."""
    a12 = effective_win_prob(V.weight(1), V.weight(2), pi[0], pi[1])
    a34 = effective_win_prob(V.weight(3), V.weight(4), pi[2], pi[3])
    return a12, a34


def expected_payoffs(
    wins: Sequence[int], V: Weights, pi: Sequence
) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """Championship probabilities (E1..E4) under trying probabilities π."""
    prof = validate_profile(pi)
    a12, a34 = effective_pair(V, prof)
    table = _full_table(wins, V, a12, a34)
    out = []
    for first, second in PAIRS:
        pf, ps = prof[first - 1], prof[second - 1]
        weights = {
            "a": pf * ps,
            "b": (1 - pf) * ps,
            "c": pf * (1 - ps),
            "d": (1 - pf) * (1 - ps),
        }
        for team in (first, second):
            out.append(sum(w * table.entry(team, c) for c, w in weights.items()))
    return tuple(out)  # type: ignore[return-value]


@dataclass(frozen=True)
class DerivativeVector:
    """Exact ∂Ei/∂πi for the four teams (constant in πi itself)."""

    d1: Fraction
    d2: Fraction
    d3: Fraction
    d4: Fraction

    def as_tuple(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.d1, self.d2, self.d3, self.d4)


def stationarity(wins: Sequence[int], V: Weights, pi: Sequence) -> DerivativeVector:
    """Own-probability payoff derivatives at π.

    For the first team of a pair:  ∂E/∂π = π_partner·(Qa−Qb−Qc+Qd) + Qc − Qd;
    for the second team, the tail term is Qb − Qd.  The Q tables are held at
    the profile's effective probabilities, so each derivative is exact.
    """
    prof = validate_profile(pi)
    a12, a34 = effective_pair(V, prof)
    table = _full_table(wins, V, a12, a34)
    out = []
    for first, second in PAIRS:
        pf, ps = prof[first - 1], prof[second - 1]
        for team, partner_pi, own_tank_cond in (
            (first, ps, "b"),
            (second, pf, "c"),
        ):
            qa, qb, qc, qd = (table.entry(team, c) for c in CONDITIONS)
            mixed = qa - qb - qc + qd
            tail = (qc - qd) if own_tank_cond == "b" else (qb - qd)
            out.append(partner_pi * mixed + tail)
    return DerivativeVector(*out)


@dataclass(frozen=True)
class PureEquilibrium:
    """A pure profile no team can improve on by flipping its own action.

    `margins[i]` is Ei(profile) − Ei(profile with team i's bit flipped); all
    margins are ≥ 0, which (payoffs being affine in own π) certifies that no
    deviation anywhere in [0,1] helps either.
    """

    profile: Tuple[int, int, int, int]
    payoffs: Tuple[Fraction, Fraction, Fraction, Fraction]
    margins: Tuple[Fraction, Fraction, Fraction, Fraction]


def pure_nash_enumerate(wins: Sequence[int], V: Weights) -> List[PureEquilibrium]:
    """Check all 16 pure profiles for equilibrium by endpoint deviations."""
    state = require_state(3, wins)
    values: Dict[Tuple[int, int, int, int], Tuple[Fraction, ...]] = {}
    for code in range(16):
        prof = tuple((code >> (3 - i)) & 1 for i in range(4))
        values[prof] = expected_payoffs(state, V, prof)

    found = []
    for prof, evs in values.items():
        margins = []
        for i in range(4):
            flipped = list(prof)
            flipped[i] ^= 1
            margins.append(evs[i] - values[tuple(flipped)][i])
        if all(m >= 0 for m in margins):
            found.append(PureEquilibrium(prof, evs, tuple(margins)))
    return found


@dataclass(frozen=True)
class MixedSolution:
    """A fully-mixed equilibrium family.

    Every profile with effective probabilities (a12, a34) makes all four
    teams indifferent, so the family is the product of the two level curves.
    `kind` is "continuum" for the diagonal family {π1=π2, π3=π4} at
    A12 = A34 = 1/2 (exists exactly when v1 = v2 and v3 = v4); other
    consistent solutions are reported as kind "family" with one sample
    interior profile.
    """

    kind: str  # "continuum" | "family"
    a12: Fraction
    a34: Fraction
    sample_profile: Profile
    payoffs: Tuple[Fraction, Fraction, Fraction, Fraction]
    note: str = ""


def _indifference_root(u: Fraction, w: Fraction) -> Optional[object]:
    """Solve u + w·x = 0 for x: a value, "free" (always 0), or None (never)."""
    if w == 0:
        return "free" if u == 0 else None
    return -u / w


def _merge_roots(r1, r2) -> Optional[object]:
    if r1 is None or r2 is None:
        return None
    if r1 == "free":
        return r2
    if r2 == "free":
        return r1
    return r1 if r1 == r2 else None


def _interior_profile_for(p_first: Fraction, target: Fraction) -> Optional[Tuple[Fraction, Fraction]]:
    """Interior (π_first, π_second) giving an effective win prob of `target`.

    A(s, t) is affine and strictly decreasing in t, spanning [p·s, (1+s)/2],
    so pick s putting `target` strictly inside and solve for t.
    """
    if not 0 < target < 1:
        return None
    lo = max(Fraction(0), 2 * target - 1)
    hi = min(Fraction(1), target / p_first) if p_first > 0 else Fraction(1)
    if not lo < hi:
        return None
    s = (lo + hi) / 2
    denom = s * (1 - p_first) + HALF * (1 - s)
    t = (HALF * (1 + s) - target) / denom
    if not (0 < s < 1 and 0 < t < 1):
        return None
    return (s, t)


def mixed_nash_check(wins: Sequence[int], V: Weights) -> Optional[MixedSolution]:
    """Find the fully-mixed equilibria of the week-3 game, if any.

    All four indifference conditions are linear in the pair win
    probabilities: teams 1 and 2 are indifferent iff A34 hits the root of
    their payoff slope, teams 3 and 4 likewise for A12.  The roots are
    derived from the Q-tables for whatever win vector is given, intersected
    exactly, and realized by interior trying probabilities when possible.
    """
    state = require_state(3, wins)
    # slopes: dEi/dA_own = u_i + w_i * A_other, from the four corner payoffs
    e = {
        (w12, w34): final_standings(state, w12, w34)
        for w12 in (1, 2)
        for w34 in (3, 4)
    }
    ecp = {k: [expected_champ_prob(t, f, V) for t in (1, 2, 3, 4)] for k, f in e.items()}

    def corners(team: int) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        i = team - 1
        return (ecp[(1, 3)][i], ecp[(1, 4)][i], ecp[(2, 3)][i], ecp[(2, 4)][i])

    roots_a34 = []
    for team in (1, 2):
        e13, e14, e23, e24 = corners(team)
        u, w = e14 - e24, e13 - e14 - e23 + e24
        roots_a34.append(_indifference_root(u, w))
    roots_a12 = []
    for team in (3, 4):
        e13, e14, e23, e24 = corners(team)
        u, w = e23 - e24, e13 - e14 - e23 + e24
        roots_a12.append(_indifference_root(u, w))

    a34 = _merge_roots(*roots_a34)
    a12 = _merge_roots(*roots_a12)
    if a34 is None or a12 is None:
        return None
    free_note = []
    if a34 == "free":
        a34 = HALF
        free_note.append("teams 1-2 indifferent for every A34; anchored at 1/2")
    if a12 == "free":
        a12 = HALF
        free_note.append("teams 3-4 indifferent for every A12; anchored at 1/2")
    if not (0 <= a12 <= 1 and 0 <= a34 <= 1):
        return None

    v1, v2, v3, v4 = V
    if v1 == v2 and v3 == v4 and a12 == HALF and a34 == HALF:
        # the diagonal family: A12(s,s) = A34(t,t) = 1/2 identically
        sample = (HALF, HALF, HALF, HALF)
        evs = expected_payoffs(state, V, sample)
        return MixedSolution(
            "continuum", HALF, HALF, sample, evs,
            "every profile with pi1=pi2 and pi3=pi4 is an equilibrium",
        )

    front = _interior_profile_for(win_prob(v1, v2), a12)
    back = _interior_profile_for(win_prob(v3, v4), a34)
    if front is None or back is None:
        return None
    sample: Profile = (front[0], front[1], back[0], back[1])
    ds = stationarity(state, V, sample).as_tuple()
    assert all(d == 0 for d in ds), "interior solution must sit on all roots"
    evs = expected_payoffs(state, V, sample)
    return MixedSolution(
        "family", a12, a34, sample, evs,
        "; ".join(free_note) or
        "every profile realizing (a12, a34) makes all four teams indifferent",
    )


@dataclass(frozen=True)
class EquilibriumReport:
    """Pure equilibria plus the mixed family, when one exists."""

    wins: Tuple[int, int, int, int]
    weights: Weights
    pure: Tuple[PureEquilibrium, ...]
    mixed: Optional[MixedSolution]

    @property
    def mixed_continuum(self) -> Optional[MixedSolution]:
        if self.mixed is not None and self.mixed.kind == "continuum":
            return self.mixed
        return None


def equilibrium_report(wins: Sequence[int], V: Weights) -> EquilibriumReport:
    state = require_state(3, wins)
    return EquilibriumReport(
        state, V, tuple(pure_nash_enumerate(state, V)), mixed_nash_check(state, V)
    )
