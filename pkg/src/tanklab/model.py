"""Core domain model for a four-team league with a fixed three-week round robin.

Four teams (1..4) play a round robin over three weeks, two games per week:

    week 1:  1-4  and  2-3
    week 2:  1-3  and  2-4
    week 3:  1-2  and  3-4

so every pair meets exactly once.  Each team has a nonnegative strength
("weight"); in an honest game, team i beats team j with probability
v_i / (v_i + v_j).  A team may also choose to throw a game: it plays an
"action" pi in [0, 1], the probability with which it actually tries to win.
A team that does not try loses for sure unless its opponent also gives up,
in which case the game is decided by a fair coin.

All probabilities are kept as exact ``fractions.Fraction`` values so that
downstream identities (oracle equivalence, equilibrium certificates) can be
checked with exact equality instead of float tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

RationalLike = Union[int, float, str, Fraction]

TEAMS = (1, 2, 3, 4)

# Fixed pairings per week, 1-based team ids.  Index 0 is the game that
# involves team 1; index 1 is the other game.
SCHEDULE: dict[int, tuple[tuple[int, int], tuple[int, int]]] = {
    1: ((1, 4), (2, 3)),
    2: ((1, 3), (2, 4)),
    3: ((1, 2), (3, 4)),
}

WEEKS = (1, 2, 3)


class DomainError(ValueError):
    """An input violates a model invariant (bad weights, impossible state...)."""


class DegenerateMatchError(DomainError):
    """Both teams in a game have zero weight and both try to win: 0/0 odds."""


class InvalidStateError(DomainError):
    """A win vector is not reachable under the fixed schedule."""


def as_fraction(x: RationalLike) -> Fraction:
    """Parse a rational from an int, Fraction, float or string.

    Strings accept either "p/q" or a decimal literal; decimals are expanded
    literally, so "0.3" becomes exactly 3/10.  Floats are converted through
    their shortest decimal repr for the same reason (0.3 -> 3/10, not the
    binary artifact 5404319552844595/18014398509481984).
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational from {x!r}") from exc
    raise DomainError(f"cannot parse rational from {type(x).__name__}")


@dataclass(frozen=True)
class Weights:
    """Ordered team strengths v1 >= v2 >= v3 >= v4 >= 0.

    At most one weight (necessarily v4) may be zero; two zero weights would
    allow a 0/0 game.  Weights need not be normalized -- every probability in
    the model is scale invariant -- but ``canonical()`` rescales to v1 = 1.
    """

    v: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        if len(self.v) != 4:
            raise DomainError(f"need exactly 4 weights, got {len(self.v)}")
        if any(w < 0 for w in self.v):
            raise DomainError(f"weights must be nonnegative: {self.v}")
        if not (self.v[0] >= self.v[1] >= self.v[2] >= self.v[3]):
            raise DomainError(
                f"weights must be ordered v1 >= v2 >= v3 >= v4, got {tuple(map(str, self.v))}"
            )
        if sum(1 for w in self.v if w == 0) > 1:
            raise DomainError("at most one team may have zero weight")
        if self.v[0] == 0:
            raise DomainError("the strongest team cannot have zero weight")

    @classmethod
    def of(cls, *values: RationalLike) -> "Weights":
        if len(values) == 1 and isinstance(values[0], (tuple, list)):
            values = tuple(values[0])
        return cls(tuple(as_fraction(x) for x in values))  # type: ignore[arg-type]

    def canonical(self) -> "Weights":
        """Rescale so that v1 = 1 (all probabilities are unchanged)."""
        v1 = self.v[0]
        return Weights(tuple(w / v1 for w in self.v))  # type: ignore[arg-type]

    def weight(self, team: int) -> Fraction:
        return self.v[team - 1]

    def __iter__(self):
        return iter(self.v)

    def __getitem__(self, idx: int) -> Fraction:
        return self.v[idx]

    def as_floats(self) -> tuple[float, float, float, float]:
        return tuple(float(w) for w in self.v)  # type: ignore[return-value]


def win_prob(vi: RationalLike, vj: RationalLike) -> Fraction:
    """Probability that a team of weight vi beats a team of weight vj.

    This is the classic strength-ratio model vi / (vi + vj).  Both weights
    zero has no defined odds and raises DegenerateMatchError; the caller is
    expected to fall back to a fair coin only when neither team is trying.
    """
    a, b = as_fraction(vi), as_fraction(vj)
    if a < 0 or b < 0:
        raise DomainError("weights must be nonnegative")
    if a == 0 and b == 0:
        raise DegenerateMatchError("both teams have zero weight; 0/0 win odds")
    return a / (a + b)


def effective_win_prob(
    vi: RationalLike, vj: RationalLike, pi: RationalLike, pj: RationalLike
) -> Fraction:
    """Win probability for team i once both teams' actions are mixed in.

    With actions pi, pj in [0, 1] (1 = try to win, 0 = throw the game):

    * both try                -> honest odds p_ij
    * i tries, j does not     -> i wins surely
    * j tries, i does not     -> i loses surely
    * neither tries           -> fair coin

    which averages to  p_ij*pi*pj + pi*(1-pj) + (1-pi)*(1-pj)/2.
    """
    api, apj = as_fraction(pi), as_fraction(pj)
    for p in (api, apj):
        if not 0 <= p <= 1:
            raise DomainError(f"action probability {p} outside [0, 1]")
    if api == 0 and apj == 0:
        # pure coin flip; weights are irrelevant so 0/0 weights are fine
        return Fraction(1, 2)
    a, b = as_fraction(vi), as_fraction(vj)
    if a == 0 and b == 0:
        # Only the both-try component needs honest odds.  If either side has
        # some probability of trying, the 0/0 case arises with positive
        # probability and the model is genuinely undefined.
        if api > 0 and apj > 0:
            raise DegenerateMatchError("both teams have zero weight; 0/0 win odds")
        pij = Fraction(0)  # unreachable branch weight
    else:
        pij = win_prob(a, b)
    return pij * api * apj + api * (1 - apj) + Fraction(1, 2) * (1 - api) * (1 - apj)


def validate_profile(pi: Sequence[RationalLike]) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Check an action profile (pi1..pi4) and return it as exact fractions."""
    if len(pi) != 4:
        raise DomainError(f"need exactly 4 action probabilities, got {len(pi)}")
    out = tuple(as_fraction(p) for p in pi)
    for p in out:
        if not 0 <= p <= 1:
            raise DomainError(f"action probability {p} outside [0, 1]")
    return out  # type: ignore[return-value]


def games_for_week(week: int) -> tuple[tuple[int, int], tuple[int, int]]:
    if week not in SCHEDULE:
        raise DomainError(f"week must be 1, 2 or 3, got {week}")
    return SCHEDULE[week]


def apply_result(wins: Sequence[int], winner: int) -> tuple[int, ...]:
    """Return a win vector with one more win credited to `winner` (1-based)."""
    out = list(wins)
    out[winner - 1] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def reachable_states(week: int) -> tuple[tuple[int, int, int, int], ...]:
    """All win vectors that can hold at the *start* of the given week.

    Computed by brute-force enumeration of every outcome sequence of the
    preceding weeks, so the answer is correct by construction:  week 1 has
    just [0,0,0,0]; week 2 has 4 states; week 3 has 15 (the pair of outcomes
    that both produce [1,1,1,1] collapse into one state).
    """
    if week not in SCHEDULE:
        raise DomainError(f"week must be 1, 2 or 3, got {week}")
    states = {(0, 0, 0, 0)}
    for played in range(1, week):
        nxt = set()
        for state in states:
            (i, j), (k, l) = SCHEDULE[played]
            for w1 in (i, j):
                for w2 in (k, l):
                    nxt.add(apply_result(apply_result(state, w1), w2))
        states = nxt
    return tuple(sorted(states, reverse=True))


def validate_state(week: int, wins: Sequence[int]) -> bool:
    """True iff `wins` can occur at the start of `week` under the schedule."""
    if week not in SCHEDULE:
        return False
    if len(wins) != 4 or any(not isinstance(w, int) or w < 0 for w in wins):
        return False
    return tuple(wins) in reachable_states(week)


def require_state(week: int, wins: Sequence[int]) -> tuple[int, int, int, int]:
    """validate_state or raise, returning the state as a tuple."""
    if not validate_state(week, wins):
        raise InvalidStateError(
            f"win vector {tuple(wins)} is not reachable at the start of week {week}"
        )
    return tuple(wins)  # type: ignore[return-value]


def final_standings(week3_state: Sequence[int], winner12: int, winner34: int) -> tuple[int, ...]:
    """Final records after the two week-3 games."""
    return apply_result(apply_result(week3_state, winner12), winner34)
