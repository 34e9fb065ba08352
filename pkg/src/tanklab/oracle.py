"""Ground truth by exhaustive enumeration and seeded simulation.

Everything in here deliberately avoids the closed forms used elsewhere in the
package.  Championship probabilities are obtained by expanding the whole
remaining game tree: every regular-season outcome, every valid seeding order
(ties resolved by averaging over all permutations that respect the standings),
and both rounds of the knockout bracket.  The library's analytic results are
tested against these values with exact rational equality.

A vectorized Monte Carlo simulator provides a second, statistical route to the
same quantities.  It uses numpy's PCG64 generator, is fully determined by
(seed, n), and partitions work into fixed-size batches each drawing from a
spawned child seed, so results do not depend on batching.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import lcm
from typing import Mapping, Sequence

import numpy as np

from .model import (
    SCHEDULE,
    RationalLike,
    Weights,
    apply_result,
    as_fraction,
    effective_win_prob,
    require_state,
    validate_profile,
    win_prob,
)

MC_GENERATOR = "numpy PCG64"
MC_BATCH_SIZE = 250_000

ONE = Fraction(1)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PolicyTable:
    """Per-team actions, keyed by (team, week, win vector at week start).

    Anything not listed falls back to `default` (trying to win).  The FRNS
    analyses use tables where teams 2..4 are never overridden.
    """

    actions: Mapping[tuple[int, int, tuple[int, ...]], Fraction] = field(default_factory=dict)
    default: Fraction = ONE

    @classmethod
    def all_try(cls) -> "PolicyTable":
        return cls()

    @classmethod
    def week3_profile(cls, state: Sequence[int], profile: Sequence[RationalLike]) -> "PolicyTable":
        """All four teams play the given actions in week 3 at `state`."""
        pi = validate_profile(profile)
        state = tuple(state)
        return cls({(t, 3, state): pi[t - 1] for t in (1, 2, 3, 4)})

    def action(self, team: int, week: int, state: tuple[int, ...]) -> Fraction:
        return self.actions.get((team, week, state), self.default)

    def updated(
        self, team: int, week: int, state: Sequence[int], alpha: RationalLike
    ) -> "PolicyTable":
        new = dict(self.actions)
        new[(team, week, tuple(state))] = as_fraction(alpha)
        return PolicyTable(new, self.default)


def seeding_orders(final_wins: Sequence[int]) -> list[tuple[int, int, int, int]]:
    """All seed orders compatible with the standings (wins non-increasing).

    Each is equally likely under coin-flip tie resolution, so averaging over
    this list is the exact tie-break distribution.
    """
    return [
        perm
        for perm in permutations((1, 2, 3, 4))
        if all(final_wins[perm[k] - 1] >= final_wins[perm[k + 1] - 1] for k in range(3))
    ]


def bracket_champ_probs(
    V: Weights, pairing: tuple[tuple[int, int], tuple[int, int]]
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Championship probability of each team for a fixed semifinal pairing.

    Pure game-tree walk: semifinal winners, then the final, all honest games.
    """
    probs = [Fraction(0)] * 4
    (i, j), (k, l) = pairing
    for w1 in (i, j):
        p1 = win_prob(V.weight(w1), V.weight(j if w1 == i else i))
        for w2 in (k, l):
            p2 = win_prob(V.weight(w2), V.weight(l if w2 == k else k))
            for wf in (w1, w2):
                pf = win_prob(V.weight(wf), V.weight(w2 if wf == w1 else w1))
                probs[wf - 1] += p1 * p2 * pf
    return tuple(probs)  # type: ignore[return-value]


def enumerate_final(
    V: Weights, final_wins: Sequence[int]
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Championship probabilities given final standings, averaging seedings."""
    orders = seeding_orders(final_wins)
    totals = [Fraction(0)] * 4
    for order in orders:
        pairing = ((order[0], order[3]), (order[1], order[2]))
        for t, p in enumerate(bracket_champ_probs(V, pairing)):
            totals[t] += p
    n = len(orders)
    return tuple(p / n for p in totals)  # type: ignore[return-value]


def enumerate_champ_prob(
    week: int,
    wins: Sequence[int],
    V: Weights,
    policies: PolicyTable | None = None,
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Exact championship probabilities for all four teams, by enumeration.

    Expands every remaining regular-season outcome under the given action
    policies, then every seeding order and both bracket rounds.  Runs in
    exact rational arithmetic throughout.
    """
    state = require_state(week, wins)
    policies = policies or PolicyTable.all_try()

    def walk(w: int, st: tuple[int, ...]) -> tuple[Fraction, ...]:
        if w > 3:
            return enumerate_final(V, st)
        (i, j), (k, l) = SCHEDULE[w]
        p_ij = effective_win_prob(
            V.weight(i), V.weight(j), policies.action(i, w, st), policies.action(j, w, st)
        )
        p_kl = effective_win_prob(
            V.weight(k), V.weight(l), policies.action(k, w, st), policies.action(l, w, st)
        )
        totals = [Fraction(0)] * 4
        for winner1, q1 in ((i, p_ij), (j, 1 - p_ij)):
            for winner2, q2 in ((k, p_kl), (l, 1 - p_kl)):
                if q1 == 0 or q2 == 0:
                    continue
                sub = walk(w + 1, apply_result(apply_result(st, winner1), winner2))
                for t in range(4):
                    totals[t] += q1 * q2 * sub[t]
        return tuple(totals)

    return walk(week, state)  # type: ignore[return-value]


def _week3_values(V: Weights, state: tuple[int, ...]) -> dict[Fraction, Fraction]:
    """Team 1's exact value at a week-3 state for alpha in {0, 1}, honest rivals."""
    out = {}
    for alpha in (Fraction(0), ONE):
        table = PolicyTable({(1, 3, state): alpha})
        out[alpha] = enumerate_champ_prob(3, state, V, table)[0]
    return out


def _successors(
    V: Weights, week: int, state: tuple[int, ...]
) -> dict[Fraction, list[tuple[tuple[int, ...], Fraction]]]:
    """Successor states with probabilities, for team 1's alpha in {1, 0}.

    Team 1's game uses the effective odds for (alpha, 1); the other game is
    honest.  Zero-probability branches are dropped.
    """
    (i, j), (k, l) = SCHEDULE[week]
    p_other = win_prob(V.weight(k), V.weight(l))
    out = {}
    for alpha in (ONE, Fraction(0)):
        p_own = effective_win_prob(V.weight(i), V.weight(j), alpha, ONE)
        branches = []
        for w1, q1 in ((i, p_own), (j, 1 - p_own)):
            for w2, q2 in ((k, p_other), (l, 1 - p_other)):
                if q1 == 0 or q2 == 0:
                    continue
                branches.append((apply_result(apply_result(state, w1), w2), q1 * q2))
        out[alpha] = branches
    return out


def best_policy_bruteforce(
    week: int, wins: Sequence[int], V: Weights
) -> tuple[Fraction, PolicyTable]:
    """Exhaustive search over team 1's pure policies; rivals always try.

    Enumerates every assignment of alpha in {0,1} to every decision state
    team 1 can still reach, evaluates each policy exactly, and returns the
    maximum.  Week 1 has 2^20 policies; the per-policy value is factored over
    the outcome tree and accumulated in integer arithmetic over a common
    denominator, but the max is still taken over the full policy set, so this
    stays an independent check on the backward-induction solver.
    """
    state = require_state(week, wins)

    if week == 3:
        vals = _week3_values(V, state)
        alpha = ONE if vals[ONE] >= vals[Fraction(0)] else Fraction(0)
        return vals[alpha], PolicyTable({(1, 3, state): alpha})

    if week == 2:
        succs = _successors(V, 2, state)
        week3_states = sorted({s for branch in succs.values() for s, _ in branch})
        best_val, best_policy = None, None
        for alpha2 in (ONE, Fraction(0)):
            for mask in range(2 ** len(week3_states)):
                assign = {
                    s: (ONE if mask >> b & 1 else Fraction(0))
                    for b, s in enumerate(week3_states)
                }
                value = Fraction(0)
                for succ, prob in succs[alpha2]:
                    table = PolicyTable({(1, 3, succ): assign[succ]})
                    value += prob * enumerate_champ_prob(3, succ, V, table)[0]
                if best_val is None or value > best_val:
                    actions = {(1, 2, state): alpha2}
                    actions.update({(1, 3, s): a for s, a in assign.items()})
                    best_val, best_policy = value, PolicyTable(actions)
        return best_val, best_policy

    week2_states = sorted(
        {s for branch in _successors(V, 1, state).values() for s, _ in branch}
    )
    week3_states = sorted(
        {
            s
            for w2 in week2_states
            for branch in _successors(V, 2, w2).values()
            for s, _ in branch
        }
    )
    v3 = {s: _week3_values(V, s) for s in week3_states}

    best_val, best_choice = None, None
    for alpha1 in (ONE, Fraction(0)):
        for mask2 in range(2 ** len(week2_states)):
            alpha2 = {
                s: (ONE if mask2 >> b & 1 else Fraction(0)) for b, s in enumerate(week2_states)
            }
            # Probability of reaching each week-3 state under (alpha1, alpha2).
            # A state reachable along two paths gets the summed probability;
            # a policy picks one action there, consistently across paths.
            reach: dict[tuple[int, ...], Fraction] = {}
            for w2state, p1 in _successors(V, 1, state)[alpha1]:
                for w3state, p2 in _successors(V, 2, w2state)[alpha2[w2state]]:
                    reach[w3state] = reach.get(w3state, Fraction(0)) + p1 * p2
            base = sum(
                (reach.get(s, Fraction(0)) * v3[s][Fraction(0)] for s in week3_states),
                Fraction(0),
            )
            deltas = [reach.get(s, Fraction(0)) * (v3[s][ONE] - v3[s][Fraction(0)])
                      for s in week3_states]
            denom = lcm(base.denominator, *(d.denominator for d in deltas))
            base_i = base.numerator * (denom // base.denominator)
            deltas_i = [d.numerator * (denom // d.denominator) for d in deltas]
            sums = [base_i]
            for d in deltas_i:
                sums += [s + d for s in sums]
            top = max(range(len(sums)), key=sums.__getitem__)
            value = Fraction(sums[top], denom)
            if best_val is None or value > best_val:
                best_val = value
                best_choice = (alpha1, dict(alpha2), top)

    alpha1, alpha2, mask3 = best_choice
    actions = {(1, 1, state): alpha1}
    actions.update({(1, 2, s): a for s, a in alpha2.items()})
    actions.update(
        {(1, 3, s): (ONE if mask3 >> b & 1 else Fraction(0)) for b, s in enumerate(week3_states)}
    )
    return best_val, PolicyTable(actions)


def best_response_oracle(
    wins: Sequence[int],
    V: Weights,
    profile: Sequence[RationalLike],
    team: int,
    step: RationalLike = Fraction(1, 10),
) -> tuple[Fraction, Fraction]:
    """Best action for one team on a grid, others fixed: (best alpha, value).

    Payoffs come from the week-3 enumeration, so this is an independent
    certificate check for equilibrium candidates.  Returns the smallest
    grid alpha attaining the maximum.
    """
    state = require_state(3, wins)
    pi = list(validate_profile(profile))
    h = as_fraction(step)
    if not 0 < h <= 1:
        raise ValueError(f"grid step must be in (0, 1], got {h}")
    best_alpha, best_value = None, None
    alpha = Fraction(0)
    while alpha <= 1:
        pi[team - 1] = alpha
        value = enumerate_champ_prob(3, state, V, PolicyTable.week3_profile(state, pi))[team - 1]
        if best_value is None or value > best_value:
            best_alpha, best_value = alpha, value
        alpha += h
    return best_alpha, best_value


@dataclass(frozen=True)
class SimulationResult:
    """Season + bracket simulation summary."""

    frequencies: tuple[float, float, float, float]
    sample_count: int
    seed: int
    standard_errors: tuple[float, float, float, float]
    generator: str = MC_GENERATOR
    batch_size: int = MC_BATCH_SIZE

    def three_sigma_covers(self, exact: Sequence[float]) -> bool:
        return all(
            abs(f - e) <= 3 * max(se, 1e-12)
            for f, e, se in zip(self.frequencies, exact, self.standard_errors)
        )


def monte_carlo(
    V: Weights, policies: PolicyTable | None, n: int, seed: int
) -> SimulationResult:
    """Simulate n seasons + brackets; deterministic for a given (seed, n).

    Work is split into fixed-size batches; batch b draws from the b-th child
    of SeedSequence(seed), so totals are independent of scheduling.
    """
    if n < 1:
        raise ValueError("need at least one simulated season")
    policies = policies or PolicyTable.all_try()
    counts = np.zeros(4, dtype=np.int64)
    children = np.random.SeedSequence(seed).spawn((n + MC_BATCH_SIZE - 1) // MC_BATCH_SIZE)
    remaining = n
    for child in children:
        size = min(MC_BATCH_SIZE, remaining)
        counts += _simulate_batch(V, policies, size, child)
        remaining -= size
    freqs = counts / n
    ses = np.sqrt(freqs * (1 - freqs) / n)
    return SimulationResult(
        frequencies=tuple(float(f) for f in freqs),
        sample_count=n,
        seed=seed,
        standard_errors=tuple(float(s) for s in ses),
    )


def _simulate_batch(
    V: Weights, policies: PolicyTable, size: int, seedseq: np.random.SeedSequence
) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seedseq))
    weights = np.array(V.as_floats())
    wins = np.zeros((size, 4), dtype=np.int8)

    for week in (1, 2, 3):
        (i, j), (k, l) = SCHEDULE[week]
        # Effective win probabilities vary only with the (few) distinct states.
        codes = wins @ np.array([64, 16, 4, 1], dtype=np.int16)
        p_first = np.empty(size)
        p_second = np.empty(size)
        for code in np.unique(codes):
            st = tuple(int(x) for x in wins[np.argmax(codes == code)])
            mask = codes == code
            p_first[mask] = float(
                effective_win_prob(
                    V.weight(i), V.weight(j),
                    policies.action(i, week, st), policies.action(j, week, st),
                )
            )
            p_second[mask] = float(
                effective_win_prob(
                    V.weight(k), V.weight(l),
                    policies.action(k, week, st), policies.action(l, week, st),
                )
            )
        first_win = rng.random(size) < p_first
        second_win = rng.random(size) < p_second
        wins[first_win, i - 1] += 1
        wins[~first_win, j - 1] += 1
        wins[second_win, k - 1] += 1
        wins[~second_win, l - 1] += 1

    # Seeding: sort by wins descending; iid uniform jitter makes every
    # permutation of a tied block equally likely.
    jitter = rng.random((size, 4))
    order = np.argsort(-(wins + jitter), axis=1, kind="stable")  # columns: seed 1..4

    def game(a_idx: np.ndarray, b_idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        va, vb = weights[a_idx], weights[b_idx]
        a_wins = rng.random(size) < va / (va + vb)
        return np.where(a_wins, a_idx, b_idx), np.where(a_wins, b_idx, a_idx)

    semi1, _ = game(order[:, 0], order[:, 3])
    semi2, _ = game(order[:, 1], order[:, 2])
    champ, _ = game(semi1, semi2)
    return np.bincount(champ, minlength=4).astype(np.int64)
