"""Minimax, Borda, and Copeland selections plus Condorcet queries.

Minimax is implemented twice on purpose: once as the argmin of greatest
pairwise defeats and once through the threshold/dominant-set machinery.
The two must always agree; tests and exhaustive sweeps hold them to that.
"""

from __future__ import annotations

from .graphs import dominant_set, majority_graph, minimal_threshold, profile_threshold
from .prefs import Profile


def minimax_direct(profile: Profile) -> frozenset[int]:
    """Alternatives whose greatest pairwise defeat is smallest."""
    scores = worst_defeats(profile)
    best = min(scores.values())
    return frozenset(x for x, s in scores.items() if s == best)


def worst_defeats(profile: Profile) -> dict[int, int]:
    """Greatest pairwise defeat per alternative: max over rivals of t[y][x]."""
    t = profile.tally()
    n = profile.n
    return {
        x: max(t.count(y, x) for y in range(1, n + 1) if y != x)
        for x in range(1, n + 1)
    }


def minimax_threshold(profile: Profile) -> frozenset[int]:
    """Dominant set at the least admissible threshold where one exists."""
    return dominant_set(profile, profile_threshold(profile))


def borda_scores(profile: Profile) -> dict[int, int]:
    """Positional scores: an alternative ranked j-th by a voter earns n - j."""
    n = profile.n
    scores = {x: 0 for x in range(1, n + 1)}
    for q in profile.columns:
        for x in range(1, n + 1):
            scores[x] += n - q.rank_of(x)
    return scores


def borda(profile: Profile) -> frozenset[int]:
    scores = borda_scores(profile)
    top = max(scores.values())
    return frozenset(x for x, s in scores.items() if s == top)


def copeland_scores(profile: Profile) -> dict[int, int]:
    """Out-degree minus in-degree in the simple-majority graph."""
    g = majority_graph(profile, minimal_threshold(profile.h))
    scores = {x: 0 for x in g.vertices()}
    for x, y in g.arcs:
        scores[x] += 1
        scores[y] -= 1
    return scores


def copeland(profile: Profile) -> frozenset[int]:
    scores = copeland_scores(profile)
    top = max(scores.values())
    return frozenset(x for x, s in scores.items() if s == top)


def condorcet_winner(profile: Profile) -> int | None:
    """The alternative beating every rival by simple majority, if any."""
    mu0 = minimal_threshold(profile.h)
    t = profile.tally()
    n = profile.n
    for x in range(1, n + 1):
        if all(t.count(x, y) >= mu0 for y in range(1, n + 1) if y != x):
            return x
    return None


def condorcet_loser(profile: Profile) -> int | None:
    """The alternative beaten by every rival by simple majority, if any."""
    mu0 = minimal_threshold(profile.h)
    t = profile.tally()
    n = profile.n
    for x in range(1, n + 1):
        if all(t.count(y, x) >= mu0 for y in range(1, n + 1) if y != x):
            return x
    return None


RULES = {
    "minimax": minimax_threshold,
    "borda": borda,
    "copeland": copeland,
}


def selection_record(profile: Profile) -> dict:
    """Per-profile evaluation record for every rule plus Condorcet queries."""
    from .prefs import serialize_profile  # local to avoid import noise at top

    mu_p = profile_threshold(profile)
    reversal = profile.reverse()
    mu_pr = profile_threshold(reversal)
    return {
        "profile": serialize_profile(profile),
        "h": profile.h,
        "n": profile.n,
        "mu_p": mu_p,
        "mu_pr": mu_pr,
        "minimax": sorted(dominant_set(profile, mu_p)),
        "minimax_reversal": sorted(dominant_set(reversal, mu_pr)),
        "borda": sorted(borda(profile)),
        "copeland": sorted(copeland(profile)),
        "condorcet_winner": condorcet_winner(profile),
        "condorcet_loser": condorcet_loser(profile),
    }
