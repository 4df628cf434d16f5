"""Closed-form witness constructions for minimax reversal bias.

The recipes build profiles whose majority structure is known by design: a
rotational cycle on the low-numbered alternatives plus one extra alternative
inserted at the top of an initial block of voters and at the bottom of the
rest.  Each constructor re-derives the claimed thresholds and dominant sets
before certifying, so a bug here fails loudly instead of producing a bogus
witness.
"""

from __future__ import annotations

import random

from .bias import in_table
from .fixtures import fixture_profile
from .graphs import has_l_cycle, majority_graph, minimal_threshold, profile_threshold
from .prefs import Profile, Ranking
from .rules import minimax_threshold
from .search import DEFAULT_SEED, Witness, certify_witness


class ConstructionError(ValueError):
    """Requested construction lies outside its domain or failed validation."""


def _rotation_profile(l: int, h: int, n: int) -> Profile:
    """h voters split as evenly as possible over the l rotations of (1..l).

    Alternatives l+1..n are appended below the cycle in ascending order, so
    pairwise comparisons among 1..l are untouched by the embedding.
    """
    tail = tuple(range(l + 1, n + 1))
    base = list(range(1, l + 1))
    columns: list[Ranking] = []
    for k in range(l):
        order = tuple(base[k:] + base[:k]) + tail
        copies = h // l + (1 if k < h % l else 0)
        columns.extend([Ranking(order)] * copies)
    return Profile(tuple(columns))


def construct_cycle_profile(
    l: int,
    mu: int,
    h: int,
    n: int | None = None,
    seed: int = DEFAULT_SEED,
    attempts: int = 200,
) -> Profile:
    """A profile whose mu-majority graph contains an l-cycle.

    Domain: 2 <= l <= n, h/2 < mu <= (l-1)h/l.  The rotational construction
    is validated with has_l_cycle; if validation ever failed, a bounded
    seeded random search would take over rather than returning unchecked.
    """
    if n is None:
        n = l
    if not 2 <= l <= n:
        raise ConstructionError(f"cycle length must satisfy 2 <= l <= n, got l={l}, n={n}")
    if h < 2:
        raise ConstructionError(f"need at least two voters, got h={h}")
    if not 2 * mu > h:
        raise ConstructionError(f"mu={mu} is not a majority threshold for h={h}")
    if mu * l > (l - 1) * h:
        raise ConstructionError(
            f"no l-cycle can survive threshold mu={mu} with l={l}, h={h}: "
            f"requires mu <= (l-1)h/l = {(l - 1) * h / l:.2f}"
        )
    profile = _rotation_profile(l, h, n)
    if has_l_cycle(majority_graph(profile, mu), l):
        return profile
    rng = random.Random(seed)
    alts = list(range(1, n + 1))
    for _ in range(attempts):
        candidate = Profile(tuple(Ranking(tuple(rng.sample(alts, n))) for _ in range(h)))
        if has_l_cycle(majority_graph(candidate, mu), l):
            return candidate
    raise ConstructionError(
        f"validation failed for (l={l}, mu={mu}, h={h}) and no random profile "
        f"with an l-cycle was found in {attempts} attempts"
    )


def smallest_cycle_length(h: int, n: int, mu: int) -> int | None:
    """Smallest l <= n admitting an l-cycle at threshold mu, if any."""
    for l in range(3, n + 1):
        if mu * l <= (l - 1) * h:
            return l
    return None


def _extend_top_bottom(cycle: Profile, extra: int, top_count: int) -> Profile:
    """Insert a new alternative at the top of the first voters, bottom of the rest."""
    columns = []
    for i, col in enumerate(cycle.columns):
        if i < top_count:
            columns.append(Ranking((extra,) + col.order))
        else:
            columns.append(Ranking(col.order + (extra,)))
    return Profile(tuple(columns))


def _check_witness_shape(profile: Profile, mu_p: int, mu_pr: int, n: int) -> None:
    reversed_profile = profile.reverse()
    got_mu_p = profile_threshold(profile)
    got_mu_pr = profile_threshold(reversed_profile)
    sel_p = minimax_threshold(profile)
    sel_pr = minimax_threshold(reversed_profile)
    if (got_mu_p, got_mu_pr) != (mu_p, mu_pr) or sel_p != {n} or sel_pr != {n}:
        raise ConstructionError(
            f"construction sanity check failed: thresholds ({got_mu_p}, {got_mu_pr}) "
            f"expected ({mu_p}, {mu_pr}); selections {sorted(sel_p)}/{sorted(sel_pr)} "
            f"expected [{n}]/[{n}]"
        )


def construct_witness_odd(h: int, n: int) -> Witness:
    """Type-1 witness for odd h: cycle on 1..n-1 at mu0+1, alternative n split.

    Domain: h odd, n >= 4, h(n-3) >= 3(n-1).  The first (h+1)/2 voters rank
    n first, the rest rank it last, so n's worst defeat and worst reversed
    defeat both stay strictly below everyone else's.
    """
    if h % 2 != 1:
        raise ConstructionError(f"h must be odd, got {h}")
    if n < 4:
        raise ConstructionError(f"need n >= 4, got {n}")
    if h * (n - 3) < 3 * (n - 1):
        raise ConstructionError(
            f"(h={h}, n={n}) violates h(n-3) >= 3(n-1); no such witness exists"
        )
    mu0 = minimal_threshold(h)
    mu = (h + 3) // 2
    cycle = construct_cycle_profile(n - 1, mu, h)
    profile = _extend_top_bottom(cycle, n, top_count=mu0)
    _check_witness_shape(profile, mu_p=mu0, mu_pr=mu, n=n)
    return certify_witness(profile, j=1, rule="minimax", method="constructive")


def construct_witness_even(h: int, n: int) -> Witness:
    """Type-1 witness for even h: cycle on 1..n-1 at mu0, alternative n split h/2-h/2.

    Domain: h even, n >= 4, h(n-3) >= 2(n-1).
    """
    if h % 2 != 0:
        raise ConstructionError(f"h must be even, got {h}")
    if n < 4:
        raise ConstructionError(f"need n >= 4, got {n}")
    if h * (n - 3) < 2 * (n - 1):
        raise ConstructionError(
            f"(h={h}, n={n}) violates h(n-3) >= 2(n-1); no such witness exists"
        )
    mu0 = minimal_threshold(h)
    cycle = construct_cycle_profile(n - 1, mu0, h)
    profile = _extend_top_bottom(cycle, n, top_count=h // 2)
    _check_witness_shape(profile, mu_p=mu0, mu_pr=mu0, n=n)
    return certify_witness(profile, j=1, rule="minimax", method="constructive")


def _type1_domain(h: int, n: int) -> bool:
    if n < 4 or h < 2:
        return False
    factor = 3 if h % 2 else 2
    return h * (n - 3) >= factor * (n - 1)


def has_constructive_witness(h: int, n: int, j: int) -> bool:
    """Whether some recipe below produces a minimax type-j witness at (h, n)."""
    if j not in (1, 2, 3):
        raise ValueError(f"bias type must be 1, 2 or 3, got {j}")
    if h < 2 or n < 2:
        return False
    if _type1_domain(h, n):
        return True
    if j >= 2:
        if (h == 3 and n >= 4) or (h, n) in ((5, 4), (7, 4), (5, 5)):
            return True
    if j == 3:
        if (h == 2 and n >= 3) or (n == 3 and h != 3) or (h, n) == (4, 4):
            return True
    return False


def _recipe_profile(h: int, n: int, j: int) -> Profile:
    if _type1_domain(h, n):
        builder = construct_witness_odd if h % 2 else construct_witness_even
        return builder(h, n).profile
    if j >= 2:
        if h == 3 and n >= 4:
            return fixture_profile(f"tm2-3-n({n})")
        if (h, n) in ((5, 4), (7, 4), (5, 5)):
            return fixture_profile(f"tm2-{h}-{n}")
    if j == 3:
        if h == 2 and n >= 3:
            return fixture_profile(f"tm3-2-n({n})")
        if n == 3 and h != 3:
            return fixture_profile(f"tm3-h-3({h})")
        if (h, n) == (4, 4):
            return fixture_profile("tm3-4-4")
    raise ConstructionError(f"no constructive recipe for (h={h}, n={n}, j={j})")


def constructive_witness(h: int, n: int, j: int) -> Witness | None:
    """Dispatch to a known recipe; None when no recipe applies.

    Cells inside the immunity region never get a witness.  A stronger bias
    type implies the weaker ones, so type-1 constructions also serve as
    type-2 and type-3 witnesses; certify_witness re-checks the actual flag.
    """
    if j not in (1, 2, 3):
        raise ValueError(f"bias type must be 1, 2 or 3, got {j}")
    if in_table(j, h, n) or not has_constructive_witness(h, n, j):
        return None
    profile = _recipe_profile(h, n, j)
    return certify_witness(profile, j, rule="minimax", method="constructive")
