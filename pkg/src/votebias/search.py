"""Search for reversal-bias witnesses and exhaustive immunity certificates.

All three rules under study are anonymous, so exhaustive runs enumerate one
representative per multiset of rankings (nondecreasing index tuples under the
lexicographic order on order vectors).  For existence/absence queries the
rules are also neutral, which allows an optional further cut: only multisets
containing the identity ranking need to be visited.  The cut is never used
for counting.

Minimax scans go through a tuned kernel that keeps a running pairwise tally
while walking the multiset tree; Borda and Copeland exhaustive runs use the
plain profile path (their feasible grids are tiny).
"""

from __future__ import annotations

import itertools
import math
import multiprocessing
import os
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from .bias import audit_profile
from .prefs import Profile, Ranking, serialize_profile
from .rules import RULES

DEFAULT_EXHAUSTIVE_BUDGET = 5_000_000
DEFAULT_SAMPLE_BUDGET = 100_000
DEFAULT_SEED = 271828
WORKERS_ENV = "VOTEBIAS_WORKERS"

OUTCOME_WITNESS = "witness-found"
OUTCOME_IMMUNE = "certified-immune"
OUTCOME_INCONCLUSIVE = "inconclusive"


class BudgetExceededError(RuntimeError):
    """Enumeration refused because the space exceeds the allowed budget."""

    def __init__(self, message: str, count: int):
        super().__init__(message)
        self.count = count


class CertificationError(RuntimeError):
    """A claimed witness failed its re-audit."""


@dataclass(frozen=True)
class SearchStrategy:
    """How find_witness is allowed to spend effort.

    budget bounds the representatives examined (exhaustive) or samples drawn
    (sampled).  neutral_cut additionally restricts exhaustive enumeration to
    multisets containing the identity ranking; sound for existence/absence
    because the rules are neutral, never used for counting.
    """

    mode: str = "exhaustive"
    budget: int | None = None
    seed: int = DEFAULT_SEED
    neutral_cut: bool = False

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "sampled", "constructive"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.budget is not None and self.budget <= 0:
            raise ValueError(f"budget must be positive, got {self.budget}")

    @property
    def effective_budget(self) -> int:
        if self.budget is not None:
            return self.budget
        return DEFAULT_SAMPLE_BUDGET if self.mode == "sampled" else DEFAULT_EXHAUSTIVE_BUDGET


@dataclass(frozen=True)
class Witness:
    """A profile certified to exhibit bias type j for a rule.

    Witnesses are only created through certify_witness, which recomputes the
    selections and flags from scratch; nothing upstream is trusted.
    """

    profile: Profile
    j: int
    rule: str
    selection_p: frozenset[int]
    selection_pr: frozenset[int]
    flags: tuple[bool, bool, bool]
    mu_p: int | None
    mu_pr: int | None
    method: str
    seed: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "h": self.profile.h,
            "n": self.profile.n,
            "j": self.j,
            "rule": self.rule,
            "profile": serialize_profile(self.profile),
            "selection_p": sorted(self.selection_p),
            "selection_pr": sorted(self.selection_pr),
            "mu_p": self.mu_p,
            "mu_pr": self.mu_pr,
            "strategy": self.method,
            "seed": self.seed,
        }


def certify_witness(
    profile: Profile, j: int, rule: str, method: str, seed: int | None = None
) -> Witness:
    """Re-audit a candidate profile and wrap it as a Witness, or fail loudly."""
    if j not in (1, 2, 3):
        raise ValueError(f"bias type must be 1, 2 or 3, got {j}")
    report = audit_profile(profile, rules=(rule,))[0]
    flags = (report.type1, report.type2, report.type3)
    if not flags[j - 1]:
        raise CertificationError(
            f"candidate does not exhibit type-{j} bias for {rule}: "
            f"selections {sorted(report.selection_p)} / {sorted(report.selection_pr)}"
        )
    return Witness(
        profile=profile,
        j=j,
        rule=rule,
        selection_p=report.selection_p,
        selection_pr=report.selection_pr,
        flags=flags,
        mu_p=report.mu_p,
        mu_pr=report.mu_pr,
        method=method,
        seed=seed,
    )


@dataclass(frozen=True)
class SearchResult:
    """Outcome of find_witness: three-valued, never a silent None."""

    h: int
    n: int
    j: int
    rule: str
    method: str
    outcome: str
    examined: int
    space: int | None = None
    witness: Witness | None = None
    seed: int | None = None
    note: str = ""
    stats: dict = field(default_factory=dict)


@lru_cache(maxsize=None)
def all_rankings(n: int) -> tuple[Ranking, ...]:
    """All n! rankings in lexicographic order of their order vectors."""
    return tuple(Ranking(order) for order in itertools.permutations(range(1, n + 1)))


def anonymous_count(h: int, n: int) -> int:
    """Number of multisets of h rankings: C(n! + h - 1, h)."""
    if h < 2 or n < 2:
        raise ValueError(f"need h >= 2 and n >= 2, got h={h}, n={n}")
    return math.comb(math.factorial(n) + h - 1, h)


def neutral_count(h: int, n: int) -> int:
    """Number of multisets containing the identity ranking: C(n! + h - 2, h - 1)."""
    if h < 2 or n < 2:
        raise ValueError(f"need h >= 2 and n >= 2, got h={h}, n={n}")
    return math.comb(math.factorial(n) + h - 2, h - 1)


def enumerate_anonymous(
    h: int,
    n: int,
    visitor: Callable[[Profile], None],
    budget: int | None = None,
) -> int:
    """Visit one representative profile per multiset, in lexicographic order.

    Returns the number of representatives visited.  Refuses up front when the
    space exceeds the budget.
    """
    total = anonymous_count(h, n)
    if budget is not None and total > budget:
        raise BudgetExceededError(
            f"anonymous space for (h={h}, n={n}) holds {total} representatives, "
            f"over the budget of {budget}",
            total,
        )
    count = 0
    for columns in itertools.combinations_with_replacement(all_rankings(n), h):
        visitor(Profile(columns))
        count += 1
    return count


def sample_profile(h: int, n: int, seed: int, index: int) -> Profile:
    """The index-th seeded random profile; independent of worker layout."""
    rng = random.Random(f"{seed}:{index}")
    alts = list(range(1, n + 1))
    return Profile(tuple(Ranking(tuple(rng.sample(alts, n))) for _ in range(h)))


def sample_profiles(h: int, n: int, seed: int, count: int) -> Iterator[Profile]:
    for index in range(count):
        yield sample_profile(h, n, seed, index)


def resolve_workers(workers: int | None = None) -> int:
    if workers is None:
        raw = os.environ.get(WORKERS_ENV, "1")
        try:
            workers = int(raw)
        except ValueError:
            raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(1, workers)


# --- minimax scan kernel ---------------------------------------------------


@lru_cache(maxsize=None)
def _pair_tables(n: int) -> tuple[tuple[tuple[int, int], ...], tuple[tuple[int, ...], ...]]:
    """Upper-triangle pair list and, per ranking, the 0/1 above vector."""
    pairs = tuple((x, y) for x in range(1, n + 1) for y in range(x + 1, n + 1))
    vecs = []
    for q in all_rankings(n):
        vecs.append(tuple(1 if q.rank_of(x) < q.rank_of(y) else 0 for x, y in pairs))
    return pairs, tuple(vecs)


@dataclass
class KernelReport:
    """Aggregate of one minimax scan over (part of) the multiset tree."""

    h: int
    n: int
    examined: int = 0
    counts: dict = field(default_factory=lambda: {1: 0, 2: 0, 3: 0})
    firsts: dict = field(default_factory=lambda: {1: None, 2: None, 3: None})
    kramer_mismatches: int = 0
    condorcet_principle_violations: int = 0
    condorcet_loser_selections: int = 0


def _scan(
    h: int,
    n: int,
    want: tuple[int, ...] = (1, 2, 3),
    stop_early: bool = False,
    track_condorcet: bool = False,
    prefix: tuple[int, ...] = (),
) -> KernelReport:
    """Walk nondecreasing ranking-index tuples below a fixed prefix.

    The running upper-triangle tally u[k] counts, over chosen voters, how
    many rank pair k's smaller alternative above its larger one; the full
    tally entry for the opposite direction is depth - u[k].
    """
    pairs, vecs = _pair_tables(n)
    K = len(vecs)
    npairs = len(pairs)
    mu0 = h // 2 + 1
    # 0-based endpoints per pair, flattened for the leaf loops.
    px = [x - 1 for x, _ in pairs]
    py = [y - 1 for _, y in pairs]
    report = KernelReport(h=h, n=n)
    counts = report.counts
    firsts = report.firsts
    u = [0] * npairs
    for r in prefix:
        v = vecs[r]
        for k in range(npairs):
            u[k] += v[k]
    if len(prefix) > h:
        raise ValueError("prefix longer than the profile")
    hunting = set(want)
    stack: list[int] = []
    rng_n = range(n)
    rng_pairs = range(npairs)
    cw_bound = h - mu0

    def leaf() -> bool:
        report.examined += 1
        wd = [0] * n
        wdr = [0] * n
        for k in rng_pairs:
            a = u[k]
            b = h - a
            x = px[k]
            y = py[k]
            if b > wd[x]:
                wd[x] = b
            if a > wd[y]:
                wd[y] = a
            if a > wdr[x]:
                wdr[x] = a
            if b > wdr[y]:
                wdr[y] = b
        m1 = min(wd)
        mu_p = m1 + 1 if m1 >= mu0 else mu0
        sel = [x for x in rng_n if wd[x] < mu_p]
        direct = [x for x in rng_n if wd[x] == m1]
        if sel != direct:
            report.kramer_mismatches += 1
        m2 = min(wdr)
        mu_pr = m2 + 1 if m2 >= mu0 else mu0
        selr_size = 0
        meets = False
        for x in rng_n:
            if wdr[x] < mu_pr:
                selr_size += 1
                if wd[x] < mu_p:
                    meets = True
        if meets:
            ls = len(sel)
            fired = (False, ls == 1 and selr_size == 1, ls == 1, ls < n)
            for j in want:
                if fired[j]:
                    counts[j] += 1
                    if firsts[j] is None:
                        firsts[j] = tuple(prefix) + tuple(stack)
                        hunting.discard(j)
        if track_condorcet:
            winner = loser = -1
            for x in rng_n:
                if wd[x] <= cw_bound:
                    winner = x
                if wdr[x] <= cw_bound:
                    loser = x
            if winner >= 0 and (len(sel) != 1 or sel[0] != winner):
                report.condorcet_principle_violations += 1
            if loser >= 0 and wd[loser] < mu_p:
                report.condorcet_loser_selections += 1
        return not stop_early or bool(hunting)

    def rec(depth: int, lo: int) -> bool:
        if depth == h:
            return leaf()
        for r in range(lo, K):
            v = vecs[r]
            for k in rng_pairs:
                u[k] += v[k]
            stack.append(r)
            keep = rec(depth + 1, r)
            stack.pop()
            for k in rng_pairs:
                u[k] -= v[k]
            if not keep:
                return False
        return True

    rec(len(prefix), prefix[-1] if prefix else 0)
    return report


def _scan_chunk(args: tuple) -> KernelReport:
    """Worker task: scan a set of two-level prefixes, in ascending rank order."""
    h, n, want, track_condorcet, chunk = args
    merged = KernelReport(h=h, n=n)
    first_ranks = {j: None for j in want}
    for rank, pre in chunk:
        rep = _scan(h, n, want=want, track_condorcet=track_condorcet, prefix=pre)
        merged.examined += rep.examined
        merged.kramer_mismatches += rep.kramer_mismatches
        merged.condorcet_principle_violations += rep.condorcet_principle_violations
        merged.condorcet_loser_selections += rep.condorcet_loser_selections
        for j in want:
            merged.counts[j] += rep.counts[j]
            if rep.firsts[j] is not None and first_ranks[j] is None:
                first_ranks[j] = rank
                merged.firsts[j] = rep.firsts[j]
    # Smuggle the prefix ranks out for the cross-worker merge.
    merged.firsts = {
        j: (first_ranks[j], merged.firsts[j]) if first_ranks[j] is not None else None
        for j in want
    }
    return merged


def scan_minimax(
    h: int,
    n: int,
    want: tuple[int, ...] = (1, 2, 3),
    stop_early: bool = False,
    track_condorcet: bool = False,
    workers: int | None = None,
    neutral_cut: bool = False,
) -> KernelReport:
    """Scan the representative space for minimax bias flags.

    With workers > 1 the two deepest prefix levels are striped across a
    process pool; parallel runs never stop early, so counts stay exact and
    the reported first witness is the one earliest in enumeration order.
    """
    workers = resolve_workers(workers)
    _, vecs = _pair_tables(n)
    K = len(vecs)
    space = neutral_count(h, n) if neutral_cut else anonymous_count(h, n)
    base_prefix = (0,) if neutral_cut else ()
    if workers <= 1 or h - len(base_prefix) < 3 or space < 50_000:
        return _scan(
            h,
            n,
            want=want,
            stop_early=stop_early,
            track_condorcet=track_condorcet,
            prefix=base_prefix,
        )
    if neutral_cut:
        prefix_iter = ((0, r2) for r2 in range(K))
    else:
        prefix_iter = ((r1, r2) for r1 in range(K) for r2 in range(r1, K))
    ranked = list(enumerate(prefix_iter))
    chunks = [ranked[w::workers] for w in range(workers)]
    tasks = [(h, n, want, track_condorcet, chunk) for chunk in chunks if chunk]
    with multiprocessing.Pool(processes=len(tasks)) as pool:
        parts = pool.map(_scan_chunk, tasks)
    merged = KernelReport(h=h, n=n)
    best: dict[int, tuple[int, tuple[int, ...]]] = {}
    for part in parts:
        merged.examined += part.examined
        merged.kramer_mismatches += part.kramer_mismatches
        merged.condorcet_principle_violations += part.condorcet_principle_violations
        merged.condorcet_loser_selections += part.condorcet_loser_selections
        for j in want:
            merged.counts[j] += part.counts[j]
            tagged = part.firsts[j]
            if tagged is not None and (j not in best or tagged[0] < best[j][0]):
                best[j] = tagged
    for j in want:
        merged.firsts[j] = best[j][1] if j in best else None
    return merged


def profile_from_indices(n: int, indices: tuple[int, ...]) -> Profile:
    rankings = all_rankings(n)
    return Profile(tuple(rankings[i] for i in indices))


# --- find_witness ----------------------------------------------------------


def find_witness(
    h: int,
    n: int,
    j: int,
    rule: str = "minimax",
    strategy: SearchStrategy | None = None,
    workers: int | None = None,
) -> SearchResult:
    """Search for a type-j reversal-bias witness for a rule at (h, n).

    Exhaustive mode certifies immunity when the whole representative space
    is swept without a hit; a space larger than the budget yields an
    inconclusive result, never a silent truncation.
    """
    if j not in (1, 2, 3):
        raise ValueError(f"bias type must be 1, 2 or 3, got {j}")
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}; choose from {sorted(RULES)}")
    strategy = strategy or SearchStrategy()
    if strategy.mode == "exhaustive":
        return _find_exhaustive(h, n, j, rule, strategy, workers)
    if strategy.mode == "sampled":
        return _find_sampled(h, n, j, rule, strategy)
    return _find_constructive(h, n, j, rule)


def _find_exhaustive(
    h: int, n: int, j: int, rule: str, strategy: SearchStrategy, workers: int | None
) -> SearchResult:
    budget = strategy.effective_budget
    cut = strategy.neutral_cut
    space = neutral_count(h, n) if cut else anonymous_count(h, n)
    note = "neutrality cut over multisets containing the identity ranking" if cut else ""
    if space > budget:
        return SearchResult(
            h=h, n=n, j=j, rule=rule, method="exhaustive",
            outcome=OUTCOME_INCONCLUSIVE, examined=0, space=space,
            note=f"space holds {space} representatives, over budget {budget}",
        )
    if rule == "minimax":
        report = scan_minimax(
            h, n, want=(j,), stop_early=True, workers=workers, neutral_cut=cut
        )
        stats = {"kramer_mismatches": report.kramer_mismatches}
        if report.firsts[j] is not None:
            profile = profile_from_indices(n, report.firsts[j])
            witness = certify_witness(profile, j, rule, method="exhaustive")
            return SearchResult(
                h=h, n=n, j=j, rule=rule, method="exhaustive",
                outcome=OUTCOME_WITNESS, examined=report.examined, space=space,
                witness=witness, note=note, stats=stats,
            )
        if report.examined != space:
            raise RuntimeError(
                f"enumeration visited {report.examined} of {space} representatives"
            )
        return SearchResult(
            h=h, n=n, j=j, rule=rule, method="exhaustive",
            outcome=OUTCOME_IMMUNE, examined=report.examined, space=space,
            note=note, stats=stats,
        )
    # Borda / Copeland: plain profile path; feasible spaces are small.
    rankings = all_rankings(n)
    if cut:
        combos = (
            (rankings[0],) + rest
            for rest in itertools.combinations_with_replacement(rankings, h - 1)
        )
    else:
        combos = itertools.combinations_with_replacement(rankings, h)
    examined = 0
    for columns in combos:
        examined += 1
        profile = Profile(columns)
        report = audit_profile(profile, rules=(rule,))[0]
        if (report.type1, report.type2, report.type3)[j - 1]:
            witness = certify_witness(profile, j, rule, method="exhaustive")
            return SearchResult(
                h=h, n=n, j=j, rule=rule, method="exhaustive",
                outcome=OUTCOME_WITNESS, examined=examined, space=space,
                witness=witness, note=note,
            )
    if examined != space:
        raise RuntimeError(f"enumeration visited {examined} of {space} representatives")
    return SearchResult(
        h=h, n=n, j=j, rule=rule, method="exhaustive",
        outcome=OUTCOME_IMMUNE, examined=examined, space=space, note=note,
    )


def _find_sampled(h: int, n: int, j: int, rule: str, strategy: SearchStrategy) -> SearchResult:
    budget = strategy.effective_budget
    for index in range(budget):
        profile = sample_profile(h, n, strategy.seed, index)
        report = audit_profile(profile, rules=(rule,))[0]
        if (report.type1, report.type2, report.type3)[j - 1]:
            witness = certify_witness(
                profile, j, rule, method="sampled", seed=strategy.seed
            )
            return SearchResult(
                h=h, n=n, j=j, rule=rule, method="sampled",
                outcome=OUTCOME_WITNESS, examined=index + 1, witness=witness,
                seed=strategy.seed,
            )
    return SearchResult(
        h=h, n=n, j=j, rule=rule, method="sampled",
        outcome=OUTCOME_INCONCLUSIVE, examined=budget, seed=strategy.seed,
        note=f"no witness in {budget} samples; sampling cannot certify immunity",
    )


def _find_constructive(h: int, n: int, j: int, rule: str) -> SearchResult:
    from .construct import constructive_witness  # deferred: construct imports Witness

    if rule != "minimax":
        return SearchResult(
            h=h, n=n, j=j, rule=rule, method="constructive",
            outcome=OUTCOME_INCONCLUSIVE, examined=0,
            note=f"no constructive recipe for rule {rule!r}",
        )
    witness = constructive_witness(h, n, j)
    if witness is None:
        return SearchResult(
            h=h, n=n, j=j, rule=rule, method="constructive",
            outcome=OUTCOME_INCONCLUSIVE, examined=0,
            note="no constructive recipe applies at this (h, n)",
        )
    return SearchResult(
        h=h, n=n, j=j, rule=rule, method="constructive",
        outcome=OUTCOME_WITNESS, examined=1, witness=witness,
    )
