"""Command line laboratory: audit, verify, graph, compare, fixtures, thresholds.

Machine output (--json/--csv) is a stable contract: keys are sorted, cells
are ordered, and nothing time- or host-dependent is emitted, so two runs
with the same flags and seed produce byte-identical bytes.  Wall-clock
timings appear only in the human tables.

Exit codes: 0 success/consistent, 1 usage or input error, 2 a verification
cell contradicts the expected classification, 3 no contradiction but at
least one cell or comparison stayed inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import sys
import time
from dataclasses import dataclass

from .bias import audit_profile, in_table
from .construct import has_constructive_witness
from .fixtures import _FAMILIES, _FIXED, load
from .graphs import (
    acyclicity_threshold,
    analyze,
    dominant_set,
    export_dot,
    greenberg_threshold,
    majority_graph,
    minimal_threshold,
    profile_threshold,
)
from .prefs import Profile, ProfileParseError, parse_profile, serialize_profile
from .rules import RULES, selection_record
from .search import (
    DEFAULT_EXHAUSTIVE_BUDGET,
    DEFAULT_SAMPLE_BUDGET,
    DEFAULT_SEED,
    OUTCOME_IMMUNE,
    OUTCOME_INCONCLUSIVE,
    OUTCOME_WITNESS,
    SearchStrategy,
    all_rankings,
    anonymous_count,
    certify_witness,
    find_witness,
    neutral_count,
    profile_from_indices,
    resolve_workers,
    sample_profile,
    scan_minimax,
)

LONG_RUN_BUDGET = 300_000_000

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONTRADICTION = 2
EXIT_INCONCLUSIVE = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; 2 is reserved for contradictions."""

    def error(self, message: str):  # noqa: A003 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_profile(path: str) -> Profile:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="ascii") as fh:
                text = fh.read()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_profile(text)
    except ProfileParseError as exc:
        raise _CliError(f"{path}: {exc}") from None


def _parse_values(spec: str, name: str, minimum: int) -> list[int]:
    """Parse 'A..B', 'A,B,C' or a mix; values are validated and deduplicated."""
    values: list[int] = []
    for token in spec.split(","):
        token = token.strip()
        if ".." in token:
            lo_text, _, hi_text = token.partition("..")
            try:
                lo, hi = int(lo_text), int(hi_text)
            except ValueError:
                raise _CliError(f"bad {name} range {token!r}; expected A..B") from None
            if lo > hi:
                raise _CliError(f"empty {name} range {token!r}")
            values.extend(range(lo, hi + 1))
        else:
            try:
                values.append(int(token))
            except ValueError:
                raise _CliError(f"bad {name} value {token!r}") from None
    out = sorted(set(values))
    if not out or out[0] < minimum:
        raise _CliError(f"{name} values must be >= {minimum}, got {spec!r}")
    return out


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _check_mu(h: int, mu: int) -> None:
    if not (2 * mu > h and mu <= h):
        raise _CliError(f"threshold mu={mu} must satisfy h/2 < mu <= h for h={h}")


# --- audit -------------------------------------------------------------------


def cmd_audit(args: argparse.Namespace) -> int:
    profile = _read_profile(args.profile)
    rules = [r.strip() for r in args.rules.split(",") if r.strip()]
    for r in rules:
        if r not in RULES:
            raise _CliError(f"unknown rule {r!r}; choose from {sorted(RULES)}")
    reports = audit_profile(profile, rules)
    record = selection_record(profile)
    graphs = {}
    for mu in args.mu or []:
        _check_mu(profile.h, mu)
        g = majority_graph(profile, mu)
        gr = majority_graph(profile.reverse(), mu)
        graphs[str(mu)] = {
            "profile": {"arcs": sorted(map(list, g.arcs)), **analyze(g).to_json_dict()},
            "reversal": {"arcs": sorted(map(list, gr.arcs)), **analyze(gr).to_json_dict()},
        }
    if args.json:
        _emit_json({
            "record": record,
            "bias": [r.to_json_dict() for r in reports],
            "graphs": graphs,
        })
        return EXIT_OK
    print(f"profile: {profile.h} voters over {profile.n} alternatives")
    print(serialize_profile(profile))
    print(f"thresholds: mu(p)={record['mu_p']}  mu(pr)={record['mu_pr']}")
    print(
        f"condorcet: winner={record['condorcet_winner']} "
        f"loser={record['condorcet_loser']}"
    )
    print(f"{'rule':<10} {'selection p':<16} {'selection pr':<16} t1 t2 t3")
    for rep in reports:
        print(
            f"{rep.rule:<10} {str(sorted(rep.selection_p)):<16} "
            f"{str(sorted(rep.selection_pr)):<16} "
            f"{'y' if rep.type1 else '.'}  {'y' if rep.type2 else '.'}  "
            f"{'y' if rep.type3 else '.'}"
        )
    for mu_text, pair in sorted(graphs.items(), key=lambda kv: int(kv[0])):
        for side in ("profile", "reversal"):
            info = pair[side]
            print(
                f"graph mu={mu_text} {side}: arcs={len(info['arcs'])} "
                f"maximal={info['maximal']} isolated={info['isolated']} "
                f"acyclic={info['acyclic']}"
            )
    return EXIT_OK


# --- graph -------------------------------------------------------------------


def cmd_graph(args: argparse.Namespace) -> int:
    profile = _read_profile(args.profile)
    target = profile.reverse() if args.reverse else profile
    mu = args.mu if args.mu is not None else profile_threshold(target)
    _check_mu(target.h, mu)
    graph = majority_graph(target, mu)
    info = analyze(graph)
    if args.dot:
        try:
            with open(args.dot, "w", encoding="ascii") as fh:
                fh.write(export_dot(graph))
        except OSError as exc:
            raise _CliError(f"cannot write {args.dot}: {exc.strerror}") from None
    payload = {
        "h": target.h,
        "n": target.n,
        "mu": mu,
        "reversed": bool(args.reverse),
        "arcs": sorted(map(list, graph.arcs)),
        "dominant": sorted(dominant_set(target, mu)),
        "analysis": info.to_json_dict(),
    }
    if args.json:
        _emit_json(payload)
        return EXIT_OK
    side = "reversal" if args.reverse else "profile"
    print(f"majority graph of the {side} at mu={mu} ({target.h} voters, {target.n} alternatives)")
    print(f"arcs: {payload['arcs']}")
    print(f"dominant set: {payload['dominant']}")
    a = payload["analysis"]
    print(f"maximal={a['maximal']} minimal={a['minimal']} isolated={a['isolated']}")
    print(f"maxima={a['maxima']} minima={a['minima']} acyclic={a['acyclic']}")
    print(f"components: {a['components']}")
    if args.dot:
        print(f"dot file written to {args.dot}")
    return EXIT_OK


# --- verify ------------------------------------------------------------------


@dataclass
class VerificationCell:
    """One (h, n, j) cell checked against the expected immunity classification."""

    h: int
    n: int
    j: int
    expected: bool
    method: str
    outcome: str
    examined: int
    elapsed: float
    space: int
    hits: int | None = None
    seed: int | None = None
    note: str = ""
    witness: dict | None = None

    @property
    def consistent(self) -> bool | None:
        if self.outcome == OUTCOME_WITNESS:
            return not self.expected
        if self.outcome == OUTCOME_IMMUNE:
            return self.expected
        return None

    def to_json_dict(self) -> dict:
        record = {
            "h": self.h,
            "n": self.n,
            "j": self.j,
            "expected_immune": self.expected,
            "method": self.method,
            "outcome": self.outcome,
            "examined": self.examined,
            "space": self.space,
            "consistent": self.consistent,
        }
        if self.hits is not None:
            record["hits"] = self.hits
        if self.seed is not None:
            record["seed"] = self.seed
        if self.note:
            record["note"] = self.note
        if self.witness is not None:
            record["witness"] = self.witness
        return record


def _verify_group(
    h: int,
    n: int,
    js: list[int],
    strategy: str,
    ex_budget: int,
    sample_budget: int,
    seed: int,
    workers: int,
) -> list[VerificationCell]:
    """Verify all requested bias types at one (h, n), sharing exhaustive scans.

    Exhaustive scans here never stop early, so examined counts and hit
    totals do not depend on the worker count.
    """
    space = anonymous_count(h, n)
    cut_space = neutral_count(h, n)
    plain_ok = space <= ex_budget
    cut_ok = cut_space <= ex_budget
    cells: list[VerificationCell] = []
    if strategy in ("auto", "exhaustive") and (plain_ok or cut_ok):
        use_cut = not plain_ok
        started = time.perf_counter()
        report = scan_minimax(
            h, n, want=tuple(js), stop_early=False, workers=workers,
            neutral_cut=use_cut,
        )
        elapsed = time.perf_counter() - started
        enumerated = cut_space if use_cut else space
        if report.examined != enumerated:
            raise RuntimeError(
                f"scan visited {report.examined} of {enumerated} representatives"
            )
        note = (
            f"neutrality cut: {cut_space} representatives cover the space"
            if use_cut
            else ""
        )
        for j in js:
            witness = None
            if report.firsts[j] is not None:
                profile = profile_from_indices(n, report.firsts[j])
                witness = certify_witness(profile, j, "minimax", method="exhaustive")
            cells.append(
                VerificationCell(
                    h=h, n=n, j=j, expected=in_table(j, h, n), method="exhaustive",
                    outcome=OUTCOME_WITNESS if witness else OUTCOME_IMMUNE,
                    examined=report.examined, elapsed=elapsed, space=space,
                    hits=report.counts[j], note=note,
                    witness=witness.to_json_dict() if witness else None,
                )
            )
        return cells
    for j in js:
        expected = in_table(j, h, n)
        started = time.perf_counter()
        if strategy == "exhaustive":
            cells.append(
                VerificationCell(
                    h=h, n=n, j=j, expected=expected, method="exhaustive",
                    outcome=OUTCOME_INCONCLUSIVE, examined=0,
                    elapsed=time.perf_counter() - started, space=space,
                    note=(
                        f"space holds {space} representatives "
                        f"({cut_space} under the neutrality cut), over budget {ex_budget}"
                    ),
                )
            )
            continue
        if strategy == "constructive" or (
            strategy == "auto" and not expected and has_constructive_witness(h, n, j)
        ):
            result = find_witness(h, n, j, "minimax", SearchStrategy("constructive"))
        else:
            result = find_witness(
                h, n, j, "minimax",
                SearchStrategy("sampled", budget=sample_budget, seed=seed),
            )
        cells.append(
            VerificationCell(
                h=h, n=n, j=j, expected=expected, method=result.method,
                outcome=result.outcome, examined=result.examined,
                elapsed=time.perf_counter() - started, space=space,
                seed=result.seed, note=result.note,
                witness=result.witness.to_json_dict() if result.witness else None,
            )
        )
    return cells


def cmd_verify(args: argparse.Namespace) -> int:
    h_values = _parse_values(args.h, "h", 2)
    n_values = _parse_values(args.n, "n", 2)
    j_values = _parse_values(args.j, "j", 1)
    if any(j > 3 for j in j_values):
        raise _CliError("bias types are 1, 2 and 3")
    ex_budget = args.budget if args.budget is not None else (
        LONG_RUN_BUDGET if args.long_run else DEFAULT_EXHAUSTIVE_BUDGET
    )
    sample_budget = args.budget if args.budget is not None else DEFAULT_SAMPLE_BUDGET
    workers = resolve_workers(None)
    cells: list[VerificationCell] = []
    for h in h_values:
        for n in n_values:
            cells.extend(
                _verify_group(
                    h, n, j_values, args.strategy, ex_budget, sample_budget,
                    args.seed, workers,
                )
            )
    cells.sort(key=lambda c: (c.h, c.n, c.j))
    contradicted = sum(1 for c in cells if c.consistent is False)
    inconclusive = sum(1 for c in cells if c.consistent is None)
    consistent = len(cells) - contradicted - inconclusive
    code = (
        EXIT_CONTRADICTION if contradicted
        else EXIT_INCONCLUSIVE if inconclusive
        else EXIT_OK
    )
    summary = {
        "cells": len(cells),
        "consistent": consistent,
        "contradicted": contradicted,
        "inconclusive": inconclusive,
    }
    if args.json:
        _emit_json({"cells": [c.to_json_dict() for c in cells], "summary": summary})
        return code
    if args.csv:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(
            ["h", "n", "j", "expected_immune", "method", "outcome", "examined",
             "space", "hits", "consistent"]
        )
        for c in cells:
            writer.writerow(
                [c.h, c.n, c.j, c.expected, c.method, c.outcome, c.examined,
                 c.space, "" if c.hits is None else c.hits,
                 "" if c.consistent is None else c.consistent]
            )
        return code
    print(f"{'h':>3} {'n':>3} {'j':>2} {'expected':<9} {'method':<12} "
          f"{'outcome':<17} {'examined':>10} {'elapsed':>9} verdict")
    for c in cells:
        verdict = {True: "ok", False: "CONTRADICTION", None: "inconclusive"}[c.consistent]
        expected = "immune" if c.expected else "biased"
        print(
            f"{c.h:>3} {c.n:>3} {c.j:>2} {expected:<9} {c.method:<12} "
            f"{c.outcome:<17} {c.examined:>10} {c.elapsed:>8.2f}s {verdict}"
        )
        if c.note:
            print(f"          note: {c.note}")
    print(
        f"cells: {summary['cells']}  consistent: {consistent}  "
        f"contradicted: {contradicted}  inconclusive: {inconclusive}"
    )
    return code


# --- compare -----------------------------------------------------------------


def cmd_compare(args: argparse.Namespace) -> int:
    first, _, second = args.pair.partition("-")
    if first not in RULES or second not in RULES or first == second:
        raise _CliError(
            f"bad pair {args.pair!r}; expected two distinct rules like minimax-borda"
        )
    h, n = args.h, args.n
    if h < 2 or n < 2:
        raise _CliError("need h >= 2 and n >= 2")
    space = math.factorial(n) ** h
    budget = args.budget if args.budget is not None else DEFAULT_EXHAUSTIVE_BUDGET
    method = args.strategy
    if method == "auto":
        method = "exhaustive" if space <= budget else "sampled"
    rule_a, rule_b = RULES[first], RULES[second]
    verdict = "inconclusive"
    examined = 0
    difference: Profile | None = None
    note = ""
    if method == "exhaustive":
        if space > budget:
            note = f"space holds {space} profiles, over budget {budget}"
        else:
            for columns in itertools.product(all_rankings(n), repeat=h):
                examined += 1
                profile = Profile(columns)
                if rule_a(profile) != rule_b(profile):
                    difference = profile
                    verdict = "different"
                    break
            else:
                verdict = "identical"
    else:
        sample_budget = args.budget if args.budget is not None else DEFAULT_SAMPLE_BUDGET
        for index in range(sample_budget):
            examined += 1
            profile = sample_profile(h, n, args.seed, index)
            if rule_a(profile) != rule_b(profile):
                difference = profile
                verdict = "different"
                break
        if difference is None:
            note = f"selections agreed on {sample_budget} samples; not a proof"
    payload = {
        "pair": [first, second],
        "h": h,
        "n": n,
        "method": method,
        "space": space,
        "examined": examined,
        "verdict": verdict,
    }
    if method == "sampled":
        payload["seed"] = args.seed
    if note:
        payload["note"] = note
    if difference is not None:
        payload["profile"] = serialize_profile(difference)
        payload["selections"] = {
            first: sorted(rule_a(difference)),
            second: sorted(rule_b(difference)),
        }
    code = EXIT_OK if verdict in ("identical", "different") else EXIT_INCONCLUSIVE
    if args.json:
        _emit_json(payload)
        return code
    print(
        f"{first} vs {second} at h={h}, n={n}: {verdict} "
        f"({examined} of {space} profiles examined, {method})"
    )
    if difference is not None:
        print("first differing profile:")
        print(serialize_profile(difference))
        print(f"{first}: {payload['selections'][first]}")
        print(f"{second}: {payload['selections'][second]}")
    if note:
        print(f"note: {note}")
    return code


# --- fixtures ----------------------------------------------------------------


def cmd_fixtures(args: argparse.Namespace) -> int:
    if args.action == "list":
        fixed = []
        for fixture_id in sorted(_FIXED):
            fx = load(fixture_id)
            fixed.append({
                "id": fx.fixture_id,
                "h": fx.profile.h,
                "n": fx.profile.n,
                "description": fx.description,
            })
        families = [
            {"pattern": f"{name}(k)", "domain": dom, "description": desc}
            for name, (_, dom, desc) in sorted(_FAMILIES.items())
        ]
        if args.json:
            _emit_json({"fixed": fixed, "families": families})
            return EXIT_OK
        for row in fixed:
            print(f"{row['id']:<16} h={row['h']:<3} n={row['n']:<3} {row['description']}")
        for row in families:
            print(f"{row['pattern']:<16} {row['domain']:<16} {row['description']}")
        return EXIT_OK
    try:
        fx = load(args.id)
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    text = serialize_profile(fx.profile)
    if args.out:
        try:
            with open(args.out, "w", encoding="ascii") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise _CliError(f"cannot write {args.out}: {exc.strerror}") from None
        print(f"{fx.fixture_id} written to {args.out}")
    else:
        print(text)
    return EXIT_OK


# --- thresholds ----------------------------------------------------------------


def cmd_thresholds(args: argparse.Namespace) -> int:
    h_values = _parse_values(args.h, "h", 2)
    n_values = _parse_values(args.n, "n", 2)
    rows = []
    for h in h_values:
        for n in n_values:
            rows.append({
                "h": h,
                "n": n,
                "mu_majority": minimal_threshold(h),
                "mu_acyclic_bound": acyclicity_threshold(h, n),
                "mu_greenberg": greenberg_threshold(h, n),
                "immune_type1": in_table(1, h, n),
                "immune_type2": in_table(2, h, n),
                "immune_type3": in_table(3, h, n),
            })
    if args.json:
        _emit_json(rows)
        return EXIT_OK
    header = list(rows[0].keys())
    if args.csv:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([row[k] for k in header])
        return EXIT_OK
    print(f"{'h':>3} {'n':>3} {'mu0':>4} {'muA':>4} {'muG':>4}  T1 T2 T3")
    for row in rows:
        print(
            f"{row['h']:>3} {row['n']:>3} {row['mu_majority']:>4} "
            f"{row['mu_acyclic_bound']:>4} {row['mu_greenberg']:>4}  "
            f"{'y' if row['immune_type1'] else '.':<2} "
            f"{'y' if row['immune_type2'] else '.':<2} "
            f"{'y' if row['immune_type3'] else '.':<2}"
        )
    return EXIT_OK


# --- wiring --------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="votebias",
        description="Audit reversal bias of minimax, Borda and Copeland selections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_audit = sub.add_parser("audit", help="audit one profile under every rule")
    p_audit.add_argument("profile", help="profile text file, or - for stdin")
    p_audit.add_argument(
        "--rules", default="minimax,borda,copeland",
        help="comma-separated rules to audit (default: all)",
    )
    p_audit.add_argument(
        "--mu", type=int, action="append",
        help="also summarize the majority graphs at this threshold (repeatable)",
    )
    p_audit.add_argument("--json", action="store_true", help="machine-readable output")
    p_audit.set_defaults(func=cmd_audit)

    p_verify = sub.add_parser(
        "verify", help="check the immunity classification over a grid"
    )
    p_verify.add_argument("--h", default="2..12", help="voter counts, e.g. 2..12 or 3,5")
    p_verify.add_argument("--n", default="2..8", help="alternative counts, e.g. 2..8")
    p_verify.add_argument("--j", default="1,2,3", help="bias types to check")
    p_verify.add_argument(
        "--strategy", default="auto",
        choices=["auto", "exhaustive", "sampled", "constructive"],
    )
    p_verify.add_argument("--budget", type=int, help="profile budget per cell")
    p_verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_verify.add_argument(
        "--long-run", action="store_true",
        help=f"raise the exhaustive budget to {LONG_RUN_BUDGET}",
    )
    group = p_verify.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true")
    group.add_argument("--csv", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_graph = sub.add_parser("graph", help="majority graph of a profile at a threshold")
    p_graph.add_argument("profile", help="profile text file, or - for stdin")
    p_graph.add_argument("--mu", type=int, help="threshold (default: profile threshold)")
    p_graph.add_argument("--reverse", action="store_true", help="use the reversed profile")
    p_graph.add_argument("--dot", metavar="PATH", help="write Graphviz DOT here")
    p_graph.add_argument("--json", action="store_true")
    p_graph.set_defaults(func=cmd_graph)

    p_compare = sub.add_parser("compare", help="first profile where two rules differ")
    p_compare.add_argument(
        "--pair", required=True, help="two rules joined by a dash, e.g. minimax-borda"
    )
    p_compare.add_argument("--h", type=int, required=True, help="number of voters")
    p_compare.add_argument("--n", type=int, required=True, help="number of alternatives")
    p_compare.add_argument(
        "--strategy", default="auto", choices=["auto", "exhaustive", "sampled"]
    )
    p_compare.add_argument("--budget", type=int, help="profile budget")
    p_compare.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_compare.add_argument("--json", action="store_true")
    p_compare.set_defaults(func=cmd_compare)

    p_fixtures = sub.add_parser("fixtures", help="catalog of published profiles")
    fix_sub = p_fixtures.add_subparsers(dest="action", required=True)
    p_list = fix_sub.add_parser("list", help="list catalog entries")
    p_list.add_argument("--json", action="store_true")
    p_list.set_defaults(func=cmd_fixtures)
    p_emit = fix_sub.add_parser("emit", help="print one fixture profile")
    p_emit.add_argument("id", help="fixture id, e.g. tm2-5-4 or tm3-h-3(8)")
    p_emit.add_argument("--out", metavar="PATH", help="write here instead of stdout")
    p_emit.set_defaults(func=cmd_fixtures)

    p_thresholds = sub.add_parser(
        "thresholds", help="threshold landmarks and expected immunity per cell"
    )
    p_thresholds.add_argument("--h", default="2..12")
    p_thresholds.add_argument("--n", default="2..8")
    group = p_thresholds.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true")
    group.add_argument("--csv", action="store_true")
    p_thresholds.set_defaults(func=cmd_thresholds)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"votebias: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
