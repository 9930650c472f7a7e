"""Command-line front end.

Subcommands: sigma, verify-pair, table, rule, scan.  Reports go to
stdout in markdown (default), CSV or JSON; progress and alarms go to
stderr.

Exit status contract (frozen, part of the public interface):

    0   success; for scans: every row resolved, no counterexample
    10  counterexample candidate found, or a resolved row contradicts
        the known prime catalogs (pipelines should alarm)
    11  scan completed with unresolved rows remaining
    2   usage error, unreadable input file, or malformed catalog

Policy defaults live in amicable.policy.Policy; effective values resolve
from flags, then AMICABLE_* environment variables, then --config JSON,
in that precedence order.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import rules, search
from .numerics import FactorizationError, sigma_proper
from .policy import Policy, load_policy
from .report import ReportDocument, describe_verdict, format_value
from .rules import PairStatus, RuleReport
from .search import CatalogError, ResultCache, ScanAnomalyError
from .sequences import thabit_triple

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 10
EXIT_UNRESOLVED = 11
EXIT_USAGE = 2

_RULES = {
    "thabit": rules.thabit_rule,
    "conjecture1": rules.conjecture1_rule,
    "conjecture2": rules.conjecture2_rule,
    "kashi": rules.conjecture3_rule,
}


def _policy_args(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--seed", type=int, default=None, help="RNG seed (default 0)")
    ap.add_argument("--sieve-bound", type=int, default=None, dest="sieve_bound")
    ap.add_argument(
        "--full-test-max-bits", type=int, default=None, dest="full_test_max_bits"
    )
    ap.add_argument("--mr-rounds", type=int, default=None, dest="mr_rounds")
    ap.add_argument(
        "--time-budget", type=float, default=None, dest="time_budget",
        help="seconds per proving test (default: uncapped)",
    )
    ap.add_argument(
        "--allow-probable", action="store_const", const=True, default=None,
        dest="allow_probable",
        help="let ProbablePrime satisfy rule conditions (reports stay labeled)",
    )
    ap.add_argument("--config", default=None, help="JSON file of policy defaults")


def _output_args(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--format", choices=("md", "csv", "json"), default="md")
    ap.add_argument(
        "--full-decimal", action="store_true",
        help="print huge values in full instead of as form descriptors",
    )
    ap.add_argument(
        "--stamp", action="store_true",
        help="include a wall-clock timestamp in markdown output",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="amicable",
        description="Closed-form amicable-pair rules, their verification, "
        "and scans over the known Mersenne and Fermat primes.",
        epilog="exit status: 0 ok; 10 counterexample/anomaly; 11 unresolved rows; 2 usage",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("sigma", help="sum of proper divisors")
    p.add_argument("n", type=int)

    p = sub.add_parser("verify-pair", help="check amicability and father relations")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    _output_args(p)

    p = sub.add_parser("table", help="emit one of the four built-in tables")
    p.add_argument("which", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--catalog", default=None, help="Mersenne exponent file (table 3)")
    p.add_argument("--cache", default=None, help="verdict cache file (table 3)")
    p.add_argument("--jobs", type=int, default=1)
    _policy_args(p)
    _output_args(p)

    p = sub.add_parser("rule", help="evaluate one extraction rule at an index")
    p.add_argument("rule_id", choices=sorted(_RULES))
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, default=None)
    group.add_argument("--range", default=None, help="inclusive index range, e.g. 2..10")
    _policy_args(p)
    _output_args(p)

    p = sub.add_parser("scan", help="run the full Mersenne (1) or Fermat (2) scan")
    p.add_argument("conjecture", type=int, choices=(1, 2))
    p.add_argument("--catalog", default=None)
    p.add_argument("--cache", default=None)
    p.add_argument("--jobs", type=int, default=1)
    _policy_args(p)
    _output_args(p)

    return ap


def _resolve_policy(args) -> Policy:
    flags = {
        name: getattr(args, name, None)
        for name in Policy.__dataclass_fields__
    }
    return load_policy(flags, config_file=getattr(args, "config", None))


def _emit(doc: ReportDocument, args) -> None:
    if getattr(args, "stamp", False):
        doc.generated_at = time.strftime("%Y-%m-%dT%H:%M:%S")
    sys.stdout.write(doc.render(args.format))


def _cond_cell(report: RuleReport, full: bool) -> str:
    parts = []
    for cond in report.conditions:
        label = f"{cond.label}({report.index_n})"
        parts.append(
            f"{cond.label}={format_value(cond.value, label, full)}:"
            f"{describe_verdict(cond.verdict)}"
        )
    return "; ".join(parts)


_RULE_COLUMNS = [
    "rule", "n", "conditions", "pair_first", "pair_second", "pair_status",
    "sigma_forward", "sigma_backward", "father", "note",
]


def _rule_row(report: RuleReport, full: bool) -> dict:
    n = report.index_n
    pair_first = pair_second = None
    father = None
    if report.pair is not None:
        pair_first = format_value(report.pair[0], f"r({n})", full)
        pair_second = format_value(report.pair[1], f"s({n})", full)
        if report.sigma_forward is not None:
            father = "T" if report.sigma_forward == report.pair[1] else "F"
    return {
        "rule": report.rule_id.value,
        "n": n,
        "conditions": _cond_cell(report, full),
        "pair_first": pair_first,
        "pair_second": pair_second,
        "pair_status": report.pair_status.value,
        "sigma_forward": report.sigma_forward,
        "sigma_backward": report.sigma_backward,
        "father": father,
        "note": report.note,
    }


def cmd_sigma(args) -> int:
    if args.n < 1:
        print("sigma is defined on n >= 1", file=sys.stderr)
        return EXIT_USAGE
    print(sigma_proper(args.n))
    return EXIT_OK


def cmd_verify_pair(args) -> int:
    if args.m < 1 or args.n < 1:
        print("pair members must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        verdict = rules.verify_amicable(args.m, args.n)
    except FactorizationError as exc:
        print(f"cannot verify: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        doc = ReportDocument(
            title="pair verification",
            command=f"verify-pair {args.m} {args.n}",
            policy={},
            columns=["m", "n", "sigma_m", "sigma_n", "amicable",
                     "father_m_of_n", "father_n_of_m", "self_pair"],
            rows=[{
                "m": verdict.m, "n": verdict.n,
                "sigma_m": verdict.sigma_m, "sigma_n": verdict.sigma_n,
                "amicable": verdict.amicable,
                "father_m_of_n": verdict.father_m_of_n,
                "father_n_of_m": verdict.father_n_of_m,
                "self_pair": verdict.self_pair,
            }],
        )
        _emit(doc, args)
        return EXIT_OK
    print(f"sigma({verdict.m}) = {verdict.sigma_m}")
    print(f"sigma({verdict.n}) = {verdict.sigma_n}")
    tag = "amicable" if verdict.amicable else "not amicable"
    if verdict.amicable and verdict.self_pair:
        tag += " (self-pair: a perfect number)"
    print(f"({verdict.m}, {verdict.n}): {tag}")
    if verdict.father_m_of_n and not verdict.amicable:
        print(f"{verdict.m} is a father of {verdict.n}")
    if verdict.father_n_of_m and not verdict.amicable:
        print(f"{verdict.n} is a father of {verdict.m}")
    return EXIT_OK


_TABLE1_INDICES = (2, 3, 4, 7)


def _table1_doc(policy: Policy) -> ReportDocument:
    columns = ["n", "a_n", "b_n", "c_n", "r_n", "s_n", "pair"]
    rows = []
    for n in _TABLE1_INDICES:
        rep = rules.thabit_rule(n, policy)
        t = thabit_triple(n)
        rows.append({
            "n": n, "a_n": t.a, "b_n": t.b, "c_n": t.c, "r_n": t.r, "s_n": t.s,
            "pair": "Amicable" if rep.pair_status is PairStatus.AMICABLE else "None",
        })
    return ReportDocument(
        title="classic rule values at the three known pair indices (plus n=3)",
        command="table 1",
        policy=policy.as_dict(),
        columns=columns,
        rows=rows,
    )


def _table2_doc(policy: Policy) -> ReportDocument:
    columns = ["n", "a_n", "b_n", "c_n", "m_{n+1}", "r_n", "s_n", "conditions met"]
    rows = []
    for n in _TABLE1_INDICES:
        rep = rules.conjecture1_rule(n, policy)
        t = thabit_triple(n)
        met = all(c.verdict.is_proven_prime for c in rep.conditions)
        rows.append({
            "n": n, "a_n": t.a, "b_n": t.b, "c_n": t.c, "m_{n+1}": t.m_next,
            "r_n": t.r, "s_n": t.s, "conditions met": "T" if met else "F",
        })
    return ReportDocument(
        title="variant rule (Mersenne condition) at the classic indices",
        command="table 2",
        policy=policy.as_dict(),
        columns=columns,
        rows=rows,
    )


_SCAN1_COLUMNS = [
    "n", "m_{n+1} is Prime", "a_n ∧ b_n are Prime",
    "a_status", "a_method", "a_witness",
    "b_status", "b_method", "b_witness",
    "counterexample_candidate",
]


def _scan1_doc(records, policy: Policy, catalog_path: str, jobs: int) -> ReportDocument:
    rows = []
    for rec in records:
        rows.append({
            "n": rec.n,
            "m_{n+1} is Prime": "T" if rec.m_next_prime.is_proven_prime else "F",
            "a_n ∧ b_n are Prime": rec.combined_ab,
            "a_status": rec.a_verdict.status.value,
            "a_method": rec.a_verdict.method,
            "a_witness": rec.a_verdict.witness_factor,
            "b_status": rec.b_verdict.status.value,
            "b_method": rec.b_verdict.method,
            "b_witness": rec.b_verdict.witness_factor,
            "counterexample_candidate": rec.is_counterexample_candidate,
        })
    resolved_t = sum(1 for r in records if r.combined_ab == "T")
    resolved_f = sum(1 for r in records if r.combined_ab == "F")
    unresolved = sum(1 for r in records if r.combined_ab == "Unresolved")
    candidates = sum(1 for r in records if r.is_counterexample_candidate)
    policy_echo = dict(policy.as_dict(), catalog=catalog_path, jobs=jobs)
    return ReportDocument(
        title="Mersenne-exponent scan for a variant-rule counterexample",
        command="scan 1",
        policy=policy_echo,
        columns=_SCAN1_COLUMNS,
        rows=rows,
        notes=[
            f"rows={len(records)} resolved_T={resolved_t} resolved_F={resolved_f} "
            f"unresolved={unresolved}",
            f"counterexample_candidates={candidates}",
        ],
    )


_SCAN2_COLUMNS = [
    "n", "alpha_n is Prime", "beta_n ∧ gamma_n are Prime",
    "alpha_status", "beta_status", "beta_witness", "gamma_status", "gamma_witness",
]


def _scan2_doc(records, policy: Policy) -> ReportDocument:
    rows = []
    for rec in records:
        rows.append({
            "n": rec.n,
            "alpha_n is Prime": "T" if rec.alpha_verdict.is_proven_prime else "F",
            "beta_n ∧ gamma_n are Prime": rec.combined_bg,
            "alpha_status": rec.alpha_verdict.status.value,
            "beta_status": rec.beta_verdict.status.value,
            "beta_witness": rec.beta_verdict.witness_factor,
            "gamma_status": rec.gamma_verdict.status.value,
            "gamma_witness": rec.gamma_verdict.witness_factor,
        })
    return ReportDocument(
        title="first-family primality over the known Fermat-prime indices",
        command="scan 2",
        policy=policy.as_dict(),
        columns=_SCAN2_COLUMNS,
        rows=rows,
    )


def _load_catalog_checked(path: str | None):
    catalog_path = path or search.default_catalog_path()
    catalog = search.load_catalog(catalog_path)
    return catalog, catalog_path


def cmd_table(args) -> int:
    policy = _resolve_policy(args)
    if args.which == 1:
        _emit(_table1_doc(policy), args)
        return EXIT_OK
    if args.which == 2:
        _emit(_table2_doc(policy), args)
        return EXIT_OK
    if args.which == 4:
        _emit(_scan2_doc(search.scan_conjecture2(policy=policy), policy), args)
        return EXIT_OK
    catalog, catalog_path = _load_catalog_checked(args.catalog)
    cache = ResultCache(args.cache)
    records = search.scan_conjecture1(catalog, policy, cache, jobs=args.jobs)
    _emit(_scan1_doc(records, policy, catalog_path, args.jobs), args)
    return EXIT_OK


def _parse_range(text: str) -> range:
    lo, _, hi = text.partition("..")
    return range(int(lo), int(hi) + 1)


def cmd_rule(args) -> int:
    policy = _resolve_policy(args)
    indices = [args.n] if args.n is not None else list(_parse_range(args.range))
    evaluate = _RULES[args.rule_id]
    reports = [evaluate(n, policy) for n in indices]
    rows = [_rule_row(rep, args.full_decimal) for rep in reports]
    doc = ReportDocument(
        title=f"rule evaluation: {args.rule_id}",
        command=f"rule {args.rule_id}",
        policy=policy.as_dict(),
        columns=_RULE_COLUMNS,
        rows=rows,
    )
    counterexamples = [r for r in reports if r.is_conjecture1_counterexample]
    if counterexamples:
        ns = ", ".join(str(r.index_n) for r in counterexamples)
        print(
            f"*** COUNTEREXAMPLE: variant-rule conditions hold at n={ns} "
            "but the generated pair is not amicable ***",
            file=sys.stderr,
        )
    _emit(doc, args)
    return EXIT_COUNTEREXAMPLE if counterexamples else EXIT_OK


def cmd_scan(args) -> int:
    policy = _resolve_policy(args)
    if args.conjecture == 2:
        records = search.scan_conjecture2(policy=policy)
        _emit(_scan2_doc(records, policy), args)
        return EXIT_OK
    catalog, catalog_path = _load_catalog_checked(args.catalog)
    cache = ResultCache(args.cache)
    records = search.scan_conjecture1(catalog, policy, cache, jobs=args.jobs)
    _emit(_scan1_doc(records, policy, catalog_path, args.jobs), args)
    candidates = search.counterexample_candidates(records)
    unresolved = search.unresolved_rows(records)
    if candidates:
        ns = ", ".join(str(r.n) for r in candidates)
        print(f"*** COUNTEREXAMPLE CANDIDATE at n={ns} ***", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    if unresolved:
        ns = ", ".join(str(r.n) for r in unresolved)
        print(
            f"{len(unresolved)} row(s) unresolved at this budget (n={ns}); "
            "no counterexample among resolved rows",
            file=sys.stderr,
        )
        return EXIT_UNRESOLVED
    print("all rows resolved; no counterexample", file=sys.stderr)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "sigma": cmd_sigma,
        "verify-pair": cmd_verify_pair,
        "table": cmd_table,
        "rule": cmd_rule,
        "scan": cmd_scan,
    }
    try:
        return handlers[args.cmd](args)
    except ScanAnomalyError as exc:
        print(f"*** SCAN ANOMALY: {exc} ***", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    except (CatalogError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
