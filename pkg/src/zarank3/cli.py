"""Command line front end: verify, certify, compute, expand.

Exit status: 0 success, 1 semantic failure, 2 usage / parse / guard error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import builtins
from .certificates import certify_sos_rank, three_edge_replay, verify_q55
from .conditions import ConditionConfig, all_passed, condition_reports
from .forms import SosDecomposition, build_form, canonical_decomposition, expand
from .graph import AugmentedGraph, GraphError
from .reporting import InputError, Report, ReportKind, load_source
from .search import SearchConfig, Statistic, compute, default_threads

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _condition_config(args) -> ConditionConfig:
    return ConditionConfig(literal_def32=not args.occupancy_c2)


def _graph_extras(gid, g: AugmentedGraph) -> dict:
    extra = {}
    if gid == "g64":
        extra["row_labels"] = {str(i + 1): lab for i, lab in enumerate(builtins.K4_ROWS)}
    return extra


def _emit(args, report: Report, text: str) -> None:
    if args.json:
        print(report.to_json())
    else:
        print(text)


def _mark(ok: bool) -> str:
    return "pass" if ok else "FAIL"


def _require_graph(src, what: str) -> AugmentedGraph:
    if not isinstance(src, AugmentedGraph):
        raise InputError(f"{what} needs a graph, got a decomposition")
    return src


def cmd_verify(args) -> int:
    gid, src = load_source(args.source)
    g = _require_graph(src, "verify")
    reports = condition_reports(g, _condition_config(args))
    ok = all_passed(reports)
    payload = {"graph": g.to_dict(), "passed": ok, "conditions": [r.to_dict() for r in reports]}
    payload.update(_graph_extras(gid, g))
    lines = [f"{args.source}: {g.m}x{g.n}, |E1|={len(g.e1)} |E2|={len(g.e2)} |E3|={len(g.e3)}"]
    for r in reports:
        line = f"  [{_mark(r.passed)}] {r.condition.value}"
        if r.subject:
            line += f" {r.subject}"
        if r.note:
            line += f" ({r.note})"
        if r.witness:
            line += f" witness={r.witness}"
        lines.append(line)
    lines.append("generalized cycle-free" if ok else "NOT generalized cycle-free")
    _emit(args, Report(ReportKind.VERIFY, payload, builtins.CITATIONS.get(gid, [])), "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_certify(args) -> int:
    gid, src = load_source(args.source)
    g = _require_graph(src, "certify")
    cert = certify_sos_rank(g, _condition_config(args))
    payload = cert.to_dict()
    payload.update(_graph_extras(gid, g))
    citations = [builtins.RANK_THEOREM] + builtins.CITATIONS.get(gid, [])
    lines = [f"{args.source}: {g.m}x{g.n}, |E1|={len(g.e1)} |E2|={len(g.e2)} |E3|={len(g.e3)}"]
    lines.append("hypotheses of the rank theorem:")
    for r in cert.condition_reports:
        lines.append(f"  [{_mark(r.passed)}] {r.condition.value}" + (f" {r.subject}" if r.subject else "")
                     + (f" witness={r.witness}" if r.witness else ""))
    lines.append(f"  [{_mark(cert.expansion_verified)}] {g.edge_count} squares expand exactly to P_G")
    lines.append(f"  [{_mark(cert.decomposition_rank == g.edge_count)}] squares are linearly independent "
                 f"(rank {cert.decomposition_rank})")
    ok = cert.valid
    if g.e3 and cert.expansion_verified:
        replay = three_edge_replay(g, canonical_decomposition(g))
        payload["three_edge_replay"] = replay
        lines.append(f"  3-edge vectors: base dimension {replay['base_dimension']}, "
                     f"with u's {replay['total_dimension']}, replay {_mark(replay['ok'])}")
    if gid == "q55":
        q = verify_q55()
        payload["q55"] = q
        lines.append(f"  Q: {q['squares']} squares, expansion {_mark(q['expansion_equal'])}, "
                     f"independent rank {q['independent_rank']}, base dimension {q['base_dimension']}, "
                     f"u outside base span {_mark(q['u_outside_base_span'])}")
        ok = ok and q["ok"]
    payload["valid"] = ok
    if ok:
        lines.append(f"certified: sos(P_G) = {cert.claimed_rank}")
    else:
        lines.append("certificate INVALID: no rank claim")
    _emit(args, Report(ReportKind.CERTIFY, payload, citations), "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_expand(args) -> int:
    gid, src = load_source(args.source)
    if isinstance(src, SosDecomposition):
        form = expand(src)
    else:
        form = build_form(src)
    payload = {"m": form.m, "n": form.n, "text": form.to_text(), "terms": form.to_list()}
    _emit(args, Report(ReportKind.EXPAND, payload, builtins.CITATIONS.get(gid, [])), form.to_text())
    return EXIT_OK


def cmd_compute(args) -> int:
    env_cap = os.environ.get("ZRK_THREADS")
    threads = args.threads if args.threads is not None else default_threads()
    if env_cap:
        threads = min(threads, default_threads())
    config = SearchConfig(
        literal_def32=not args.occupancy_c2,
        symmetry=not args.no_symmetry,
        budget_nodes=args.budget_nodes,
        budget_seconds=args.budget_seconds,
        threads=threads,
        seed=args.seed,
        max_witnesses=args.max_witnesses,
    )
    res = compute(Statistic(args.statistic.upper()), args.m, args.n, config)
    lines = [
        f"{res.statistic.value}({res.m},{res.n}) = {res.value}"
        + ("" if res.exhaustive else "  (best found, search NOT exhaustive)"),
        f"exhaustive: {res.exhaustive}   nodes: {res.nodes_explored}   "
        f"E1 classes: {res.e1_classes}   witness classes: {res.witness_classes}",
    ]
    if res.paper_value is not None:
        lines.append(f"reference value: {res.paper_value}   flags: {', '.join(res.flags) or 'none'}")
    for k, w in enumerate(res.witnesses):
        lines.append(f"witness {k + 1}: {w.to_json()}")
    _emit(args, Report(ReportKind.SEARCH, res.to_dict()), "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zrk", description="3-edge augmented Zarankiewicz numbers and SOS rank certificates")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.add_argument("--literal-def32", action="store_true",
                        help="count only E1 cells and 2-edge halves as occupied opposite cells (default)")
        sp.add_argument("--occupancy-c2", action="store_true",
                        help="count 3-edge halves as occupied opposite cells too")
        sp.add_argument("--seed", type=int, default=None, help="recorded in reports")

    for name, fn, help_ in (
        ("verify", cmd_verify, "check every generalized cycle-free condition"),
        ("certify", cmd_certify, "emit an SOS rank certificate"),
        ("expand", cmd_expand, "print P_G (or the expansion of a decomposition)"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("source", help="builtin:<g53|g55|g64|q55> or a JSON file")
        common(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("compute", help="compute z, zl, z3l or z3a exhaustively")
    sp.add_argument("statistic", choices=["z", "zl", "z3l", "z3a"])
    sp.add_argument("m", type=int)
    sp.add_argument("n", type=int)
    common(sp)
    sp.add_argument("--budget-nodes", type=int, default=None, help="node budget per E1 class")
    sp.add_argument("--budget-seconds", type=float, default=None)
    sp.add_argument("--no-symmetry", action="store_true", help="disable isomorphism pruning of E1")
    sp.add_argument("--threads", type=int, default=None, help="worker processes (capped by ZRK_THREADS)")
    sp.add_argument("--max-witnesses", type=int, default=8)
    sp.set_defaults(func=cmd_compute)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "literal_def32", False) and getattr(args, "occupancy_c2", False):
        print("error: --literal-def32 and --occupancy-c2 are exclusive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (InputError, GraphError) as exc:
        # includes DimensionGuardError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
