"""Command-line front ends.

Two tools share one dispatcher: ``pm`` for one-sided popular matchings and
``sm`` for stable marriage.  Exit codes: 0 for success, 1 for a negative
decision (no popular matching, a matching that is not popular, the
woman-optimal matching, a failed equivalence check), 2 for usage or input
errors.  All regular output goes to standard output; ``--stats`` adds
per-phase ``phase rounds ops`` lines on standard error, and ``--seq`` runs
every round one element at a time (the output must not change).
"""

from __future__ import annotations

import argparse
import sys

from .model import (ParseError, PrefInstance, gen_random, parse_bipartite,
                    parse_instance, parse_matching, serialize_instance,
                    serialize_matching)
from .optimal import max_cardinality, optimal_popular, profile_of
from .oracles import (CapExceeded, brute_force_popular, enumerate_popular,
                      enumerate_stable)
from .popular import complete_to_last_resorts, is_popular, solve_popular
from .reduction import reduce_instance
from .rounds import Engine
from .stable import (all_stable, gale_shapley, next_stable,
                     parse_stable_instance, parse_stable_matching,
                     serialize_stable_matching)
from .switching import build_switching_graph, margin, moves_by_component
from .ties import build_ties_instance, check_equivalence


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _post_token(inst: PrefInstance, p: int) -> str:
    """p<j> for a real post, l<i> for applicant i's last resort."""
    return f"p{p}" if p <= inst.num_posts else f"l{p - inst.num_posts}"


def _print_blocks(header: str, blocks: list[str]) -> None:
    print(header)
    for block in blocks:
        print()
        sys.stdout.write(block)


def _build_parser(tool: str) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--stats", action="store_true",
                        help="write per-phase round counts to stderr")
    common.add_argument("--seq", action="store_true",
                        help="execute every round one element at a time")
    if tool == "pm":
        parser = argparse.ArgumentParser(
            prog="pm", description="popular matchings under one-sided "
                                   "preference lists")
        sub = parser.add_subparsers(dest="command", required=True)
        p = sub.add_parser("solve", parents=[common],
                           help="find a popular matching")
        p.add_argument("file")
        p = sub.add_parser("max", parents=[common],
                           help="find a maximum-cardinality popular matching")
        p.add_argument("file")
        p = sub.add_parser("optimal", parents=[common],
                           help="find an optimal popular matching")
        p.add_argument("--criterion", required=True,
                       choices=["rank-maximal", "fair"])
        p.add_argument("file")
        p = sub.add_parser("verify", parents=[common],
                           help="check a matching for popularity")
        p.add_argument("file")
        p.add_argument("matching")
        p = sub.add_parser("reduce", parents=[common],
                           help="print f-posts, s-posts, and reduced lists")
        p.add_argument("file")
        p = sub.add_parser("switching", parents=[common],
                           help="print the switching graph of a matching")
        p.add_argument("file")
        p.add_argument("matching")
        p = sub.add_parser("gen", parents=[common],
                           help="generate a random instance")
        p.add_argument("--applicants", type=int, required=True)
        p.add_argument("--posts", type=int, required=True)
        p.add_argument("--seed", type=int, required=True)
        p.add_argument("--ties", action="store_true")
        p.add_argument("--min-len", type=int, default=1)
        p.add_argument("--max-len", type=int, default=None)
        p = sub.add_parser("from-bipartite", parents=[common],
                           help="emit the rank-1 instance of a bipartite graph")
        p.add_argument("file")
        p = sub.add_parser("check-equivalence", parents=[common],
                           help="popular set vs maximum matchings, exhaustively")
        p.add_argument("file")
        p.add_argument("--cap", type=int, default=200_000)
        p = sub.add_parser("oracle", parents=[common],
                           help="brute-force reference computations")
        p.add_argument("action", choices=["enumerate", "verify"])
        p.add_argument("file")
        p.add_argument("matching", nargs="?")
    else:
        parser = argparse.ArgumentParser(
            prog="sm", description="stable marriage rotations")
        sub = parser.add_subparsers(dest="command", required=True)
        p = sub.add_parser("gale-shapley", parents=[common],
                           help="find the man-optimal stable matching")
        p.add_argument("file")
        p = sub.add_parser("next", parents=[common],
                           help="eliminate each exposed rotation")
        p.add_argument("file")
        p.add_argument("matching")
        p = sub.add_parser("enumerate", parents=[common],
                           help="all stable matchings via rotations")
        p.add_argument("file")
        p = sub.add_parser("oracle", parents=[common],
                           help="brute-force reference computations")
        p.add_argument("action", choices=["enumerate"])
        p.add_argument("file")
    return parser


def _pm_dispatch(args: argparse.Namespace, engine: Engine) -> int:
    if args.command == "gen":
        inst = gen_random(args.applicants, args.posts, args.seed,
                          ties=args.ties, min_len=args.min_len,
                          max_len=args.max_len)
        sys.stdout.write(serialize_instance(inst))
        return 0
    if args.command == "from-bipartite":
        inst = build_ties_instance(parse_bipartite(_read(args.file)))
        sys.stdout.write(serialize_instance(inst))
        return 0
    if args.command == "check-equivalence":
        report = check_equivalence(parse_bipartite(_read(args.file)),
                                   cap=args.cap)
        if report:
            print(f"PASS {report.num_matchings} matchings checked")
            return 0
        print("FAIL")
        if not report.margin_identity:
            print("vote-margin identity violated")
        for bad in report.counterexamples[:1]:
            print("counterexample:")
            sys.stdout.write(serialize_matching(bad, build_ties_instance(
                parse_bipartite(_read(args.file)))))
        return 1

    inst = parse_instance(_read(args.file))
    if args.command == "solve":
        m = solve_popular(inst, engine)
        if m is None:
            print("no popular matching")
            return 1
        sys.stdout.write(serialize_matching(m, inst))
        return 0
    if args.command in ("max", "optimal"):
        m = solve_popular(inst, engine)
        if m is None:
            print("no popular matching")
            return 1
        if args.command == "max":
            best = max_cardinality(inst, m, engine)
        else:
            best = optimal_popular(inst, m, args.criterion, engine=engine)
        sys.stdout.write(serialize_matching(best, inst))
        print("profile: " + " ".join(map(str, profile_of(best, inst))))
        return 0
    if args.command == "verify":
        m = parse_matching(_read(args.matching), inst)
        report = is_popular(m, inst, engine)
        if report:
            print("popular")
            return 0
        print("not popular")
        for p in report.unmatched_f_posts:
            print(f"unmatched f-post {_post_token(inst, p)}")
        for a, p in report.off_choice:
            print(f"a{a} matched off the reduced list: {_post_token(inst, p)}")
        return 1
    if args.command == "reduce":
        g = reduce_instance(inst, engine)
        print("f-posts: " + " ".join(_post_token(inst, p)
                                     for p in sorted(g.f_posts)))
        print("s-posts: " + " ".join(_post_token(inst, p)
                                     for p in sorted(g.s_posts)))
        for a in range(1, inst.num_applicants + 1):
            f, s = g.edges_of(a)
            stok = "L" if inst.is_last_resort(s) else f"p{s}"
            print(f"a{a}: p{f} {stok}")
        return 0
    if args.command == "switching":
        m = parse_matching(_read(args.matching), inst)
        if not is_popular(m, inst, engine):
            print("not popular")
            return 1
        g = reduce_instance(inst, engine)
        sg = build_switching_graph(g, complete_to_last_resorts(m, inst), engine)
        moves = moves_by_component(sg, engine)
        for comp in sg.components():
            kind = sg.component_kind(comp)
            members = sg.component_vertices(comp)
            print(f"component {_post_token(inst, comp)} kind {kind}")
            print("vertices " + " ".join(_post_token(inst, v) for v in members))
            if kind == "cycle":
                cyc = moves[comp][0].edges
                print("cycle " + " ".join(_post_token(inst, v)
                                          for _, v, _ in cyc))
            else:
                sink = next(v for v in members if v in sg.sinks)
                print(f"sink {_post_token(inst, sink)}")
            for mv in moves[comp]:
                arrows = " ".join(
                    f"a{a}:{_post_token(inst, frm)}->{_post_token(inst, to)}"
                    for a, frm, to in mv.edges)
                print(f"move {mv.kind} margin {margin(mv, inst)} edges {arrows}")
        return 0
    if args.command == "oracle":
        if args.action == "enumerate":
            blocks = [serialize_matching(mm, inst)
                      for mm in enumerate_popular(inst)]
            _print_blocks(f"count: {len(blocks)}", blocks)
            return 0
        if args.matching is None:
            raise ValueError("oracle verify needs a matching file")
        m = parse_matching(_read(args.matching), inst)
        if brute_force_popular(inst, m):
            print("popular")
            return 0
        print("not popular")
        return 1
    raise AssertionError(f"unhandled command {args.command}")


def _sm_dispatch(args: argparse.Namespace, engine: Engine) -> int:
    inst = parse_stable_instance(_read(args.file))
    if args.command == "gale-shapley":
        sys.stdout.write(serialize_stable_matching(gale_shapley(inst, engine)))
        return 0
    if args.command == "next":
        m = parse_stable_matching(_read(args.matching), inst)
        results = next_stable(inst, m, engine)
        if not results:
            print("woman-optimal")
            return 1
        for i, (_, nm) in enumerate(results):
            if i:
                print()
            sys.stdout.write(serialize_stable_matching(nm))
        return 0
    if args.command == "enumerate":
        blocks = [serialize_stable_matching(s) for s in all_stable(inst, engine)]
        _print_blocks(f"count: {len(blocks)}", blocks)
        return 0
    if args.command == "oracle":
        blocks = [serialize_stable_matching(s) for s in enumerate_stable(inst)]
        _print_blocks(f"count: {len(blocks)}", blocks)
        return 0
    raise AssertionError(f"unhandled command {args.command}")


def main(argv: list[str]) -> int:
    if not argv or argv[0] not in ("pm", "sm"):
        print("usage: pm|sm <subcommand> ...", file=sys.stderr)
        return 2
    tool = argv[0]
    parser = _build_parser(tool)
    try:
        args = parser.parse_args(argv[1:])
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    engine = Engine(mode="seq" if args.seq else "par")
    try:
        code = _pm_dispatch(args, engine) if tool == "pm" \
            else _sm_dispatch(args, engine)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.stats:
        for line in engine.stats.lines():
            print(line, file=sys.stderr)
    return code


def pm_main() -> None:
    raise SystemExit(main(["pm", *sys.argv[1:]]))


def sm_main() -> None:
    raise SystemExit(main(["sm", *sys.argv[1:]]))
