"""Command-line surface: generators, solvers, spectral reports, and the harness.

Exit codes: 0 success, 1 check or verification failure, 2 usage error,
3 budget exceeded.  All randomized commands take --seed (default 0) and are
deterministic given their flags.  FASDLAB_NODE_BUDGET overrides the default
search node budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .coloring import DEFAULT_NODE_BUDGET, fasd_exact, good_coloring_search
from .delta3 import fas_sixth, fvs_exact, good_g_coloring
from .digraph import BudgetError, Digraph, Graph, GraphError
from .fileio import certificate_json, format_digraph, read_digraph, to_dot
from .generators import (
    directed_cycle,
    gadget_co,
    gadget_co_prime,
    gadget_dg,
    gadget_h3,
    gadget_h4,
    gadget_h5,
    paley_graph,
    random_orgraph,
    rotational_tournament,
)
from .ordering import bas, fas_exact, fas_upper_heuristic, fas_weighted_exact

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _node_budget(args) -> int:
    if getattr(args, "budget", None):
        return args.budget
    env = os.environ.get("FASDLAB_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


def _underlying_graph(d: Digraph) -> Graph:
    edges = sorted({tuple(sorted(uv)) for uv in d.arcs})
    return Graph(d.n, edges)


def cmd_gen(args) -> int:
    kind = args.family
    if kind == "cycle":
        d = directed_cycle(args.n)
    elif kind == "tournament":
        d = rotational_tournament(args.n)
    elif kind == "h3":
        d = gadget_h3()
    elif kind == "h4":
        d = gadget_h4()
    elif kind == "h5":
        d = gadget_h5()
    elif kind == "dg":
        d = gadget_dg(args.g)
    elif kind == "co":
        d = gadget_co(args.n)
    elif kind == "co-prime":
        d = gadget_co_prime(args.n)
    elif kind == "paley":
        g = paley_graph(args.n)
        d = Digraph(g.n, list(g.edges))  # stored one arc per edge
    else:
        d = random_orgraph(
            args.n,
            args.max_deg,
            args.min_girth,
            seed=args.seed,
            weighted=args.weighted,
        )
    text = format_digraph(d)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(d))
    return EXIT_OK


def cmd_fas(args) -> int:
    d = read_digraph(args.file)
    if args.heuristic:
        order = fas_upper_heuristic(d, seed=args.seed)
        value = bas(d, order)
        print(f"bas {value}")
        print("order " + " ".join(map(str, order)))
        return EXIT_OK
    try:
        cert = fas_weighted_exact(d) if args.weighted else fas_exact(d)
    except BudgetError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    print(f"fas {cert.value}")
    print("order " + " ".join(map(str, cert.order)))
    print("arcs " + " ".join(map(str, cert.arc_ids)))
    return EXIT_OK


def cmd_fasd(args) -> int:
    d = read_digraph(args.file)
    budget = _node_budget(args)
    if args.t is not None:
        res = good_coloring_search(d, args.t, node_budget=budget)
        print(f"t={args.t} {res.status} nodes={res.nodes}")
        if res.coloring and args.certificate:
            _write_cert(
                args.certificate,
                "good-coloring",
                {"t": args.t, "coloring": res.coloring},
                f"good {args.t}-arc-coloring exists",
            )
        return EXIT_OK if res.status != "budget" else EXIT_BUDGET
    cert = fasd_exact(d, node_budget=budget)
    if cert.value is None:
        print(f"budget exceeded; fasd in [{cert.lo}, {cert.hi}]")
        return EXIT_BUDGET
    print(f"fasd {cert.value}")
    if args.certificate:
        payload = {
            "value": cert.value,
            "witness": cert.witness,
            "refutation": cert.refutation,
        }
        _write_cert(args.certificate, "fasd", payload, "exact decomposition number")
    return EXIT_OK


def _write_cert(path, kind, payload, claim) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(certificate_json(kind, payload, claim))


def cmd_decompose3(args) -> int:
    from .triples import decompose3, verify_good_triple

    d = read_digraph(args.file)
    triple = decompose3(d, verify=False)
    if args.verify:
        ok, arc = verify_good_triple(d, triple)
        if not ok:
            print(f"verification failed at arc {arc}", file=sys.stderr)
            return EXIT_CHECK_FAILED
    classes = triple.backward_classes(d)
    for i, (order, ids) in enumerate(zip(triple.orderings, classes), start=1):
        print(f"sigma{i} " + " ".join(map(str, order)))
        print(f"class{i} " + " ".join(map(str, ids)))
    if args.emit_classes:
        _write_cert(
            args.emit_classes,
            "triple",
            {"orderings": triple.orderings, "classes": classes},
            "arc set partitioned into 3 feedback arc sets",
        )
    return EXIT_OK


def cmd_colorg(args) -> int:
    d = read_digraph(args.file)
    coloring = good_g_coloring(d, args.g)
    print(json.dumps({str(a): c for a, c in sorted(coloring.items())}))
    if args.out:
        _write_cert(
            args.out,
            "good-coloring",
            {"t": args.g, "coloring": coloring},
            f"good {args.g}-arc-coloring for max degree 3",
        )
    return EXIT_OK


def cmd_fas6(args) -> int:
    d = read_digraph(args.file)
    fas = fas_sixth(d)
    print("arcs " + " ".join(map(str, fas)))
    print(f"size {len(fas)} of {d.m}")
    if args.out:
        _write_cert(
            args.out,
            "fas-sixth",
            {"arcs": fas, "total_arcs": d.m},
            "feedback arc set within one sixth of the arcs",
        )
    return EXIT_OK


def cmd_fvs(args) -> int:
    d = read_digraph(args.file)
    try:
        cert = fvs_exact(d)
    except Exception as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    print("vertices " + " ".join(map(str, cert.vertices)))
    flags = []
    if cert.within_half:
        flags.append("within-half")
    if cert.exceptional:
        flags.append("digon-odd-cycle")
    print(f"size {len(cert.vertices)}" + (" " + " ".join(flags) if flags else ""))
    return EXIT_OK


def cmd_spectral(args) -> int:
    from .spectral import lambda_extremes

    d = read_digraph(args.file)
    g = _underlying_graph(d)
    rep = lambda_extremes(g)
    print(
        f"n={rep.n} d={rep.d} lambda={rep.lam:.9f} lambda'={rep.lam_prime:.9f} "
        f"bipartite={rep.bipartite} connected={rep.connected}"
    )
    return EXIT_OK


def cmd_mixing(args) -> int:
    import random as _random

    from .spectral import lambda_extremes, mixing_check

    d = read_digraph(args.file)
    g = _underlying_graph(d)
    rep = lambda_extremes(g)
    rng = _random.Random(args.seed)
    violations = 0
    for _ in range(args.samples):
        s = rng.sample(range(g.n), rng.randrange(0, g.n + 1))
        t = rng.sample(range(g.n), rng.randrange(0, g.n + 1))
        if not mixing_check(g, s, t, rep.lam).holds:
            violations += 1
    print(f"samples={args.samples} violations={violations} lambda={rep.lam:.6f}")
    return EXIT_OK if violations == 0 else EXIT_CHECK_FAILED


def cmd_orient_exp(args) -> int:
    from .spectral import random_orientation_experiment

    d = read_digraph(args.file)
    g = _underlying_graph(d)
    exp = random_orientation_experiment(g, args.trials, args.orderings, seed=args.seed)
    print(
        f"trials={exp.trials} min_statistic={exp.min_statistic} "
        f"mean_level1={exp.mean_level1:.2f} expected={exp.expected_level1:.2f}"
    )
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("level,pairs,violations\n")
            for level, (total, bad) in sorted(exp.hoeffding.items()):
                fh.write(f"{level},{total},{bad}\n")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    from .checks import run_checks

    selected = args.check if args.check else None
    try:
        results = run_checks(selected, seed=args.seed)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return EXIT_USAGE
    for r in results:
        print(r.line())
    if args.json:
        doc = [
            {
                "check": r.check_id,
                "claim": r.claim,
                "passed": r.passed,
                "seconds": round(r.seconds, 3),
                "details": _plain(r.details),
            }
            for r in results
        ]
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, default=repr)
            fh.write("\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def _plain(obj):
    from .fileio import _jsonable

    return _jsonable(obj)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fasdlab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph family instance")
    g.add_argument(
        "family",
        choices=[
            "cycle", "tournament", "h3", "h4", "h5", "dg", "co", "co-prime",
            "paley", "random",
        ],
    )
    g.add_argument("-n", type=int, default=8)
    g.add_argument("--g", type=int, default=8, help="girth parameter for dg")
    g.add_argument("--max-deg", type=int, default=4)
    g.add_argument("--min-girth", type=int, default=3)
    g.add_argument("--weighted", action="store_true")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.add_argument("--dot")
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("fas", help="minimum feedback arc set")
    f.add_argument("file")
    f.add_argument("--weighted", action="store_true")
    f.add_argument("--exact", action="store_true", default=True)
    f.add_argument("--heuristic", action="store_true")
    f.add_argument("--seed", type=int, default=0)
    f.set_defaults(func=cmd_fas)

    fd = sub.add_parser("fasd", help="FAS decomposition number")
    fd.add_argument("file")
    fd.add_argument("--t", type=int)
    fd.add_argument("--budget", type=int)
    fd.add_argument("--certificate")
    fd.set_defaults(func=cmd_fasd)

    d3 = sub.add_parser("decompose3", help="partition arcs into 3 feedback arc sets")
    d3.add_argument("file")
    d3.add_argument("--verify", action="store_true")
    d3.add_argument("--emit-classes")
    d3.set_defaults(func=cmd_decompose3)

    cg = sub.add_parser("colorg", help="good g-arc-coloring for max degree 3")
    cg.add_argument("file")
    cg.add_argument("--g", type=int, required=True, choices=[3, 4, 5])
    cg.add_argument("--out")
    cg.set_defaults(func=cmd_colorg)

    f6 = sub.add_parser("fas6", help="FAS within a sixth of the arcs (degree 3, girth 6)")
    f6.add_argument("file")
    f6.add_argument("--out")
    f6.set_defaults(func=cmd_fas6)

    fv = sub.add_parser("fvs", help="exact minimum feedback vertex set")
    fv.add_argument("file")
    fv.set_defaults(func=cmd_fvs)

    sp = sub.add_parser("spectral", help="extremal eigenvalues of the underlying graph")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_spectral)

    mx = sub.add_parser("mixing", help="sampled mixing-inequality check")
    mx.add_argument("file")
    mx.add_argument("--samples", type=int, default=1000)
    mx.add_argument("--seed", type=int, default=0)
    mx.set_defaults(func=cmd_mixing)

    oe = sub.add_parser("orient-exp", help="random orientation experiment")
    oe.add_argument("file")
    oe.add_argument("--trials", type=int, default=20)
    oe.add_argument("--orderings", type=int, default=2)
    oe.add_argument("--seed", type=int, default=0)
    oe.add_argument("--csv")
    oe.set_defaults(func=cmd_orient_exp)

    vp = sub.add_parser("verify-paper", help="run the desk-scale verification harness")
    vp.add_argument("--check", action="append", help="check id (repeatable); default all")
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--json", help="write a machine-readable report")
    vp.set_defaults(func=cmd_verify_paper)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
