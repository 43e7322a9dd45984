"""Command-line surface.

Every JSON output embeds a reproducibility manifest (command, input
hashes, seed, version); volatile run data (wall time, thread count) goes
to stderr so identical inputs give byte-identical stdout regardless of
--threads.  Exit codes: 0 success, 1 unknown command, 2 validation error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__
from .counting import (
    BudgetError,
    DEFAULT_BUDGET,
    count_affine_brute,
    count_affine_split,
    fit_point_count_polynomial,
    rank_stratum_count,
    stratification_trace,
)
from .graphs import Graph, is_primitive_divergent
from .kirchhoff import (
    check_contraction_deletion,
    dodgson,
    first_spanning_forest,
    diagonal_normal_form,
    psi_determinant,
    psi_spanning_trees,
)
from .period import estimate_period
from .strata import blowup_sequence, motivic_family, saturated_chains
from .wheels import example_graph_12, wheel, wheel_context

COMMANDS = {}


def command(name):
    def register(fn):
        COMMANDS[name] = fn
        return fn

    return register


def _hash_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        digest.update(handle.read())
    return digest.hexdigest()


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    return Graph.from_json_dict(data)


def _manifest(args, argv, inputs) -> dict:
    # strip --threads: it must not affect the output bytes
    cleaned = []
    skip = False
    for token in argv:
        if skip:
            skip = False
            continue
        if token == "--threads":
            skip = True
            continue
        if token.startswith("--threads="):
            continue
        cleaned.append(token)
    return {
        "command": cleaned,
        "inputs": inputs,
        "seed": getattr(args, "seed", None),
        "version": __version__,
    }


def _emit(args, argv, inputs, result, text_lines) -> int:
    if getattr(args, "format", "text") == "json":
        payload = {"manifest": _manifest(args, argv, inputs), "result": result}
        print(json.dumps(payload, sort_keys=False))
    else:
        for line in text_lines:
            print(line)
    return 0


def _common_flags(p: argparse.ArgumentParser, graph=True):
    if graph:
        p.add_argument("--graph", required=True, help="graph JSON file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)


def _parse_int_list(text: str) -> list:
    return [int(tok) for tok in text.split(",") if tok]


@command("poly")
def cmd_poly(argv) -> int:
    p = argparse.ArgumentParser(prog="graphpoly poly")
    _common_flags(p)
    p.add_argument("--route", choices=("trees", "det"), default="trees")
    args = p.parse_args(argv)
    g = _load_graph(args.graph)
    psi = psi_spanning_trees(g) if args.route == "trees" else psi_determinant(g)
    return _emit(
        args,
        argv,
        {"graph": _hash_file(args.graph)},
        {"polynomial": psi.to_json_dict(), "terms": len(psi)},
        [psi.to_text()],
    )


@command("identities")
def cmd_identities(argv) -> int:
    import random

    from .kirchhoff import dodgson_identity_holds

    p = argparse.ArgumentParser(prog="graphpoly identities")
    _common_flags(p)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    g = _load_graph(args.graph)
    dual = psi_spanning_trees(g) == psi_determinant(g)
    cd = all(check_contraction_deletion(g, e) for e in range(g.edge_count))
    rng = random.Random(args.seed)
    ctx = diagonal_normal_form(g, first_spanning_forest(g))
    h = ctx.h1
    dodgson_ok = True
    trials = 0
    while trials < args.trials and h >= 2:
        pool = list(range(h))
        rng.shuffle(pool)
        k, l = pool[0], pool[1]
        rest = pool[2:]
        size = rng.randint(0, len(rest))
        I = sorted(rng.sample(rest, size))
        J = sorted(rng.sample(rest, size))
        holds, _ = dodgson_identity_holds(ctx, I, J, k, l)
        dodgson_ok = dodgson_ok and holds
        trials += 1
    result = {
        "dual_route_equal": dual,
        "contraction_deletion": cd,
        "dodgson_identity": dodgson_ok,
        "trials": trials,
    }
    ok = dual and cd and dodgson_ok
    lines = [
        f"dual routes equal: {'yes' if dual else 'NO'}",
        f"contraction-deletion: {'yes' if cd else 'NO'}",
        f"dodgson identity ({trials} trials): {'yes' if dodgson_ok else 'NO'}",
    ]
    code = _emit(args, argv, {"graph": _hash_file(args.graph)}, result, lines)
    return code if ok else 2


@command("divergence")
def cmd_divergence(argv) -> int:
    p = argparse.ArgumentParser(prog="graphpoly divergence")
    _common_flags(p)
    p.add_argument("--method", choices=("exhaustive", "cycles"),
                   default="exhaustive")
    args = p.parse_args(argv)
    g = _load_graph(args.graph)
    flag, witness = is_primitive_divergent(g, method=args.method)
    result = {"primitive_log_divergent": flag}
    lines = [f"primitive log divergent: {'yes' if flag else 'no'}"]
    if witness is not None:
        result["witness"] = {
            "edges": list(witness.subgraph.edge_indices()),
            "edge_count": witness.edges,
            "loops": witness.loops,
            "defect": witness.defect,
        }
        lines.append(
            f"witness: edges {list(witness.subgraph.edge_indices())} "
            f"({witness.edges} edges, {witness.loops} loops, "
            f"defect {witness.defect})"
        )
    return _emit(args, argv, {"graph": _hash_file(args.graph)}, result, lines)


@command("subspaces")
def cmd_subspaces(argv) -> int:
    p = argparse.ArgumentParser(prog="graphpoly subspaces")
    _common_flags(p)
    args = p.parse_args(argv)
    g = _load_graph(args.graph)
    fam = motivic_family(g)
    rounds = blowup_sequence(g)
    chains = saturated_chains(g)
    result = {
        "members": [f"{s.edge_set:x}" for s in fam.members],
        "rounds": [[f"{s.edge_set:x}" for s in r] for r in rounds],
        "chains": [[f"{s.edge_set:x}" for s in c] for c in chains],
    }
    lines = [
        f"members: {len(fam.members)}",
        f"rounds: {[len(r) for r in rounds]}",
        f"chains: {len(chains)}",
        json.dumps(result),
    ]
    return _emit(args, argv, {"graph": _hash_file(args.graph)}, result, lines)


@command("count")
def cmd_count(argv) -> int:
    p = argparse.ArgumentParser(prog="graphpoly count")
    _common_flags(p)
    p.add_argument("--q", required=True, help="comma-separated primes")
    p.add_argument("--method", choices=("split", "brute"), default="split")
    args = p.parse_args(argv)
    g = _load_graph(args.graph)
    psi = psi_spanning_trees(g)
    rows = []
    lines = []
    for q in _parse_int_list(args.q):
        if args.method == "split":
            affine = count_affine_split(psi, q, budget=args.budget)
        else:
            affine = count_affine_brute(psi, q, budget=args.budget,
                                        threads=args.threads)
        projective = (affine - 1) // (q - 1)
        rows.append(
            {"q": q, "affine": str(affine), "projective": str(projective)}
        )
        lines.append(f"q={q}: affine {affine}, projective {projective}")
    return _emit(
        args, argv, {"graph": _hash_file(args.graph)}, {"counts": rows}, lines
    )


@command("fit")
def cmd_fit(argv) -> int:
    p = argparse.ArgumentParser(prog="graphpoly fit")
    _common_flags(p)
    p.add_argument("--fit", required=True)
    p.add_argument("--validate", default="")
    args = p.parse_args(argv)
    g = _load_graph(args.graph)
    report = fit_point_count_polynomial(
        g,
        _parse_int_list(args.fit),
        _parse_int_list(args.validate),
        budget=args.budget,
        graph_id=os.path.basename(args.graph),
    )
    poly_text = "-"
    if report.fitted is not None:
        terms = []
        for k in range(len(report.fitted) - 1, -1, -1):
            c = report.fitted[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"{c}*q" if c != 1 else "q")
            else:
                terms.append(f"{c}*q^{k}" if c != 1 else f"q^{k}")
        poly_text = " + ".join(terms).replace("+ -", "- ")
    return _emit(
        args,
        argv,
        {"graph": _hash_file(args.graph)},
        report.to_json_dict(),
        [f"{poly_text} [{report.verdict}]"],
    )


@command("strata")
def cmd_strata(argv) -> int:
    p = argparse.ArgumentParser(prog="graphpoly strata")
    _common_flags(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--q", required=True)
    args = p.parse_args(argv)
    g = _load_graph(args.graph)
    rows = []
    lines = []
    for q in _parse_int_list(args.q):
        n = rank_stratum_count(g, args.i, q, budget=args.budget)
        rows.append({"q": q, "i": args.i, "count": str(n)})
        lines.append(f"q={q}, i={args.i}: {n}")
    return _emit(
        args, argv, {"graph": _hash_file(args.graph)}, {"strata": rows}, lines
    )


@command("trace")
def cmd_trace(argv) -> int:
    p = argparse.ArgumentParser(prog="graphpoly trace")
    _common_flags(p)
    args = p.parse_args(argv)
    g = _load_graph(args.graph)
    tr = stratification_trace(g)
    d = tr.to_json_dict()
    lines = [
        f"square identity: {'ok' if tr.square_identity_holds else 'FAIL'}",
        f"product identity: {'ok' if tr.product_identity_holds else 'FAIL'} "
        f"(sign {tr.product_identity_sign:+d})",
        f"eliminant degree in probe variable: {tr.eliminant_degree}",
        f"splits into degree<=1 factors: {'yes' if tr.splits else 'NO'}",
    ]
    return _emit(args, argv, {"graph": _hash_file(args.graph)}, d, lines)


@command("period")
def cmd_period(argv) -> int:
    p = argparse.ArgumentParser(prog="graphpoly period")
    _common_flags(p)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sampler", choices=("net", "prng"), default="net")
    p.add_argument("--chart", type=int, default=None)
    p.add_argument("--flatten", choices=("cubic", "quadratic", "none"),
                   default=None)
    args = p.parse_args(argv)
    g = _load_graph(args.graph)
    est = estimate_period(
        g,
        samples=args.samples,
        seed=args.seed,
        sampler=args.sampler,
        chart=args.chart,
        flatten=args.flatten,
        threads=args.threads,
        graph_id=os.path.basename(args.graph),
    )
    lines = [
        f"estimate: {est.estimate:.6f} +/- {est.standard_error:.6f} "
        f"({est.sample_count} samples)",
    ]
    if est.ratio_to_zeta is not None:
        lines.append(
            f"ratio to zeta({est.zeta_order}): {est.ratio_to_zeta:.4f} "
            f"+/- {est.ratio_error:.4f}"
        )
    return _emit(
        args,
        argv,
        {"graph": _hash_file(args.graph)},
        est.to_json_dict(),
        lines,
    )


@command("family")
def cmd_family(argv) -> int:
    p = argparse.ArgumentParser(prog="graphpoly family")
    p.add_argument("kind", choices=("wheel", "example12"))
    p.add_argument("n", type=int, nargs="?", default=None)
    p.add_argument("--emit", choices=("graph", "matrix", "poly"),
                   default="graph")
    p.add_argument("--format", choices=("text", "json"), default="text")
    args = p.parse_args(argv)
    if args.kind == "wheel":
        if args.n is None:
            raise SystemExit("wheel needs a spoke count")
        g = wheel(args.n)
    else:
        g = example_graph_12()
    if args.emit == "graph":
        result = g.to_json_dict()
        lines = [g.to_text()]
    elif args.emit == "poly":
        psi = psi_spanning_trees(g)
        result = {"polynomial": psi.to_json_dict(), "terms": len(psi)}
        lines = [psi.to_text()]
    else:
        if args.kind != "wheel":
            raise SystemExit("--emit matrix is only defined for wheels")
        ctx = wheel_context(args.n, validate=False)
        n = args.n
        names = [f"A{i}" for i in range(n)] + [f"B{i}" for i in range(n)]
        rows = [
            [entry.to_text(names) for entry in row]
            for row in ctx.matrix_AB.entries
        ]
        result = {"matrix": rows}
        lines = ["[" + ", ".join(row) + "]" for row in rows]
    if args.format == "json":
        print(json.dumps({"manifest": _manifest(args, argv, {}),
                          "result": result}))
    else:
        for line in lines:
            print(line)
    return 0


@command("dodgson")
def cmd_dodgson(argv) -> int:
    p = argparse.ArgumentParser(prog="graphpoly dodgson")
    _common_flags(p)
    p.add_argument("--rows", default="")
    p.add_argument("--cols", default="")
    args = p.parse_args(argv)
    g = _load_graph(args.graph)
    ctx = diagonal_normal_form(g, first_spanning_forest(g))
    minor = dodgson(ctx, _parse_int_list(args.rows), _parse_int_list(args.cols))
    return _emit(
        args,
        argv,
        {"graph": _hash_file(args.graph)},
        {"minor": minor.to_json_dict(), "edge_order": list(ctx.order)},
        [minor.to_text()],
    )


USAGE = """usage: graphpoly <command> [options]

commands:
  poly        graph polynomial (spanning-tree or determinant route)
  identities  dual-route, contraction-deletion and minor identity checks
  divergence  primitive log divergence test with witness
  subspaces   coordinate-subspace family, blow-up rounds, chains
  count       affine/projective point counts at primes
  fit         interpolate the counting polynomial and validate
  strata      rank-stratum point counts
  trace       elimination cascade report
  period      Monte-Carlo parametric period estimate
  family      wheel and example graph generators
  dodgson     minor of the diagonal normal form
"""


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        print(USAGE)
        return 0 if argv else 1
    name, rest = argv[0], argv[1:]
    handler = COMMANDS.get(name)
    if handler is None:
        print(USAGE, file=sys.stderr)
        print(f"unknown command: {name}", file=sys.stderr)
        return 1
    start = time.monotonic()
    try:
        code = handler(rest)
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, KeyError, IndexError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        wall_ms = int(1000 * (time.monotonic() - start))
        print(f"wall_time_ms={wall_ms}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
