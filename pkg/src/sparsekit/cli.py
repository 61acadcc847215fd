"""Batch front end: one subcommand per library operation, one JSON document
per invocation on standard output, certificates re-checkable with `verify`.

Exit codes: 0 success; 1 a "no/absent" answer where --expect demanded
presence (or a failed verification); 2 usage or input error; 3 an exact
computation exceeded its cap; 4 an algorithmic contract was violated at
runtime (stalled exchange loop, buggy strategy).

The graph argument is a file path (edge list, or DIMACS when the file has a
`p` line) or an inline JSON generator spec such as '{"family":"path","n":5}'.
Randomized operations insist on an explicit seed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .errors import (AlgorithmStallError, CapabilityError, FormulaParseError,
                     FormulaScopeError, GraphInputError, LocalityError,
                     PreconditionError, SparsekitError, StrategyBugError)
from .games import (ExhaustiveConnector, ExhaustiveSplitter, GameConfig,
                    GameTranscript, GreedyBallConnector, RandomConnector,
                    play, uqw_splitter_strategy, validate_transcript,
                    wcol_splitter_strategy)
from .graph import Graph, ball, bfs_distances
from .graphio import (emit_json, generate, graph_from_json, parse_edge_list,
                      read_dimacs, to_jsonable, write_edge_list)
from .logic import (BasicLocalSentence, distance_dominating_set,
                    distance_independent_set, eval_basic_local, eval_naive,
                    parse_formula, satisfying_set)
from .minors import MinorModel, density_report, find_depth_r_minor, verify_minor_model
from .orders import (EliminationForest, VertexOrder, coloring_number,
                     degeneracy_order, greedy_wreach_order, identity_order,
                     treedepth_exact, validate_elimination_forest, wcol_exact,
                     wcol_heuristic, wcol_of_order)
from .wideness import (Cover, PartitionCover, SeparatorCertificate,
                       UqwCertificate, balanced_separator, neighborhood_cover,
                       partition_cover, uqw_brute, uqw_extract, validate_cover,
                       validate_partition, validate_separator, validate_uqw)

ORDER_CHOICES = ("degeneracy", "greedy", "identity")


# ----------------------------------------------------------------- loading

def _graph_digest(g: Graph) -> str:
    canon = write_edge_list(g).encode()
    return "sha256:" + hashlib.sha256(canon).hexdigest()


def load_graph(src: str):
    """Path or inline generator spec -> (graph, input metadata)."""
    if src.lstrip().startswith("{"):
        try:
            spec = json.loads(src)
        except json.JSONDecodeError as e:
            raise GraphInputError(f"bad generator spec: {e}")
        g = generate(spec)
    else:
        try:
            with open(src) as fh:
                text = fh.read()
        except OSError as e:
            raise GraphInputError(f"cannot read graph {src!r}: {e}")
        if any(line.split() and line.split()[0] == "p" for line in text.splitlines()):
            g = read_dimacs(text)
        else:
            g = parse_edge_list(text)
    return g, {"source": src, "digest": _graph_digest(g), "n": g.n, "m": g.m}


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise GraphInputError(f"cannot read {path!r}: {e}")
    except json.JSONDecodeError as e:
        raise GraphInputError(f"{path!r} is not valid JSON: {e}")


def build_order(g: Graph, name: str, r: int) -> VertexOrder:
    if name == "degeneracy":
        return degeneracy_order(g)
    if name == "greedy":
        return greedy_wreach_order(g, r)
    if name == "identity":
        return identity_order(g.n)
    raise PreconditionError(f"unknown order strategy {name!r}")


def _vertex_list(text, g: Graph):
    if text is None:
        return frozenset(range(g.n))
    try:
        out = frozenset(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise PreconditionError(f"expected comma-separated vertex ids, got {text!r}")
    for v in out:
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} not in the graph")
    return out


# ---------------------------------------------------------------- handlers
# Each returns (result, certificate, summary line, exit code).

def cmd_wcol(args):
    g, meta = load_graph(args.graph)
    if args.mode == "exact":
        value, order = wcol_exact(g, args.r, cap=args.cap)
    else:
        value, order = wcol_heuristic(g, args.r, args.order)
    cert = {"kind": "order_witness", "r": args.r, "value": value,
            "order": list(order.perm), "optimal": args.mode == "exact"}
    result = {"r": args.r, "mode": args.mode, "value": value}
    return meta, result, cert, f"wcol_{args.r} = {value} ({args.mode})", 0


def cmd_col(args):
    g, meta = load_graph(args.graph)
    value, order = coloring_number(g)
    cert = {"kind": "order_witness", "r": 1, "value": value,
            "order": list(order.perm), "optimal": True}
    return meta, {"value": value}, cert, f"col = {value}", 0


def cmd_treedepth(args):
    g, meta = load_graph(args.graph)
    value, forest = treedepth_exact(g, cap=args.cap)
    cert = {"kind": "elimination_forest", "value": value,
            "parent": list(forest.parent)}
    return meta, {"value": value}, cert, f"treedepth = {value}", 0


def cmd_minor(args):
    g, meta = load_graph(args.graph)
    h, hmeta = load_graph(args.pattern)
    model = find_depth_r_minor(g, h, args.r, max_h=args.max_h, max_g=args.max_g)
    meta["pattern"] = hmeta
    found = model is not None
    result = {"r": args.r, "found": found}
    cert = None
    if found:
        cert = {"kind": "minor_model", "h": to_jsonable(h), **model.to_json()}
    code = 1 if (args.expect and not found) else 0
    word = "found" if found else "absent"
    return meta, result, cert, f"depth-{args.r} minor {word}", code


def cmd_density(args):
    g, meta = load_graph(args.graph)
    rep = density_report(g, args.r, budget=args.budget, seed=args.seed)
    h = Graph(len(rep.model.branch_sets), list(rep.model.edge_witness))
    cert = {"kind": "density", "h": to_jsonable(h), **rep.to_json()}
    result = {k: cert[k] for k in
              ("depth", "density", "minor_n", "minor_m", "attempts", "lower_bound")}
    return meta, result, cert, f"depth-{args.r} density >= {rep.density:.3f}", 0


def cmd_game(args):
    g, meta = load_graph(args.graph)
    if args.replay:
        doc = _load_json(args.replay)
        if "certificate" in doc and "command" in doc:  # a full --out document
            doc = doc["certificate"]
        try:
            t = GameTranscript.from_json(doc)
        except (KeyError, TypeError, ValueError) as e:
            raise PreconditionError(f"not a game transcript: {e}")
        violations = validate_transcript(g, t)
        result = {"replay": True, "winner": t.winner,
                  "rounds": len(t.rounds), "violations": violations}
        cert = {"kind": "transcript", **t.to_json()}
        word = "clean" if not violations else f"{len(violations)} violations"
        return meta, result, cert, f"replay {word}", 0 if not violations else 1

    radius = args.r if args.kind == "splitter" else 0
    batch = args.batch
    if batch is None:
        batch = args.rounds * (radius + 1) if args.splitter == "uqw" else 1
    cfg = GameConfig(kind=args.kind, radius=radius,
                     round_cap=args.rounds, batch_limit=batch)
    if args.splitter == "wcol":
        pi = build_order(g, args.order, 2 * max(radius, 1))
        sp = wcol_splitter_strategy(pi, radius)
    elif args.splitter == "uqw":
        sp = uqw_splitter_strategy(radius)
    else:
        sp = ExhaustiveSplitter()
    if args.connector == "greedy":
        co = GreedyBallConnector()
    elif args.connector == "random":
        if args.seed is None:
            raise PreconditionError("--connector random requires --seed")
        co = RandomConnector(args.seed)
    else:
        co = ExhaustiveConnector()
    t = play(g, cfg, sp, co)
    result = {"winner": t.winner, "rounds": len(t.rounds),
              "residual_sizes": t.residual_sizes}
    cert = {"kind": "transcript", **t.to_json()}
    return meta, result, cert, f"{t.winner} wins after {len(t.rounds)} rounds", 0


def cmd_uqw(args):
    g, meta = load_graph(args.graph)
    A = _vertex_list(args.a, g)
    if args.mode == "extract":
        pi = build_order(g, args.order, args.r)
        cert_obj = uqw_extract(g, A, args.r, args.m, pi)
    else:
        cert_obj = uqw_brute(g, A, args.r, args.m, s_max=args.smax)
        if cert_obj is None:
            result = {"found": False, "r": args.r, "m": args.m, "s_max": args.smax}
            code = 1 if args.expect else 0
            return meta, result, None, "no qualifying far-apart set", code
    result = {"found": True, "r": args.r, "m": args.m,
              "s_size": len(cert_obj.S), "b_size": len(cert_obj.B),
              "guarantee_applies": cert_obj.guarantee_applies}
    s = f"|S| = {len(cert_obj.S)}, |B| = {len(cert_obj.B)} at distance > {args.r}"
    return meta, result, cert_obj.to_json(), s, 0


def cmd_separator(args):
    g, meta = load_graph(args.graph)
    A = _vertex_list(args.a, g)
    pi = build_order(g, args.order, 4 * args.r)
    cert_obj = balanced_separator(g, A, args.r, args.eps, pi)
    result = {"r": args.r, "eps": args.eps,
              "separator_size": len(cert_obj.S),
              "worst_ball_fraction": cert_obj.worst_ball_fraction,
              "iterations": cert_obj.iterations}
    s = (f"|S| = {len(cert_obj.S)}, worst ball fraction "
         f"{cert_obj.worst_ball_fraction:.3f} <= {args.eps}")
    return meta, result, cert_obj.to_json(), s, 0


def cmd_cover(args):
    g, meta = load_graph(args.graph)
    pi = build_order(g, args.order, 2 * args.r)
    cov = neighborhood_cover(g, args.r, pi)
    result = {"r": args.r, "clusters": len(cov.clusters),
              "radius_bound": cov.radius_bound, "max_degree": cov.max_degree}
    s = f"{len(cov.clusters)} clusters, degree {cov.max_degree}, radius <= {cov.radius_bound}"
    return meta, result, cov.to_json(), s, 0


def cmd_partition(args):
    g, meta = load_graph(args.graph)
    pi = build_order(g, args.order, 4 * args.r + 1)
    pc = partition_cover(g, args.r, pi)
    result = {"r": args.r, "n_parts": pc.n_parts}
    return meta, result, pc.to_json(), f"{pc.n_parts} parts", 0


def _parse_env(text, g: Graph) -> dict:
    env = {}
    if not text:
        return env
    for item in text.split(","):
        if "=" not in item:
            raise PreconditionError(f"expected var=vertex, got {item!r}")
        k, v = item.split("=", 1)
        try:
            env[k.strip()] = int(v)
        except ValueError:
            raise PreconditionError(f"vertex id in {item!r} is not an integer")
    return env


def cmd_eval(args):
    g, meta = load_graph(args.graph)
    marked = _vertex_list(args.marked, g) if args.marked is not None else frozenset()
    if (args.formula is None) == (args.sentence is None):
        raise PreconditionError("exactly one of --formula / --sentence is required")
    if args.formula is not None:
        env = _parse_env(args.env, g)
        f = parse_formula(args.formula, free=tuple(env))
        value = eval_naive(g, f, env, marked)
        result = {"value": value}
        code = 1 if (args.expect and not value) else 0
        return meta, result, None, f"value = {value}", code
    doc = args.sentence
    doc = _load_json(doc) if not doc.lstrip().startswith("{") else json.loads(doc)
    s = BasicLocalSentence.from_json(doc)
    value, witnesses = eval_basic_local(g, s, marked)
    result = {"value": value,
              "witnesses": list(witnesses) if witnesses is not None else None}
    cert = None
    if value:
        cert = {"kind": "distance_set", "problem": "independent",
                "r": 2 * s.r, "k": s.k, "vertices": sorted(witnesses),
                "sentence": s.to_json()}
    code = 1 if (args.expect and not value) else 0
    return meta, result, cert, f"value = {value}", code


def cmd_solve(args):
    g, meta = load_graph(args.graph)
    if args.problem == "independent":
        if args.k is None:
            raise PreconditionError("--problem independent requires --k")
        cands = _vertex_list(args.candidates, g)
        pi = build_order(g, args.order, args.r) if args.order else None
        sol = distance_independent_set(g, args.r, args.k, cands, pi=pi)
        found = sol is not None
        result = {"problem": "independent", "r": args.r, "k": args.k, "found": found,
                  "vertices": sorted(sol) if found else None}
        cert = None
        if found:
            cert = {"kind": "distance_set", "problem": "independent",
                    "r": args.r, "k": args.k, "vertices": sorted(sol)}
        code = 1 if (args.expect and not found) else 0
        word = "found" if found else "absent"
        return meta, result, cert, f"distance-{args.r} independent {args.k}-set {word}", code
    sol = distance_dominating_set(g, args.r, mode=args.mode, cap=args.cap)
    result = {"problem": "dominating", "r": args.r, "mode": args.mode,
              "size": len(sol), "vertices": sorted(sol)}
    cert = {"kind": "distance_set", "problem": "dominating",
            "r": args.r, "mode": args.mode, "vertices": sorted(sol)}
    return meta, result, cert, f"distance-{args.r} dominating set of size {len(sol)}", 0


def cmd_gen(args):
    try:
        spec = json.loads(args.spec)
    except json.JSONDecodeError as e:
        raise GraphInputError(f"bad generator spec: {e}")
    g = generate(spec)
    meta = {"source": args.spec, "digest": _graph_digest(g), "n": g.n, "m": g.m}
    if args.to:
        with open(args.to, "w") as fh:
            fh.write(write_edge_list(g))
    result = {"n": g.n, "m": g.m, "graph": to_jsonable(g)}
    return meta, result, None, f"generated n={g.n} m={g.m}", 0


def _verify_certificate(g: Graph, doc: dict) -> list:
    kind = doc.get("kind")
    if kind == "uqw":
        return validate_uqw(g, UqwCertificate.from_json(doc))
    if kind == "separator":
        return validate_separator(g, SeparatorCertificate.from_json(doc))
    if kind == "cover":
        return validate_cover(g, Cover.from_json(doc))
    if kind == "partition":
        return validate_partition(g, PartitionCover.from_json(doc))
    if kind == "transcript":
        return validate_transcript(g, GameTranscript.from_json(doc))
    if kind == "order_witness":
        order = VertexOrder(doc["order"])
        got = wcol_of_order(g, order, doc["r"])
        return ([] if got == doc["value"]
                else [f"order achieves wcol_{doc['r']} = {got}, claimed {doc['value']}"])
    if kind == "elimination_forest":
        forest = EliminationForest(tuple(doc["parent"]))
        return validate_elimination_forest(g, forest, claimed=doc["value"])
    if kind == "minor_model":
        h = graph_from_json(doc["h"])
        return verify_minor_model(g, h, MinorModel.from_json(doc))
    if kind == "density":
        h = graph_from_json(doc["h"])
        model = MinorModel.from_json(doc["model"])
        out = verify_minor_model(g, h, model)
        if h.n != doc["minor_n"] or h.m != doc["minor_m"]:
            out.append(f"model is on {h.n} vertices / {h.m} edges, "
                       f"report says {doc['minor_n']} / {doc['minor_m']}")
        if h.n and abs(doc["density"] - h.m / h.n) > 1e-12:
            out.append(f"density {doc['density']} != {h.m}/{h.n}")
        return out
    if kind == "distance_set":
        return _verify_distance_set(g, doc)
    raise PreconditionError(f"unknown certificate kind {kind!r}")


def _verify_distance_set(g: Graph, doc: dict) -> list:
    vs = doc["vertices"]
    out = []
    for v in vs:
        if not 0 <= v < g.n:
            return [f"vertex {v} not in the graph"]
    if doc["problem"] == "independent":
        if len(set(vs)) != doc["k"]:
            out.append(f"{len(set(vs))} distinct vertices, claimed k = {doc['k']}")
        for i, u in enumerate(vs):
            dist = bfs_distances(g, (u,), doc["r"])
            for v in vs[i + 1:]:
                if v in dist:
                    out.append(f"{u} and {v} are within distance {doc['r']}")
        if "sentence" in doc:
            s = BasicLocalSentence.from_json(doc["sentence"])
            T = satisfying_set(g, s)
            for v in vs:
                if v not in T:
                    out.append(f"witness {v} does not satisfy the local property")
    elif doc["problem"] == "dominating":
        covered = set()
        for v in vs:
            covered |= ball(g, v, doc["r"])
        missing = sorted(set(range(g.n)) - covered)
        if missing:
            out.append(f"vertices {missing} not dominated within {doc['r']}")
    else:
        out.append(f"unknown distance-set problem {doc['problem']!r}")
    return out


def cmd_verify(args):
    g, meta = load_graph(args.graph)
    doc = _load_json(args.certificate)
    if "certificate" in doc and "command" in doc:  # a full --out document
        doc = doc["certificate"]
    meta["certificate"] = args.certificate
    violations = _verify_certificate(g, doc)
    result = {"kind": doc.get("kind"), "ok": not violations,
              "violations": violations}
    word = "ok" if not violations else f"{len(violations)} violations"
    return meta, result, None, f"{doc.get('kind')}: {word}", 0 if not violations else 1


def cmd_sweep(args):
    cfg = _load_json(args.config)
    families = cfg.get("families", [])
    radii = cfg.get("r", [1])
    operations = cfg.get("operations", [])
    order_name = cfg.get("order", "degeneracy")
    rows = []
    for fam in families:
        name = fam.get("name", json.dumps(fam.get("spec", {}), sort_keys=True))
        try:
            g = generate(fam["spec"])
        except SparsekitError as e:
            rows.append({"family": name, "error": str(e)})
            continue
        for r in radii:
            for op in operations:
                row = {"family": name, "n": g.n, "m": g.m, "r": r, "op": op}
                try:
                    row["value"] = _sweep_value(g, r, op, order_name, cfg)
                except SparsekitError as e:
                    row["error"] = str(e)
                rows.append(row)
    with open(args.config, "rb") as fh:
        digest = "sha256:" + hashlib.sha256(fh.read()).hexdigest()
    meta = {"source": args.config, "digest": digest}
    result = {"rows": rows}
    return meta, result, None, f"{len(rows)} rows", 0


def _sweep_value(g: Graph, r: int, op: str, order_name: str, cfg: dict):
    if op == "wcol":
        return wcol_heuristic(g, r, order_name)[0]
    if op == "density":
        if "seed" not in cfg:
            raise PreconditionError("density rows need a top-level 'seed' in the config")
        return density_report(g, r, seed=cfg["seed"]).density
    if op == "cover":
        return neighborhood_cover(g, r, build_order(g, order_name, 2 * r)).max_degree
    if op == "partition":
        return partition_cover(g, r, build_order(g, order_name, 4 * r + 1)).n_parts
    raise PreconditionError(f"unknown sweep operation {op!r}")


# ------------------------------------------------------------------ driver

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sparsekit",
        description="sparse-graph toolbox: orders, games, wideness, covers, logic")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, graph=True):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        if graph:
            p.add_argument("graph", help="edge-list/DIMACS path or inline generator spec")
        p.add_argument("--out", help="also write the JSON document to this path")
        return p

    p = add("wcol", cmd_wcol, "weak r-coloring number")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "heuristic"), default="heuristic")
    p.add_argument("--order", choices=ORDER_CHOICES, default="degeneracy")
    p.add_argument("--cap", type=int, default=10)

    add("col", cmd_col, "coloring number (degeneracy + 1)")

    p = add("treedepth", cmd_treedepth, "exact treedepth with elimination forest")
    p.add_argument("--cap", type=int, default=15)

    p = add("minor", cmd_minor, "search for a depth-r minor model of a pattern")
    p.add_argument("--pattern", required=True,
                   help="pattern graph (path or generator spec)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-h", type=int, default=5)
    p.add_argument("--max-g", type=int, default=20)
    p.add_argument("--expect", action="store_true",
                   help="exit 1 when the pattern is absent")

    p = add("density", cmd_density, "best depth-r minor density found (lower bound)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)

    p = add("game", cmd_game, "play or replay a vertex-deletion game")
    p.add_argument("--kind", choices=("treedepth", "splitter"), default="splitter")
    p.add_argument("--r", type=int, default=1, help="radius for the splitter kind")
    p.add_argument("--splitter", choices=("wcol", "uqw", "exhaustive"), default="wcol")
    p.add_argument("--connector", choices=("greedy", "random", "exhaustive"),
                   default="greedy")
    p.add_argument("--order", choices=ORDER_CHOICES, default="degeneracy")
    p.add_argument("--rounds", type=int, default=64, help="round cap")
    p.add_argument("--batch", type=int, default=None,
                   help="splitter batch size limit (default 1, auto for uqw)")
    p.add_argument("--seed", type=int, default=None,
                   help="required with --connector random")
    p.add_argument("--replay", help="validate a stored transcript instead of playing")

    p = add("uqw", cmd_uqw, "far-apart subset after deleting few vertices")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", help="target set as comma-separated ids (default: all)")
    p.add_argument("--mode", choices=("extract", "brute"), default="extract")
    p.add_argument("--order", choices=ORDER_CHOICES, default="degeneracy")
    p.add_argument("--smax", type=int, default=3, help="brute mode: max |S|")
    p.add_argument("--expect", action="store_true")

    p = add("separator", cmd_separator, "balanced neighborhood separator")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--a", help="target set (default: all vertices)")
    p.add_argument("--order", choices=ORDER_CHOICES, default="degeneracy")

    p = add("cover", cmd_cover, "sparse neighborhood cover")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--order", choices=ORDER_CHOICES, default="degeneracy")

    p = add("partition", cmd_partition, "partition into unions of far-apart clusters")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--order", choices=ORDER_CHOICES, default="degeneracy")

    p = add("eval", cmd_eval, "evaluate a formula or a basic-local sentence")
    p.add_argument("--formula", help="formula text; free variables come from --env")
    p.add_argument("--env", help="assignment var=vertex,var=vertex")
    p.add_argument("--sentence", help="basic-local sentence: JSON path or inline")
    p.add_argument("--marked", help="extension of the unary predicate P")
    p.add_argument("--expect", action="store_true", help="exit 1 when false")

    p = add("solve", cmd_solve, "distance-r independent or dominating set")
    p.add_argument("--problem", choices=("independent", "dominating"), required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, help="independent: required size")
    p.add_argument("--candidates", help="independent: candidate ids (default: all)")
    p.add_argument("--order", choices=ORDER_CHOICES, default=None,
                   help="independent: enable the wideness-based fast path")
    p.add_argument("--mode", choices=("exact", "greedy"), default="exact")
    p.add_argument("--cap", type=int, default=25)
    p.add_argument("--expect", action="store_true")

    p = add("gen", cmd_gen, "materialize a generator spec", graph=False)
    p.add_argument("spec", help="JSON generator spec")
    p.add_argument("--to", help="write the edge list to this path")

    p = add("verify", cmd_verify, "re-run independent validators on a certificate",
            graph=False)
    p.add_argument("certificate", help="certificate JSON path")
    p.add_argument("--graph", required=True, dest="graph",
                   help="the graph the certificate talks about")

    p = add("sweep", cmd_sweep, "tabulate values across graph families", graph=False)
    p.add_argument("config", help="JSON config: families, r, operations")

    return ap


_ERROR_CODES = (
    (CapabilityError, "capability", 3),
    (AlgorithmStallError, "stall", 4),
    (StrategyBugError, "strategy_bug", 4),
    (FormulaParseError, "formula_parse", 2),
    (FormulaScopeError, "formula_scope", 2),
    (LocalityError, "locality", 2),
    (GraphInputError, "graph_input", 2),
    (PreconditionError, "precondition", 2),
    (SparsekitError, "error", 2),
)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    meta = result = cert = None
    summary, code = "", 0
    error = None
    try:
        meta, result, cert, summary, code = args.fn(args)
    except SparsekitError as e:
        for klass, error_code, exit_code in _ERROR_CODES:
            if isinstance(e, klass):
                error = {"code": error_code, "message": str(e)}
                summary, code = f"error: {e}", exit_code
                break
    doc = {
        "command": args.command,
        "input": meta,
        "params": _public_params(args),
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "result": result,
        "certificate": cert,
        "error": error,
        "wall_time_s": round(time.perf_counter() - t0, 6),
    }
    text = emit_json(doc)
    sys.stdout.write(text)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    print(f"sparsekit {args.command}: {summary}", file=sys.stderr)
    return code


def _public_params(args) -> dict:
    skip = {"fn", "command", "graph", "out", "seed"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main():
    raise SystemExit(run())


if __name__ == "__main__":
    main()
