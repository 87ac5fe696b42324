"""Command-line front end: straightening, reports, toric tools, caching.

Exit codes: 0 success, 1 failed report criterion, 2 parse error,
70 internal fuel exhaustion.  All subcommands accept ``--json``.

The straightening memo persists across runs when PLUCKER_CACHE_DIR is set
(or --cache-dir is given); --no-cache disables persistence entirely.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import reports, symmetry_rep, toric_rewriting, toric_trees
from .graph_core import graph_to_json, parse_graph, parse_graph_json
from .invariant_ring import (
    GLOBAL_CACHE,
    FuelExhausted,
    PointConfig,
    RingElement,
    evaluate,
    hilbert_dim,
    load_cache,
    save_cache,
    straighten,
    x_of,
)
from .relations import (
    BinomialQuadDatum,
    GenSegreDatum,
    SquareRotationDatum,
    SymElement,
    evaluate_sym,
    ideal_component_dim,
    orbit_span_check,
    project_to_ring,
    segre8,
    segre_cubic,
    simple_binomial,
    simplest_binomial,
    generalized_segre,
    square_rotation,
)

EXIT_OK = 0
EXIT_CRITERION_FAILED = 1
EXIT_PARSE = 2
EXIT_FUEL = 70

COMMAND_SCHEMA = {
    "type": "object",
    "required": ["command"],
    "properties": {"command": {"type": "string"}},
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "inputs", "criteria", "pass", "cache", "seconds"],
    "properties": {
        "suite": {"type": "string"},
        "inputs": {"type": "object"},
        "pass": {"type": "boolean"},
        "seconds": {"type": "number"},
        "cache": {
            "type": "object",
            "required": ["hits", "misses", "entries"],
        },
        "criteria": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["criterion", "pass", "seconds"],
                "properties": {
                    "criterion": {"type": "string"},
                    "pass": {"type": "boolean"},
                    "seconds": {"type": "number"},
                },
            },
        },
    },
}


class CliParseError(ValueError):
    pass


def _read_arg(text: str) -> str:
    """Support @file and '-' (stdin) indirection for structured arguments."""
    if text == "-":
        return sys.stdin.read()
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return fh.read()
    return text


def parse_element(text: str) -> RingElement:
    """Accept graph text, graph JSON, or ring-element JSON."""
    text = _read_arg(text).strip()
    try:
        if text.startswith("{"):
            obj = json.loads(text)
            if "terms" in obj:
                return RingElement.from_json(text)
            n, edges = parse_graph_json(text)
        else:
            n, edges = parse_graph(text)
        return x_of(n, edges)
    except (ValueError, KeyError, TypeError) as exc:
        raise CliParseError(str(exc)) from exc


def _element_report(e: RingElement) -> dict:
    terms = [{"coeff": str(c), "edges": [list(p) for p in k]}
             for k, c in sorted(e.terms.items())]
    return {"n": e.n, "terms": terms}


def _print(payload: dict, as_json: bool, text: str | None = None) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text if text is not None else json.dumps(payload, sort_keys=True))


def cmd_straighten(args) -> int:
    e = parse_element(args.element)
    result = straighten(e)
    payload = {"command": "straighten", "input": _element_report(e),
               "output": _element_report(result)}
    if result.is_zero():
        _print(payload, args.json, "0")
    else:
        lines = [f"{c} * X{list(map(list, k))}" for k, c in sorted(result.terms.items())]
        _print(payload, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_evaluate(args) -> int:
    e = parse_element(args.element)
    try:
        xs = [int(v) for v in args.points.split(",")]
    except ValueError as exc:
        raise CliParseError(str(exc)) from exc
    if len(xs) != e.n:
        raise CliParseError(f"need {e.n} points, got {len(xs)}")
    value = evaluate(e, PointConfig.from_integers(xs))
    _print({"command": "evaluate", "points": xs, "value": str(value)},
           args.json, str(value))
    return EXIT_OK


def cmd_hilbert(args) -> int:
    if args.n < 2 or args.n % 2 or args.degree < 0:
        raise CliParseError("need even n >= 2 and degree >= 0")
    dim = hilbert_dim(args.n, args.degree)
    _print({"command": "hilbert", "n": args.n, "d": args.degree, "dim": dim},
           args.json, str(dim))
    return EXIT_OK


def cmd_toric(args) -> int:
    tree = toric_trees.build_y_tree(args.r)
    if args.action == "count":
        count = toric_trees.count_admissible_regular(tree, args.degree)
        _print({"command": "toric-count", "r": args.r, "degree": args.degree,
                "count": count}, args.json, str(count))
        return EXIT_OK
    if args.action == "greedy":
        if not args.graph:
            raise CliParseError("greedy needs --graph")
        n, edges = parse_graph(_read_arg(args.graph))
        if n != tree.num_leaves:
            raise CliParseError(f"graph has n={n}, tree has {tree.num_leaves} leaves")
        w = toric_trees.weighting_of_graph(edges, tree)
        graph = toric_trees.greedy_graph(w)
        payload = {"command": "toric-greedy", "r": args.r,
                   "weights": list(w.weights),
                   "graph": [list(e) for e in graph]}
        _print(payload, args.json, graph_to_json(n, graph))
        return EXIT_OK
    # round-trip: exhaustive check at the given degree
    ok = True
    total = 0
    for w in toric_trees.enumerate_admissible_regular(tree, args.degree):
        ok = ok and toric_trees.weighting_of_graph(
            toric_trees.greedy_graph(w), tree) == w
        total += 1
    payload = {"command": "toric-round-trip", "r": args.r, "degree": args.degree,
               "weightings": total, "pass": ok}
    _print(payload, args.json, f"{total} weightings, all round trip: {ok}")
    return EXIT_OK if ok else EXIT_CRITERION_FAILED


def _parse_cat_tuple(text: str):
    obj = json.loads(_read_arg(text))
    r = int(obj["r"])
    entries = []
    for ent in obj["entries"]:
        entries.append(toric_rewriting.CatWeighting(
            r, tuple(int(v) for v in ent["stalks"]),
            tuple(int(v) for v in ent.get("bases", ()))))
    return tuple(entries)


def cmd_normal_form(args) -> int:
    try:
        tup = _parse_cat_tuple(args.tuple)
        result = toric_rewriting.normal_form(tup)
    except (ValueError, KeyError, TypeError, AssertionError) as exc:
        raise CliParseError(str(exc)) from exc
    payload = {"command": "normal-form",
               "entries": [{"stalks": list(e.stalks), "bases": list(e.bases)}
                           for e in result]}
    _print(payload, args.json, "\n".join(str(e) for e in result))
    return EXIT_OK


_BUILTIN_RELATIONS = {
    "segre": lambda data: segre_cubic(),
    "segre8": lambda data: segre8(),
    "simplest": lambda data: simplest_binomial(
        tuple(data["cycleA"]), tuple(data["cycleB"]),
        [tuple(e) for e in data.get("doubled_rest", [])]),
    "simple": lambda data: simple_binomial(
        BinomialQuadDatum.from_json_dict(data)),
    "generalized-segre": lambda data: generalized_segre(
        GenSegreDatum.from_json_dict(data)),
    "square-rotation": lambda data: square_rotation(
        SquareRotationDatum.from_json_dict(data)),
}


def cmd_relation(args) -> int:
    data = json.loads(_read_arg(args.data)) if args.data else {}
    try:
        rel = _BUILTIN_RELATIONS[args.kind](data)
    except (ValueError, KeyError, TypeError) as exc:
        raise CliParseError(str(exc)) from exc
    payload = {"command": "relation", "kind": args.kind,
               "element": json.loads(rel.to_json())}
    if args.action == "construct":
        _print(payload, args.json, rel.to_json())
        return EXIT_OK
    # verify: straightening projection and the evaluation oracle
    import random

    rng = random.Random(args.seed)
    projected = project_to_ring(rel).is_zero()
    values = [evaluate_sym(rel, reports.random_config(rel.n, rng))
              for _ in range(args.trials)]
    ok = projected and all(v == 0 for v in values)
    payload.update({"projects_to_zero": projected,
                    "evaluations": [str(v) for v in values], "pass": ok})
    _print(payload, args.json,
           f"projects_to_zero={projected} evaluates_to_zero={all(v == 0 for v in values)}")
    return EXIT_OK if ok else EXIT_CRITERION_FAILED


def cmd_ideal_dim(args) -> int:
    dim = ideal_component_dim(args.n, args.k)
    _print({"command": "ideal-dim", "n": args.n, "k": args.k, "dim": dim},
           args.json, str(dim))
    return EXIT_OK


def cmd_orbit_span(args) -> int:
    if args.builtin == "simplest8":
        rel = simplest_binomial((1, 2, 6, 5), (3, 4, 8, 7))
    elif args.builtin == "segre6":
        rel = segre_cubic()
    else:
        rel = SymElement.from_json(_read_arg(args.element))
    rank, spans = orbit_span_check(rel)
    payload = {"command": "orbit-span", "n": rel.n, "degree": rel.degree,
               "rank": rank, "spans_ideal": spans}
    _print(payload, args.json, f"rank={rank} spans_ideal={spans}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    chi = symmetry_rep.character_of_action(args.n, args.space)
    dec = symmetry_rep.decompose(chi)
    payload = {"command": "decompose", "n": args.n, "space": args.space,
               "multiplicities": [{"partition": list(lam), "mult": m}
                                  for lam, m in sorted(dec.items())]}
    lines = [f"{'+'.join(map(str, lam))}: {m}" for lam, m in sorted(dec.items())]
    _print(payload, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_report(args) -> int:
    start = time.time()
    result = reports.run_suite(args.suite, seed=args.seed, trials=args.trials,
                               jobs=args.jobs)
    result["seconds"] = round(time.time() - start, 3)
    if args.json:
        print(json.dumps(result, sort_keys=True, default=str))
    else:
        for crit in result["criteria"]:
            status = "PASS" if crit["pass"] else "FAIL"
            print(f"{status} {crit['criterion']} ({crit['seconds']}s)")
        print(f"suite {args.suite}: {'PASS' if result['pass'] else 'FAIL'} "
              f"({result['seconds']}s)")
    return EXIT_OK if result["pass"] else EXIT_CRITERION_FAILED


def cmd_cache(args) -> int:
    directory = args.dir or os.environ.get("PLUCKER_CACHE_DIR")
    if args.action == "stats":
        _print({"command": "cache-stats", **GLOBAL_CACHE.stats()}, args.json,
               str(GLOBAL_CACHE.stats()))
        return EXIT_OK
    if not directory:
        raise CliParseError("no cache directory (give DIR or set PLUCKER_CACHE_DIR)")
    if args.action == "save":
        written = save_cache(directory)
        _print({"command": "cache-save", "files": written}, args.json,
               f"wrote {len(written)} files")
    else:
        outcome = load_cache(directory)
        for reason in outcome["skipped"]:
            print(f"warning: skipped {reason}", file=sys.stderr)
        _print({"command": "cache-load", **outcome}, args.json,
               f"loaded {outcome['loaded']} expansions")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="plucker",
        description="Exact graphical calculus for invariants of points on a line.")
    ap.add_argument("--cache-dir", default=None,
                    help="persist the straightening memo here "
                         "(default: $PLUCKER_CACHE_DIR)")
    ap.add_argument("--no-cache", action="store_true",
                    help="do not load or save the persistent cache")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.set_defaults(func=func)
        return p

    p = add("straighten", cmd_straighten,
            help="expand a graph or element in the non-crossing basis")
    p.add_argument("element", help="graph text, graph JSON, element JSON, @file or -")

    p = add("evaluate", cmd_evaluate, help="evaluate at an integer configuration")
    p.add_argument("element")
    p.add_argument("--points", required=True, help="comma-separated x coordinates")

    p = add("hilbert", cmd_hilbert, help="dimension of a graded piece")
    p.add_argument("n", type=int)
    p.add_argument("degree", type=int)

    p = add("toric", cmd_toric, help="toric degeneration tools")
    p.add_argument("action", choices=("count", "greedy", "round-trip"))
    p.add_argument("--r", type=int, required=True, help="Y-tree index")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--graph", help="graph for the greedy inverse")

    p = add("normal-form", cmd_normal_form,
            help="normal form of a tuple of reduced matchings")
    p.add_argument("tuple", help='JSON {"r":..,"entries":[{"stalks":..,"bases":..}]}')

    p = add("relation", cmd_relation, help="construct or verify a relation")
    p.add_argument("action", choices=("construct", "verify"))
    p.add_argument("kind", choices=sorted(_BUILTIN_RELATIONS))
    p.add_argument("--data", help="JSON datum, @file or -")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5)

    p = add("ideal-dim", cmd_ideal_dim, help="dimension of a relation-ideal piece")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)

    p = add("orbit-span", cmd_orbit_span, help="rank of a symmetric-group orbit")
    p.add_argument("--element", help="SymElement JSON, @file or -")
    p.add_argument("--builtin", choices=("simplest8", "segre6"))

    p = add("decompose", cmd_decompose, help="isotypic decomposition of an action")
    p.add_argument("n", type=int)
    p.add_argument("space", choices=symmetry_rep.SPACES)

    p = add("report", cmd_report, help="run an acceptance block")
    p.add_argument("suite", choices=sorted(reports.SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--jobs", type=int, default=1)

    p = add("cache", cmd_cache, help="persist or restore the straightening memo")
    p.add_argument("action", choices=("save", "load", "stats"))
    p.add_argument("dir", nargs="?")

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cache_dir = args.cache_dir or os.environ.get("PLUCKER_CACHE_DIR")
    use_cache = cache_dir and not args.no_cache and args.command != "cache"
    if use_cache and os.path.isdir(cache_dir):
        outcome = load_cache(cache_dir)
        for reason in outcome["skipped"]:
            print(f"warning: skipped {reason}", file=sys.stderr)
    try:
        code = args.func(args)
    except FuelExhausted as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_FUEL
    except (CliParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if use_cache:
        save_cache(cache_dir)
    return code


if __name__ == "__main__":
    sys.exit(main())
