"""Command-line front end.

Exit status: 0 on success or a passing check, 1 when a check fails,
2 on usage or input errors.  Timings go to stderr so stdout is
reproducible.

Examples::

    kappa3 kappa --g6 C~ --set 0,1,2
    kappa3 enumerate --n 5 --m 7 --connected
    kappa3 family remark --n 7 --ell 3
    kappa3 catalog --n 6 --json
    kappa3 verify theorem --n 5
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from itertools import combinations
from typing import Sequence

from . import families
from .cache import CacheConflict, Kappa3Cache, default_cache_path
from .enumerate import EnumerationError, GraphClassQuery, IngestError, enumerate_matching, ingest_graph6
from .graph import Graph, GraphError
from .graph6 import Graph6Error, decode, encode
from .harness import CLAIMS, Verifier
from .steiner import UnsupportedTerminalSet, kappa_bar_k, max_packing

log = logging.getLogger("kappa3")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_edges(text: str, order: int | None) -> Graph:
    pairs = []
    for item in filter(None, (p.strip() for p in text.split(","))):
        try:
            a, b = item.split("-")
            pairs.append((int(a), int(b)))
        except ValueError:
            raise UsageError(f"bad edge {item!r}; expected u-v") from None
    n = order if order is not None else 1 + max((max(p) for p in pairs), default=-1)
    return Graph.from_edges(n, pairs)


def _parse_set(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad terminal set {text!r}; expected comma-separated indices") from None


def _read_graphs(args: argparse.Namespace) -> list[Graph]:
    sources = [x for x in (args.g6, args.file, args.edges) if x is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --g6, --file, --edges")
    if args.g6 is not None:
        return [decode(args.g6)]
    if args.edges is not None:
        return [_parse_edges(args.edges, args.order)]
    errors: list[IngestError] = []
    with open(args.file, encoding="utf-8") as fh:
        graphs = list(ingest_graph6(fh, errors=errors))
    for e in errors:
        print(f"error: {args.file}:{e.line}: {e.message}", file=sys.stderr)
    args.input_errors = len(errors)
    if not graphs:
        raise UsageError(f"{args.file}: no valid graph6 lines")
    return graphs


def _emit(args: argparse.Namespace, payload, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _add_graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--g6", help="graph in graph6")
    p.add_argument("--file", help="file with one graph6 per line")
    p.add_argument("--edges", help='edge list such as "0-1,1-2"')
    p.add_argument("--order", type=int, help="vertex count for --edges (default: max index + 1)")


def cmd_kappa(args: argparse.Namespace) -> int:
    graphs = _read_graphs(args)
    if (args.set is None) == (not args.all_triples):
        raise UsageError("give exactly one of --set or --all-triples")
    results = []
    lines = []
    for g in graphs:
        if args.all_triples:
            rows = []
            for s in combinations(range(g.n), args.k):
                t, cert = max_packing(g, s)
                rows.append({"set": list(s), "value": t, "certificate": cert.to_json()["trees"]})
            top = max((r["value"] for r in rows), default=0)
            low = min((r["value"] for r in rows), default=0)
            results.append({"graph6": encode(g), "k": args.k, "max": top, "min": low, "sets": rows})
            lines.append(f"{encode(g)} max={top} min={low}")
        else:
            s = _parse_set(args.set)
            t, cert = max_packing(g, s)
            results.append({"graph6": encode(g), "set": sorted(set(s)), "value": t, **cert.to_json()})
            lines.append(str(t))
            lines.extend(" ".join(f"{u}-{v}" for u, v in tree.edges) for tree in cert.trees)
    _emit(args, results if len(results) > 1 else results[0], lines)
    return EXIT_USAGE if getattr(args, "input_errors", 0) else EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    m_min, m_max = args.m_min, args.m_max
    if args.m is not None:
        m_min = m_max = args.m
    q = GraphClassQuery(args.n, m_min or 0, m_max, args.connected)
    graphs = [encode(g) for g in enumerate_matching(q, args.threads)]
    _emit(args, graphs, graphs)
    return EXIT_OK


def _family_graph(args: argparse.Namespace) -> Graph:
    name = args.name
    if name != "attach" and args.n is None:
        raise UsageError(f"family {name} needs --n")
    if name == "regular" and args.d is None:
        raise UsageError("family regular needs --d")
    if name == "remark" and args.ell is None:
        raise UsageError("family remark needs --ell")
    if name in ("complete", "cycle", "path", "wheel", "empty"):
        return getattr(families, "complete_graph" if name == "complete" else name)(args.n)
    if name == "regular":
        return families.regular_graph(args.n, args.d)
    if name == "remark":
        return families.remark_construction(args.n, args.ell)
    if name == "k2-join":
        return families.join(families.complete_graph(2), families.empty(args.n - 2))
    if name == "attach":
        base = decode(args.g6) if args.g6 else families.complete_graph(3)
        return families.attach_k4(base, args.vertex)
    raise UsageError(f"unknown family {name!r}")


def cmd_family(args: argparse.Namespace) -> int:
    g = _family_graph(args)
    code = encode(g)
    _emit(args, {"family": args.name, "graph6": code, "n": g.n, "edges": g.edge_count()}, [code])
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    verifier = _verifier(args)
    cat = verifier.catalog(args.n)
    _flush(verifier)
    if args.out:
        cat.dump(args.out)
    _emit(args, cat.to_json(), [f"f={cat.f_value}"] + cat.members)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    verifier = _verifier(args)
    reports = verifier.run(args.claim, args.n)
    _flush(verifier)
    for r in reports:
        log.info("%s elapsed %.1f ms", r.claim_id, r.elapsed_ms)
    lines = []
    for r in reports:
        extra = f" f={r.f_value}" if r.f_value is not None else ""
        lines.append(f"{r.claim_id} {r.outcome}{extra} scanned={r.scanned} satisfied={r.satisfied}")
        lines.extend(f"  witness {json.dumps(w, sort_keys=True)}" for w in r.witnesses)
    payload = [r.to_json(timing=False) for r in reports]
    _emit(args, payload if len(payload) > 1 else payload[0], lines)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_cache(args: argparse.Namespace) -> int:
    path = args.cache or default_cache_path()
    if not path:
        raise UsageError("cache commands need --cache or KAPPA3_CACHE")
    cache = Kappa3Cache(path)
    if args.action == "info":
        _emit(args, {"path": str(path), "entries": len(cache)}, [f"{path}: {len(cache)} entries"])
        return EXIT_OK
    if args.action == "compact":
        cache.flush()
        _emit(args, {"path": str(path), "entries": len(cache)}, [f"{path}: {len(cache)} entries"])
        return EXIT_OK
    # check: recompute a deterministic sample
    items = cache.items()
    rng = random.Random(args.seed)
    sample = rng.sample(items, min(args.sample, len(items)))
    bad = [key for key, value in sample if kappa_bar_k(decode(key), 3) != value]
    _emit(args, {"checked": len(sample), "mismatches": bad}, [f"checked={len(sample)} mismatches={len(bad)}"] + bad)
    return EXIT_FAIL if bad else EXIT_OK


def _verifier(args: argparse.Namespace) -> Verifier:
    path = args.cache or default_cache_path()
    return Verifier(Kappa3Cache(path) if path else None, args.threads)


def _flush(verifier: Verifier) -> None:
    if verifier.cache is not None and verifier.cache.path is not None:
        verifier.cache.flush()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, help="worker processes (default: all cores)")
    common.add_argument("--cache", help="persistent value cache (default $KAPPA3_CACHE)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="kappa3", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kappa", parents=[common], help="packing number of a terminal set")
    _add_graph_input(p)
    p.add_argument("--set", help="comma-separated terminal vertices")
    p.add_argument("--all-triples", action="store_true", help="every k-subset")
    p.add_argument("--k", type=int, default=3, choices=(2, 3))
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("enumerate", parents=[common], help="one graph per isomorphism class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--m-min", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--connected", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("family", parents=[common], help="emit a named construction")
    p.add_argument("name", choices=("complete", "cycle", "path", "wheel", "empty", "regular", "remark", "k2-join", "attach"))
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int, help="degree for regular")
    p.add_argument("--ell", type=int, help="bound for remark")
    p.add_argument("--g6", help="base graph for attach (default K3)")
    p.add_argument("--vertex", type=int, default=0, help="attaching vertex")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("catalog", parents=[common], help="extremal classes of one order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="write catalog JSON here")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", parents=[common], help="run a reproduction check")
    p.add_argument("claim", choices=CLAIMS)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cache", parents=[common], help="inspect or compact the value cache")
    p.add_argument("action", choices=("info", "compact", "check"))
    p.add_argument("--sample", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_cache)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    elif args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, Graph6Error, GraphError, EnumerationError, UnsupportedTerminalSet,
            families.FamilyError, CacheConflict, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
