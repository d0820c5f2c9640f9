"""Exhaustive checks of the extremal results for triples at small orders.

Each ``verify_*`` method scans a finite universe of graphs and returns a
:class:`VerificationReport`.  A check passes iff it found no counterexample;
counterexamples (at most :data:`MAX_WITNESSES`) are kept in ``witnesses``.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .cache import Kappa3Cache
from .canon import canonical_form
from .enumerate import GraphClassQuery, enumerate_all, enumerate_matching
from .families import (
    ExtremalCatalog,
    attach_k4,
    evaluate_many,
    extremal_catalog,
    is_attaching_vertex,
    remark_construction,
    remark_edge_count,
    remark_feasible,
)
from .graph import Graph, reach
from .graph6 import decode, encode
from .steiner import find_witness, kappa_bar_k, max_packing, menger_local_connectivity

log = logging.getLogger(__name__)

MAX_WITNESSES = 10
THEOREM_ORDERS = range(3, 10)
INDUCTIVE_ORDERS = (7, 8)
CLAIMS = ("lemma3", "lemma4", "lemma5", "lemma6", "theorem", "inductive", "observations", "remark", "all")


def extremal_size(n: int) -> int:
    return 2 * n - 2 if n == 4 else 2 * n - 3


@dataclass
class VerificationReport:
    claim_id: str
    universe: dict
    outcome: str = "pass"
    scanned: int = 0
    satisfied: int = 0
    f_value: int | None = None
    members: list[str] | None = None
    witnesses: list[dict] = field(default_factory=list)
    certificates: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    def fail(self, witness: dict) -> None:
        self.outcome = "fail"
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness)

    def to_json(self, timing: bool = True) -> dict:
        out: dict = {
            "claim_id": self.claim_id,
            "outcome": self.outcome,
            "universe": self.universe,
            "scanned": self.scanned,
            "satisfied": self.satisfied,
        }
        if self.f_value is not None:
            out["f_value"] = self.f_value
        if self.members is not None:
            out["members"] = self.members
        out["witnesses"] = self.witnesses
        if self.certificates:
            out["certificates"] = self.certificates
        if self.details:
            out["details"] = self.details
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 1)
        return out


class _Timer:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self) -> VerificationReport:
        self.start = time.perf_counter()
        return self.report

    def __exit__(self, *exc) -> None:
        self.report.elapsed_ms = (time.perf_counter() - self.start) * 1000.0
        log.info(
            "%s: %s (%d/%d) in %.0f ms",
            self.report.claim_id,
            self.report.outcome,
            self.report.satisfied,
            self.report.scanned,
            self.report.elapsed_ms,
        )


def _certificate(g: Graph, threshold: int = 3) -> dict | None:
    s = find_witness(g, 3, threshold)
    if s is None:
        return None
    _, cert = max_packing(g, s, target=threshold)
    return {"graph6": encode(g), **cert.to_json()}


def contains_k4_with_outside_path(g: Graph) -> bool:
    """Some K4 has two of its vertices joined by a path avoiding the K4's edges."""
    full = (1 << g.n) - 1
    for quad in combinations(range(g.n), 4):
        if any(not g.adj[a] >> b & 1 for a, b in combinations(quad, 2)):
            continue
        qmask = sum(1 << v for v in quad)
        stripped = tuple(row & ~qmask if (qmask >> v & 1) else row for v, row in enumerate(g.adj))
        for v in quad:
            if reach(stripped, 1 << v, full) & qmask & ~(1 << v):
                return True
    return False


class Verifier:
    """Runs the checks, sharing catalogs and an optional persistent cache."""

    def __init__(self, cache: Kappa3Cache | None = None, threads: int | None = None):
        self.cache = cache
        self.threads = threads
        self._catalogs: dict[int, ExtremalCatalog] = {}

    # -- predicate ---------------------------------------------------

    def value(self, g: Graph) -> int:
        """Exact maximum packing number over triples, memoised when caching."""
        if self.cache is None:
            return kappa_bar_k(g, 3)
        key = canonical_form(g).decode("ascii")
        hit = self.cache.get(key)
        if hit is None:
            hit = kappa_bar_k(g, 3)
            self.cache.put(key, hit)
        return hit

    def has_three(self, g: Graph) -> bool:
        if g.n < 3:
            return False
        if self.cache is not None:
            return self.value(g) >= 3
        return find_witness(g, 3, 3) is not None

    def _many(self, graphs: list[Graph]) -> list[bool]:
        if self.cache is None:
            return evaluate_many(graphs, None, self.threads)
        return [self.has_three(g) for g in graphs]

    def catalog(self, n: int) -> ExtremalCatalog:
        if n not in self._catalogs:
            pred = self.has_three if self.cache is not None else None
            self._catalogs[n] = extremal_catalog(n, pred, self.threads)
        return self._catalogs[n]

    # -- universe scans ----------------------------------------------

    def _all_at_least_three(self, claim_id: str, n: int, m: int) -> VerificationReport:
        report = VerificationReport(claim_id, {"n": n, "m": m, "connected": True})
        with _Timer(report):
            graphs = list(enumerate_matching(GraphClassQuery(n, m, m, True)))
            flags = self._many(graphs)
            report.scanned = len(graphs)
            for g, hit in zip(graphs, flags):
                if hit:
                    report.satisfied += 1
                    if len(report.certificates) < MAX_WITNESSES:
                        report.certificates.append(_certificate(g))
                else:
                    report.fail({"graph6": encode(g), "reason": "no triple carries 3 trees"})
        return report

    def _low_classes(self, n: int, m: int) -> tuple[list[Graph], list[Graph]]:
        graphs = list(enumerate_matching(GraphClassQuery(n, m, m, True)))
        flags = self._many(graphs)
        return graphs, [g for g, hit in zip(graphs, flags) if not hit]

    def verify_lemma3(self) -> VerificationReport:
        return self._all_at_least_three("lemma3", 5, 8)

    def verify_lemma5(self) -> VerificationReport:
        return self._all_at_least_three("lemma5", 6, 10)

    def verify_lemma4(self) -> VerificationReport:
        report = VerificationReport("lemma4", {"n": 5, "m": 7, "connected": True})
        with _Timer(report):
            graphs, low = self._low_classes(5, 7)
            report.scanned = len(graphs)
            report.satisfied = len(low)
            report.members = sorted(canonical_form(g).decode("ascii") for g in low)
            for g in graphs:
                if g not in low:
                    report.fail({"graph6": encode(g), "reason": "a triple carries 3 trees"})
            if len(graphs) != 4:
                report.fail({"reason": f"expected 4 classes, found {len(graphs)}"})
        return report

    def verify_lemma6(self) -> VerificationReport:
        report = VerificationReport("lemma6", {"n": 6, "m": 9, "connected": True})
        with _Timer(report):
            graphs, low = self._low_classes(6, 9)
            report.scanned = len(graphs)
            report.satisfied = len(low)
            report.members = sorted(canonical_form(g).decode("ascii") for g in low)
            cubic = [g for g in low if set(g.degrees()) == {3}]
            all_cubic = [g for g in graphs if set(g.degrees()) == {3}]
            report.details = {
                "low_classes": len(low),
                "cubic_low_classes": len(cubic),
                "cubic_classes": len(all_cubic),
                "min_degree_histogram": _histogram(g.min_degree() for g in low),
            }
            if not low:
                report.fail({"reason": "no class with value <= 2"})
        return report

    def verify_theorem(self, n: int) -> VerificationReport:
        if n not in THEOREM_ORDERS:
            raise ValueError(f"theorem check supports n in {THEOREM_ORDERS.start}..{THEOREM_ORDERS.stop - 1}")
        expected = extremal_size(n)
        report = VerificationReport(f"theorem-n{n}", {"n": n, "connected": True})
        with _Timer(report):
            cat = self.catalog(n)
            report.f_value = cat.f_value
            report.members = list(cat.members)
            above = cat.f_value + 1
            graphs = []
            if above <= n * (n - 1) // 2:
                graphs = list(enumerate_matching(GraphClassQuery(n, above, above, True)))
            flags = self._many(graphs)
            report.scanned = len(graphs)
            report.satisfied = sum(flags)
            report.details = {
                "expected_f": expected,
                "h_value": cat.f_value + 1,
                "extremal_classes": len(cat.members),
                "levels_scanned": {str(m): cat.scanned[m] for m in sorted(cat.scanned)},
            }
            if cat.f_value != expected:
                report.fail({"reason": f"f = {cat.f_value}, expected {expected}"})
            for g, hit in zip(graphs, flags):
                if not hit:
                    report.fail({"graph6": encode(g), "reason": f"{above} edges but no triple carries 3 trees"})
        return report

    def verify_inductive_lemmas(self, n: int) -> VerificationReport:
        if n not in INDUCTIVE_ORDERS:
            raise ValueError(f"inductive checks support n in {INDUCTIVE_ORDERS}")
        report = VerificationReport(f"inductive-n{n}", {"n": n, "base": n - 1})
        with _Timer(report):
            prev, cur = self.catalog(n - 1), self.catalog(n)
            keys = cur.keys()
            counts = {name: {"extensions": 0, "in_catalog": 0, "three": 0} for name in ("lemma7", "lemma8", "lemma9")}
            for code in prev.members:
                base = decode(code)
                for name, ext in _extensions(base):
                    c = counts[name]
                    c["extensions"] += 1
                    report.scanned += 1
                    in_cat = name != "lemma8" and canonical_form(ext) in keys
                    if in_cat:
                        c["in_catalog"] += 1
                        report.satisfied += 1
                    elif self.has_three(ext):
                        c["three"] += 1
                        report.satisfied += 1
                    else:
                        report.fail({"lemma": name, "base": code, "graph6": encode(ext)})
            report.details = counts
        return report

    def verify_observations(self, max_n: int = 6, lemma1_max_n: int = 7) -> VerificationReport:
        report = VerificationReport(
            "observations", {"observation_orders": max_n, "lemma1_orders": lemma1_max_n}
        )
        with _Timer(report):
            stats = {"supergraph": 0, "subdivision": 0, "attach": 0, "lemma1": 0}

            def check(kind: str, g: Graph, note: str) -> None:
                stats[kind] += 1
                report.scanned += 1
                if self.has_three(g):
                    report.satisfied += 1
                else:
                    report.fail({"property": kind, "graph6": encode(g), "from": note})

            for n in range(3, max_n + 1):
                for h in enumerate_all(n):
                    if not h.is_connected():
                        continue
                    code = encode(h)
                    if self.has_three(h):
                        for u, v in combinations(range(n), 2):
                            if not h.adj[u] >> v & 1:
                                check("supergraph", h.add_edge(u, v), code)
                        for nbrs in range(1, 1 << n):
                            check("supergraph", h.add_vertex_with_neighbors(nbrs), code)
                        for u, v in h.edges():
                            check("subdivision", h.subdivide_edge(u, v), code)
                    for u in range(n):
                        if h.degree(u) < 3 or is_attaching_vertex(h, u):
                            continue
                        if any(menger_local_connectivity(h, u, v) >= 3 for v in range(n) if v != u):
                            check("attach", attach_k4(h, u), code)
            for n in range(4, lemma1_max_n + 1):
                for g in enumerate_all(n):
                    if g.is_connected() and contains_k4_with_outside_path(g):
                        check("lemma1", g, "enumeration")
            report.details = stats
        return report

    def verify_remark(self, max_n: int = 9, max_ell: int | None = None) -> VerificationReport:
        if max_n > 10:
            raise ValueError("remark check supports max_n <= 10")
        report = VerificationReport("remark", {"max_n": max_n, "max_ell": max_ell})
        with _Timer(report):
            rows = []
            for n in range(5, max_n + 1):
                top = n - 2 if max_ell is None else min(max_ell, n - 2)
                for ell in range(2, top + 1):
                    if not remark_feasible(n, ell):
                        continue
                    g = remark_construction(n, ell)
                    report.scanned += 1
                    formula = remark_edge_count(n, ell)
                    above = find_witness(g, 3, ell + 1)
                    rows.append({"n": n, "ell": ell, "edges": g.edge_count(), "min_degree": g.min_degree()})
                    if g.edge_count() != formula:
                        report.fail({"n": n, "ell": ell, "reason": f"{g.edge_count()} edges, formula {formula}"})
                    elif above is not None:
                        report.fail({"n": n, "ell": ell, "graph6": encode(g), "terminals": list(above)})
                    else:
                        report.satisfied += 1
            report.details = {"constructions": rows}
        return report

    def run(self, claim: str, n: int | None = None) -> list[VerificationReport]:
        """Run one named claim; ``n`` selects a single order where meaningful."""
        if claim == "lemma3":
            return [self.verify_lemma3()]
        if claim == "lemma4":
            return [self.verify_lemma4()]
        if claim == "lemma5":
            return [self.verify_lemma5()]
        if claim == "lemma6":
            return [self.verify_lemma6()]
        if claim == "theorem":
            return [self.verify_theorem(k) for k in ([n] if n else range(3, 9))]
        if claim == "inductive":
            return [self.verify_inductive_lemmas(k) for k in ([n] if n else INDUCTIVE_ORDERS)]
        if claim == "observations":
            return [self.verify_observations()]
        if claim == "remark":
            return [self.verify_remark(n or 9)]
        if claim == "all":
            out: list[VerificationReport] = []
            for name in CLAIMS[:-1]:
                out.extend(self.run(name))
            return out
        raise ValueError(f"unknown claim {claim!r}")


def _extensions(base: Graph) -> Iterable[tuple[str, Graph]]:
    n = base.n
    for a, b in combinations(range(n), 2):
        yield "lemma7", base.add_vertex_with_neighbors((1 << a) | (1 << b))
    for a, b, c in combinations(range(n), 3):
        yield "lemma8", base.add_vertex_with_neighbors((1 << a) | (1 << b) | (1 << c))
    for x1, x2 in base.edges():
        cut = base.delete_edge(x1, x2)
        for x3 in range(n):
            if x3 not in (x1, x2):
                yield "lemma9", cut.add_vertex_with_neighbors((1 << x1) | (1 << x2) | (1 << x3))


def _histogram(values: Iterable[int]) -> dict[str, int]:
    out: dict[str, int] = {}
    for v in values:
        out[str(v)] = out.get(str(v), 0) + 1
    return dict(sorted(out.items()))


def verify_lemma3() -> VerificationReport:
    return Verifier().verify_lemma3()


def verify_lemma4() -> VerificationReport:
    return Verifier().verify_lemma4()


def verify_lemma5() -> VerificationReport:
    return Verifier().verify_lemma5()


def verify_lemma6() -> VerificationReport:
    return Verifier().verify_lemma6()


def verify_theorem(n: int) -> VerificationReport:
    return Verifier().verify_theorem(n)


def verify_inductive_lemmas(n: int) -> VerificationReport:
    return Verifier().verify_inductive_lemmas(n)


def verify_observations() -> VerificationReport:
    return Verifier().verify_observations()


def verify_remark(max_n: int = 9, max_ell: int | None = None) -> VerificationReport:
    return Verifier().verify_remark(max_n, max_ell)
