import json

import pytest

from kappa3.canon import canonical_form
from kappa3.enumerate import GraphClassQuery, enumerate_matching
from kappa3.harness import (
    VerificationReport,
    Verifier,
    contains_k4_with_outside_path,
    extremal_size,
)
from kappa3.families import complete_graph, path, wheel
from kappa3.graph import Graph
from kappa3.oracle import kappa_set_oracle
from kappa3.steiner import SteinerTree, TreePacking, kappa_bar_k, verify_packing


def test_lemma3(verifier):
    r = verifier.verify_lemma3()
    assert r.passed and r.witnesses == []
    assert r.scanned == len(list(enumerate_matching(GraphClassQuery(5, 8, 8, True)))) == 2
    assert r.satisfied == r.scanned


def test_wheel_in_lemma3_universe():
    keys = {canonical_form(g) for g in enumerate_matching(GraphClassQuery(5, 8, 8, True))}
    assert canonical_form(wheel(5)) in keys
    assert kappa_bar_k(wheel(5), 3) >= 3


def test_lemma4(verifier):
    r = verifier.verify_lemma4()
    assert r.passed and r.scanned == 4 and r.satisfied == 4
    assert len(r.members) == 4


def test_lemma5(verifier):
    r = verifier.verify_lemma5()
    assert r.passed and r.scanned == 14 == r.satisfied


def test_lemma6_baseline(verifier):
    r = verifier.verify_lemma6()
    assert r.passed
    assert (r.scanned, r.satisfied) == (20, 5)
    assert r.details["cubic_classes"] == 2
    assert r.details["min_degree_histogram"] == {"2": 4, "3": 1}


@pytest.mark.parametrize("n", range(3, 7))
def test_theorem_small(verifier, n):
    r = verifier.verify_theorem(n)
    assert r.passed and r.f_value == extremal_size(n)
    assert r.satisfied == r.scanned


def test_theorem_matches_lemma4(verifier):
    assert verifier.verify_theorem(5).members == verifier.verify_lemma4().members


def test_theorem_range(verifier):
    with pytest.raises(ValueError):
        verifier.verify_theorem(2)
    with pytest.raises(ValueError):
        verifier.verify_inductive_lemmas(6)


def test_inductive_seven(verifier):
    r = verifier.verify_inductive_lemmas(7)
    assert r.passed and r.scanned == r.satisfied
    assert r.details["lemma8"]["in_catalog"] == 0
    base = verifier.catalog(6)
    assert r.details["lemma7"]["extensions"] >= len(base.members) * 15


def test_observations_small(verifier):
    r = verifier.verify_observations(max_n=5, lemma1_max_n=6)
    assert r.passed
    assert all(count > 0 for count in r.details.values())


def test_remark_small(verifier):
    r = verifier.verify_remark(max_n=8)
    assert r.passed
    rows = {(row["n"], row["ell"]): row["edges"] for row in r.details["constructions"]}
    assert rows[(7, 3)] == 13 and rows[(8, 4)] == 19 and rows[(6, 2)] == 9


def test_remark_range(verifier):
    with pytest.raises(ValueError):
        verifier.verify_remark(max_n=11)


def test_reports_are_reproducible():
    a = Verifier().verify_lemma6().to_json(timing=False)
    b = Verifier().verify_lemma6().to_json(timing=False)
    assert a == b
    json.dumps(a)


def test_report_json_shape(verifier):
    data = verifier.verify_theorem(5).to_json()
    assert {"claim_id", "outcome", "scanned", "satisfied", "f_value", "members", "witnesses", "elapsed_ms"} <= set(data)


def test_failure_bookkeeping():
    r = VerificationReport("x", {})
    for i in range(25):
        r.fail({"i": i})
    assert not r.passed and len(r.witnesses) == 10


def test_k4_path_detector():
    k4 = complete_graph(4)
    assert not contains_k4_with_outside_path(k4)
    g = Graph.from_edges(5, k4.edges() + [(0, 4), (4, 1)])
    assert contains_k4_with_outside_path(g)
    assert not contains_k4_with_outside_path(path(5))


def test_run_dispatch(verifier):
    assert [r.claim_id for r in verifier.run("theorem", 4)] == ["theorem-n4"]
    with pytest.raises(ValueError):
        verifier.run("lemma99")


def test_k33_carries_three_trees():
    k33 = Graph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])
    cert = TreePacking((0, 1, 2), [SteinerTree.from_edges([(a, b) for a in range(3)]) for b in range(3, 6)])
    assert verify_packing(k33, cert)
    assert kappa_bar_k(k33, 3) == 3 == kappa_set_oracle(k33, (0, 1, 2))
