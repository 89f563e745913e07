import json
import random
from pathlib import Path

import pytest

from conftest import random_graph
from hbarperfect.decide import (Decider, census, chromatic_number, decide, replay_witness, structural_certificate,
                                verify_certificate)
from hbarperfect.errors import IoError
from hbarperfect.graph import (anticycle, complete, copy_vertex, cycle, disjoint_union, empty, join, read_graph6_file,
                               relabel)
from hbarperfect.search import is_isomorphic

DATA = Path(__file__).parent / "data"


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_small_connected_graphs_structural(n):
    for g in read_graph6_file(str(DATA / f"connected{n}.g6")):
        v = structural_certificate(g)
        assert v.status == "Perfect"
        assert verify_certificate(g, v.to_json())


def test_antic7_imperfect():
    v = decide(anticycle(7))
    assert v.status == "Imperfect"
    assert v.certificate[0]["step"] == "forbidden"
    assert v.witness["alpha"] == 2
    assert replay_witness(v.witness) > 2 + 1e-3


def test_forbidden_inside_larger_graph():
    g = disjoint_union(anticycle(7), complete(2))
    v = decide(g)
    assert v.status == "Imperfect"
    assert sum(v.witness["facet"]) == 7
    assert replay_witness(v.witness) > 2 + 1e-3
    assert verify_certificate(g, v.to_json())


def test_join_k1_c5():
    g = join(complete(1), cycle(5))
    v = decide(g)
    assert v.status == "Perfect"
    steps = json.dumps(v.to_json())
    assert "join_split" in steps and "h_perfect" in steps


def test_k3_is_perfect():
    v = decide(complete(3))
    assert v.status == "Perfect" and v.certificate == [{"step": "perfect"}]


def test_twin_reduction():
    g = copy_vertex(anticycle(7), 0)
    v = decide(g)
    assert v.status == "Imperfect"
    g = copy_vertex(cycle(5), 0)
    v = structural_certificate(g)
    assert v.status == "Perfect"
    assert verify_certificate(g, v.to_json())


def test_verify_rejects_wrong_graph():
    g = join(complete(1), cycle(5))
    cert = decide(g).to_json()
    assert not verify_certificate(disjoint_union(complete(1), cycle(5)), cert)


def test_relabel_consistency():
    rng = random.Random(41)
    for _ in range(20):
        g = random_graph(rng, rng.randint(3, 7))
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert structural_certificate(g).status == structural_certificate(relabel(g, perm)).status


def test_structural_leaves_numeric_open():
    d = Decider(numeric=False)
    for g in read_graph6_file(str(DATA / "connected7.g6")):
        if is_isomorphic(g, anticycle(7)):
            assert d.decide(g).status == "Imperfect"


def test_census_rows():
    res = census(str(DATA / "connected5.g6"))
    assert res["rows"] == [{"n": 5, "connected": 21, "perfect": 20, "h_perfect": 21, "hbar_perfect": 21,
                            "hbar_imperfect": 0, "undetermined": 0}]
    res = census(str(DATA / "connected6.g6"))
    row = res["rows"][0]
    assert (row["perfect"], row["h_perfect"], row["hbar_perfect"]) == (105, 109, 112)


def test_census_reports_imperfect():
    res = census([anticycle(7), cycle(7), empty(2)])
    assert [r["n"] for r in res["rows"]] == [2, 7]
    assert res["rows"][1]["hbar_imperfect"] == 1
    assert res["imperfect"][0]["chromatic_number"] == 4


def test_census_missing_file():
    with pytest.raises(IoError):
        census("/nonexistent/graphs.g6")


def test_chromatic_number():
    assert chromatic_number(cycle(5)) == 3
    assert chromatic_number(anticycle(7)) == 4
    assert chromatic_number(complete(4)) == 4
    assert chromatic_number(empty(3)) == 1
