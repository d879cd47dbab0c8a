import random

import pytest

from ect.errors import TooLarge
from ect.matching import (brute_force_matching, max_matching,
                          tutte_deficiency_witness)

from helpers import (complete_graph, cycle_graph, graph_from_edges,
                     petersen_graph, random_graph)


def test_c4_matching_size_2():
    assert max_matching(cycle_graph(4)).size() == 2


def test_c5_matching_size_2():
    assert max_matching(cycle_graph(5)).size() == 2


def test_petersen_perfect():
    assert brute_force_matching(petersen_graph()).size() == 5
    assert max_matching(petersen_graph()).size() == 5


def test_k4_and_star():
    assert brute_force_matching(complete_graph(4)).size() == 2
    star = graph_from_edges([(0, i) for i in range(1, 6)])
    assert brute_force_matching(star).size() == 1
    assert max_matching(star).size() == 1


def test_matching_validity_and_oracle_agreement():
    rng = random.Random(2024)
    for trial in range(1000):
        n = rng.randint(1, 12)
        g = random_graph(rng, n, rng.uniform(0.1, 0.8))
        m = max_matching(g)
        # validity
        seen = set()
        for eid in m.edges:
            e = g.edges[eid]
            assert e.u not in seen and e.v not in seen
            seen.add(e.u)
            seen.add(e.v)
        bf = brute_force_matching(g)
        assert m.size() == bf.size(), f"trial {trial}"


def test_tutte_berge_equality():
    rng = random.Random(77)
    for trial in range(200):
        n = rng.randint(1, 10)
        g = random_graph(rng, n, rng.uniform(0.1, 0.7))
        m = max_matching(g)
        exposed = g.num_nodes() - 2 * m.size()
        _, deficiency = tutte_deficiency_witness(g)
        assert exposed == deficiency, f"trial {trial}"


def test_tutte_examples():
    assert tutte_deficiency_witness(cycle_graph(5)) == (set(), 1)
    assert tutte_deficiency_witness(complete_graph(4))[1] == 0
    # two triangles joined by a bridge: perfect matching exists
    g = graph_from_edges([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
                          (0, 3)])
    m = max_matching(g)
    assert g.num_nodes() - 2 * m.size() == tutte_deficiency_witness(g)[1]


def test_matching_determinism():
    rng = random.Random(31)
    for _ in range(50):
        g = random_graph(rng, 9, 0.4)
        assert max_matching(g).edges == max_matching(g).edges


def test_size_guards():
    g = random_graph(random.Random(1), 15, 0.3)
    with pytest.raises(TooLarge):
        brute_force_matching(g)
    with pytest.raises(TooLarge):
        tutte_deficiency_witness(g)


def test_rejects_parallel_edges():
    g = graph_from_edges([(0, 1)])
    g.add_edge(0, 1)
    with pytest.raises(ValueError):
        max_matching(g)
