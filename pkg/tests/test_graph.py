import random

import pytest

from ect.graph import (EVEN, ODD, TWIN, Graph, blocks, even_cycle_vertices,
                       find_even_cycle, has_even_cycle, is_feasible_ect,
                       residual_graph, cycle_is_even)
from ect.oracle import enumerate_even_cycles, enumerate_simple_cycles

from helpers import (complete_graph, cycle_graph, graph_from_edges,
                     path_graph, random_multigraph)


# -- blocks ------------------------------------------------------------------

def test_blocks_triangle():
    dec = blocks(cycle_graph(3))
    assert len(dec.blocks) == 1
    assert dec.blocks[0].nodes == [0, 1, 2]
    assert dec.cut_nodes == set()


def test_blocks_path():
    dec = blocks(path_graph(3))
    assert len(dec.blocks) == 2
    assert all(b.is_bridge for b in dec.blocks)
    assert dec.cut_nodes == {1}


def test_blocks_bowtie():
    # two triangles sharing node 0; brute-force 2-connectivity agrees
    g = graph_from_edges([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    dec = blocks(g)
    assert len(dec.blocks) == 2
    assert dec.cut_nodes == {0}
    node_sets = sorted(tuple(b.nodes) for b in dec.blocks)
    assert node_sets == [(0, 1, 2), (0, 3, 4)]


def test_blocks_empty_graph():
    assert blocks(Graph()).blocks == []


def test_blocks_every_edge_in_exactly_one_block():
    rng = random.Random(7)
    for _ in range(120):
        g = random_multigraph(rng, rng.randint(1, 9), rng.randint(0, 14))
        dec = blocks(g)
        seen = []
        for b in dec.blocks:
            seen.extend(b.edges)
        assert sorted(seen) == g.edge_ids()


def test_blocks_cut_nodes_match_bruteforce():
    rng = random.Random(8)
    for _ in range(120):
        g = random_multigraph(rng, rng.randint(2, 9), rng.randint(0, 14))
        dec = blocks(g)
        n_comp = len(g.components())
        brute_cuts = set()
        for v in g.nodes():
            rest = g.induced([u for u in g.nodes() if u != v])
            if len(rest.components()) > n_comp - (1 if g.degree(v) == 0 else 0):
                brute_cuts.add(v)
        assert dec.cut_nodes == brute_cuts


# -- parity of cycles --------------------------------------------------------

def test_cycle_is_even_tags():
    assert cycle_is_even([ODD, ODD])
    assert not cycle_is_even([ODD, EVEN])
    assert cycle_is_even([ODD, EVEN, TWIN])
    assert cycle_is_even([])


# -- has_even_cycle ----------------------------------------------------------

def test_has_even_cycle_c5_false():
    assert not has_even_cycle(cycle_graph(5))


def test_has_even_cycle_c4_true():
    assert has_even_cycle(cycle_graph(4))


def test_has_even_cycle_k4_true():
    # enumeration oracle: K4 has three 4-cycles
    k4 = complete_graph(4)
    evens = enumerate_even_cycles(k4)
    assert len(evens) == 3
    assert has_even_cycle(k4)


def test_twin_edge_makes_cycle_even():
    g = cycle_graph(5)
    g.edges[0].parity = TWIN
    assert has_even_cycle(g)


def test_has_even_cycle_matches_enumeration():
    rng = random.Random(42)
    for trial in range(500):
        g = random_multigraph(rng, rng.randint(1, 8), rng.randint(0, 13),
                              twin_prob=0.08 if trial % 3 == 0 else 0.0)
        expect = len(enumerate_even_cycles(g)) > 0
        assert has_even_cycle(g) == expect, f"trial {trial}"


def test_find_even_cycle_is_even_and_simple():
    rng = random.Random(43)
    found = 0
    for trial in range(400):
        g = random_multigraph(rng, rng.randint(1, 8), rng.randint(0, 13),
                              twin_prob=0.05)
        res = find_even_cycle(g)
        assert (res is not None) == has_even_cycle(g)
        if res is None:
            continue
        found += 1
        nodes, eids = res
        assert len(set(nodes)) == len(nodes)
        assert len(set(eids)) == len(eids)
        assert cycle_is_even(g.edges[e].parity for e in eids)
        # edges form a closed walk over exactly these nodes
        deg = {}
        for e in eids:
            ed = g.edges[e]
            deg[ed.u] = deg.get(ed.u, 0) + (2 if ed.is_loop else 1)
            deg[ed.v] = deg.get(ed.v, 0) + (0 if ed.is_loop else 1)
        assert set(deg) == set(nodes)
        assert all(d == 2 for d in deg.values())
    assert found > 100


# -- even_cycle_vertices -----------------------------------------------------

def test_even_cycle_vertices_c4_with_pendant():
    g = graph_from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    assert even_cycle_vertices(g) == {0, 1, 2, 3}


def test_even_cycle_vertices_c5_empty():
    assert even_cycle_vertices(cycle_graph(5)) == set()


def test_even_cycle_vertices_k4_all():
    evens = enumerate_even_cycles(complete_graph(4))
    union = set().union(*(set(nodes) for nodes, _ in evens))
    assert union == {0, 1, 2, 3}
    assert even_cycle_vertices(complete_graph(4)) == {0, 1, 2, 3}


def test_even_cycle_vertices_square_with_two_legs():
    # 2-connected non-cycle block containing an even cycle where v=4 and
    # p=5 lie on no even cycle: the naive block-level rule fails here.
    g = graph_from_edges([(0, 1), (1, 2), (2, 3), (3, 0),   # square
                          (4, 0), (4, 5), (5, 2)])          # v-w edge, v-p-y path
    assert even_cycle_vertices(g) == {0, 1, 2, 3}


def test_even_cycle_vertices_matches_enumeration():
    rng = random.Random(99)
    for trial in range(500):
        g = random_multigraph(rng, rng.randint(1, 8), rng.randint(0, 13),
                              twin_prob=0.08 if trial % 4 == 0 else 0.0)
        evens = enumerate_even_cycles(g)
        expect = set()
        for nodes, _ in evens:
            expect.update(nodes)
        got = even_cycle_vertices(g)
        assert got == expect, f"trial {trial}: {got} != {expect}"


def test_even_cycle_vertices_matches_enumeration_plain():
    rng = random.Random(100)
    for trial in range(300):
        g = random_multigraph(rng, rng.randint(2, 10), rng.randint(0, 16))
        evens = enumerate_even_cycles(g)
        expect = set()
        for nodes, _ in evens:
            expect.update(nodes)
        assert even_cycle_vertices(g) == expect, f"trial {trial}"


# -- residual graph / feasibility --------------------------------------------

def test_residual_c4_minus_node_empty():
    assert residual_graph(cycle_graph(4), {0}).num_nodes() == 0


def test_residual_two_squares():
    g = graph_from_edges([(0, 1), (1, 2), (2, 3), (3, 0),
                          (4, 5), (5, 6), (6, 7), (7, 4)])
    r = residual_graph(g, {0})
    assert r.nodes() == [4, 5, 6, 7]


def test_residual_k4_identity():
    r = residual_graph(complete_graph(4), set())
    assert r.nodes() == [0, 1, 2, 3]
    assert r.num_edges() == 6


def test_residual_idempotent():
    rng = random.Random(123)
    for _ in range(150):
        g = random_multigraph(rng, rng.randint(1, 9), rng.randint(0, 14))
        s = {v for v in g.nodes() if rng.random() < 0.2}
        r = residual_graph(g, s)
        r2 = residual_graph(r, set())
        assert r2.nodes() == r.nodes()
        assert r2.edge_ids() == r.edge_ids()


def test_feasibility_basics():
    c4 = cycle_graph(4)
    assert not is_feasible_ect(c4, set())
    for v in range(4):
        assert is_feasible_ect(c4, {v})
    rng = random.Random(5)
    for _ in range(100):
        g = random_multigraph(rng, rng.randint(1, 8), rng.randint(0, 12))
        assert is_feasible_ect(g, set(g.nodes()))
        assert is_feasible_ect(g, set()) == (not has_even_cycle(g))


# -- enumeration oracle sanity -----------------------------------------------

def test_enumerate_c6_single_even_cycle():
    assert len(enumerate_even_cycles(cycle_graph(6))) == 1


def test_enumerate_c5_no_even():
    assert enumerate_even_cycles(cycle_graph(5)) == []


def test_enumerate_counts_k4():
    cycles = enumerate_simple_cycles(complete_graph(4))
    # K4: 4 triangles + 3 four-cycles
    assert len(cycles) == 7


def test_enumerate_parallel_and_loop():
    g = Graph()
    g.add_node(0, 1)
    g.add_node(1, 1)
    g.add_edge(0, 1)
    g.add_edge(0, 1)
    g.add_edge(0, 0, parity=EVEN)
    cycles = enumerate_simple_cycles(g)
    assert len(cycles) == 2  # parallel 2-cycle + loop
    evens = enumerate_even_cycles(g)
    assert len(evens) == 2  # both are even: 1+1 and the even loop
