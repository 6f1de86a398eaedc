import random

import pytest
from hypothesis import given, settings, strategies as st

from bicircular.errors import MatroidError, PreconditionError
from bicircular.generators import complete_graph, double_u24, random_graph, theta_graph, wheel
from bicircular.graphs import (Multigraph, bicircular, bicircular_connectivity, bicircular_rank,
                               bicycles, count_graphs, cycle_graph, enumerate_graphs,
                               fast_bicircular, is_committed, link_sum, loop_sum, star_is_cocircuit,
                               vertex_star)
from bicircular.matroid import circuits, direct_sum, two_sum, uniform


def kinds(G):
    return sorted((sorted(b.edges), b.kind) for b in bicycles(G))


def test_bicycle_shapes():
    assert kinds(theta_graph(3)) == [(["a", "b", "c"], "theta")]
    G = Multigraph(["u"], [("e", "u", "u"), ("f", "u", "u")])
    assert kinds(G) == [(["e", "f"], "tight-handcuff")]
    G = Multigraph(["u", "v"], [("e", "u", "u"), ("f", "v", "v"), ("g", "u", "v")])
    assert kinds(G) == [(["e", "f", "g"], "loose-handcuff")]


def test_bicircular_examples():
    assert bicircular(theta_graph(4)) == uniform(2, 4)
    G = Multigraph(["u", "v"], [("e", "u", "u"), ("f", "v", "v"), ("g", "u", "v")])
    assert bicircular(G) == uniform(2, 3, ["e", "f", "g"])
    assert bicircular(Multigraph(["u"], [("e", "u", "u")])) == uniform(1, 1, ["e"])
    assert bicircular(Multigraph(["u"], [])).n == 0


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(0, 6), st.integers(0, 10**9))
def test_circuits_are_bicycles_and_rank_formula(nv, ne, seed):
    G = random_graph(random.Random(seed), nv, ne)
    M = bicircular(G, verify=True)  # raises on any mismatch
    assert sorted(map(sorted, circuits(M))) == sorted(sorted(b.edges) for b in bicycles(G))
    rng = random.Random(seed + 1)
    for _ in range(10):
        X = [e for e in G.edge_names if rng.random() < 0.5]
        assert M.rank(X) == bicircular_rank(G, X)


def test_stars():
    G = theta_graph(4)
    for v in G.vertices:
        assert len(vertex_star(G, v)) == 4
        assert not star_is_cocircuit(G, v)
    K = complete_graph(4)
    K = Multigraph(K.vertices, list(K.edges) + [("z", "1", "2")])
    assert all(star_is_cocircuit(K, v) for v in K.vertices)
    H = Multigraph(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "3")])
    assert vertex_star(H, "3") == frozenset("bc")
    with pytest.raises(MatroidError):
        vertex_star(G, "nope")
    with pytest.raises(PreconditionError):
        star_is_cocircuit(H, "1")


def test_connectivity_classes():
    C4 = cycle_graph(list("abcd"))
    assert bicircular(C4) == uniform(4, 4, list("abcd"))
    assert bicircular_connectivity(C4) == "disconnected"
    assert bicircular_connectivity(complete_graph(4)) == "three_connected"
    pend = Multigraph(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"),
                                             ("d", "3", "4")])
    assert bicircular_connectivity(pend) == "disconnected"


def test_committed():
    for k in (4, 5):
        W = wheel(k, doubled_spokes=[1] if k == 4 else ())
        assert not is_committed(W, "h")
        assert all(is_committed(W, v) for v in W.vertices if v != "h")
    K5 = complete_graph(5)
    assert all(is_committed(K5, v) for v in K5.vertices)
    with pytest.raises(PreconditionError):
        is_committed(theta_graph(4), "u")


def test_committed_false_with_pendent_edge():
    # deleting vertex 1 leaves 2-3, 2-4 and a loop at 3: vertex 4 hangs on a pendent edge
    G = Multigraph(["1", "2", "3", "4"], [
        ("a", "1", "2"), ("b", "1", "3"), ("c", "2", "3"), ("d", "1", "4"),
        ("e", "1", "4"), ("f", "2", "4"), ("g", "3", "3")])
    assert bicircular_connectivity(G) == "three_connected"
    assert G.delete_vertex("1").has_pendent_edge()
    assert not is_committed(G, "1")
    assert is_committed(G, "4") == (not G.delete_vertex("4").has_pendent_edge()
                                    and not G.delete_vertex("4").is_cycle())


def loop_plus_theta(loop, links, prefix):
    u, v = prefix + "u", prefix + "v"
    return Multigraph([u, v], [(loop, u, u)] + [(x, u, v) for x in links])


def test_loop_sum_example():
    G1 = loop_plus_theta("e", ["a", "b", "c"], "p")
    G2 = loop_plus_theta("e", ["d", "f", "g"], "q")
    G = loop_sum(G1, G2, "e")
    want = two_sum(bicircular(G1), bicircular(G2), "e")
    assert bicircular(G) == want
    assert want == double_u24()


def test_link_sum_example():
    G1 = complete_graph(4)
    C3 = cycle_graph(["a", "x", "y"])
    G = link_sum(G1, C3, "a")
    circ = uniform(2, 3, ["a", "x", "y"])
    assert bicircular(G) == two_sum(bicircular(G1), circ, "a")


def test_sum_preconditions():
    G1 = loop_plus_theta("e", ["a", "b", "c"], "p")
    G2 = Multigraph(["x", "y"], [("e", "x", "y"), ("d", "x", "y"), ("f", "x", "y")])
    with pytest.raises(PreconditionError):
        loop_sum(G1, G2, "e")
    with pytest.raises(PreconditionError):
        link_sum(G1, cycle_graph(["e", "q"]), "e")


def test_enumeration_counts():
    gs = list(enumerate_graphs(["a"], 2))
    assert len(gs) == 3
    assert [g.ends["a"] for g in gs] == [("1", "1"), ("1", "2"), ("2", "2")]
    gs = list(enumerate_graphs(["a", "b"], 1))
    assert len(gs) == 1 and gs[0].is_loop("a") and gs[0].is_loop("b")
    assert count_graphs(7, 3) == 279936
    assert sum(1 for _ in enumerate_graphs(list("abcd"), 3)) == 6 ** 4


def test_disconnected_graph_gives_direct_sum():
    G = Multigraph(["1", "2", "3"], [("a", "1", "1"), ("b", "2", "3"), ("c", "2", "3"), ("d", "2", "3")])
    assert fast_bicircular(G) == direct_sum(uniform(1, 1, ["a"]), uniform(2, 3, ["b", "c", "d"]))
