import random

import pytest

from bicircular.generators import degree3_example, double_u24
from bicircular.graphs import Multigraph, bicircular, bicircular_rank, fast_bicircular
from bicircular.matroid import is_nonseparating_cocircuit, popcount

import structural as s


@pytest.fixture(scope="module")
def dense_graphs():
    return s.three_connected_graphs()


@pytest.fixture(scope="module")
def all_graphs(small_corpus, big_corpus, dense_graphs):
    return list(small_corpus) + list(big_corpus) + list(dense_graphs)


def no_counterexample(result, at_least=1):
    n, bad = result
    assert not bad, bad[:3]
    assert n >= at_least
    return n


def test_star_is_cocircuit_iff_cycle_remains(all_graphs):
    no_counterexample(s.star_cocircuit_iff_cycle_remains(all_graphs), 100)


def test_cocircuit_deletion_on_small_graphs(small_corpus):
    no_counterexample(s.cocircuit_deletion_has_one_big_component(small_corpus), 100)


def test_cocircuit_deletion_can_leave_two_big_components():
    # B(G) connected, C = {e, h, i} cuts off vertex 5; what remains is a
    # pair of loops at 2 and a theta on 1, 3, 4: two components of size > 1
    G = Multigraph(["1", "2", "3", "4", "5"], [
        ("a", "4", "1"), ("b", "2", "2"), ("c", "3", "4"), ("d", "2", "2"), ("e", "5", "5"),
        ("f", "1", "3"), ("g", "1", "3"), ("h", "5", "2"), ("i", "3", "5")])
    M = bicircular(G)
    assert M.is_connected()
    E, C = G.edge_names, {"e", "h", "i"}
    H = [x for x in E if x not in C]
    # independent of the matroid code: rank by the graph formula
    assert bicircular_rank(G, H) == bicircular_rank(G, E) - 1
    assert all(bicircular_rank(G, H + [x]) == bicircular_rank(G, E) for x in C)
    D = M.restrict_mask(M.full ^ M.mask(sorted(C)))
    sizes = sorted(popcount(p) for p in D.component_masks())
    assert sizes == [2, 4]
    n, bad = s.cocircuit_deletion_has_one_big_component([G])
    assert len(bad) == 1


def test_clones_are_parallel_pairs(dense_graphs):
    no_counterexample(s.clones_are_parallel_pairs(dense_graphs), 100)


def test_nonseparating_cocircuits_are_stars(all_graphs):
    no_counterexample(s.nonseparating_cocircuits_are_stars(all_graphs), 100)


def test_nonseparating_cocircuit_that_is_no_star():
    # two vertices: loops a, b at u, loops c, d at v, link e.  Deleting
    # {a, b, c, d} leaves the single element e, which is connected.
    G = Multigraph(["u", "v"], [("a", "u", "u"), ("b", "u", "u"), ("c", "v", "v"),
                                ("d", "v", "v"), ("e", "u", "v")])
    M = bicircular(G)
    assert M.is_connected()
    assert is_nonseparating_cocircuit(M, ["a", "b", "c", "d"])
    assert frozenset("abcd") not in {G.star(v) for v in G.vertices}


def test_committed_matches_graph_criterion(all_graphs):
    no_counterexample(s.committed_matches_graph_criterion(all_graphs), 100)


def test_at_most_three_uncommitted(dense_graphs):
    no_counterexample(s.few_uncommitted_vertices(dense_graphs), 3)


def test_good_cocircuits_are_stars(dense_graphs):
    no_counterexample(s.good_cocircuits_are_stars(dense_graphs), 20)


def test_wedges_at_series_parallel_nodes(connected_pool):
    ms = [M for M in connected_pool if M.n >= 2]
    ms += s.chained_sums(random.Random(4), 40) + [double_u24(), degree3_example()]
    no_counterexample(s.wedges_at_series_parallel_nodes(ms), 50)


def test_loop_and_link_sums_are_two_sums():
    no_counterexample(s.sums_are_two_sums(s.sum_pairs()), 50)


def test_two_separations_meet_in_vertex_or_path(all_graphs):
    no_counterexample(s.two_separations_meet_in_a_vertex_or_path(all_graphs), 50)


def test_rank_formula_on_enumerated_graphs(small_corpus):
    for G in small_corpus:
        M = fast_bicircular(G)
        for x in range(1 << M.n):
            assert M.r(x) == bicircular_rank(G, M.names(x))
