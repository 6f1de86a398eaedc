import random

from bicircular.generators import fano, random_graph, random_matroid, theta_graph
from bicircular.graphs import fast_bicircular
from bicircular.matroid import direct_sum, uniform
from bicircular.oracle import (oracle_decide, oracle_find_representation, oracle_search,
                               reference_find_representation)


def test_u24_first_witness():
    # the lexicographically first placement puts a on the pair (1,1), which
    # still represents U2,4; four parallel edges is a later witness
    G = oracle_find_representation(uniform(2, 4))
    assert len(G.vertices) == 2
    assert [G.ends[e] for e in "abcd"] == [("1", "1"), ("1", "2"), ("1", "2"), ("1", "2")]
    assert fast_bicircular(G) == uniform(2, 4)
    assert fast_bicircular(theta_graph(4)) == uniform(2, 4)


def test_fano_has_no_graph():
    res = oracle_search(fano())
    assert res.graph is None
    assert res.searched == 6 ** 7


def test_u24_with_three_forced_loops():
    assert oracle_find_representation(uniform(2, 4), ["a", "b", "c"]) is None
    G = oracle_find_representation(uniform(2, 4), ["a"])
    assert G.is_loop("a") and fast_bicircular(G) == uniform(2, 4)


def test_matroid_loops_are_stripped_by_decide():
    M = direct_sum(uniform(0, 1, ["z"]), uniform(2, 3, ["a", "b", "c"]))
    assert oracle_search(M).graph is None
    yes, res = oracle_decide(M)
    assert yes and fast_bicircular(res.graph) == uniform(2, 3, ["a", "b", "c"])


def test_pruning_keeps_the_first_witness():
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        if rng.random() < 0.5:
            M = fast_bicircular(random_graph(rng, rng.randint(2, 3), rng.randint(2, 5)))
        else:
            M = random_matroid(rng, 3, 5)
        if M.n < 2 or not M.is_connected() or any(M.is_loop(e) for e in M.elements):
            continue
        L = [e for e in M.elements if rng.random() < 0.2]
        assert oracle_find_representation(M, L) == reference_find_representation(M, L)
        checked += 1


def test_parallel_jobs_agree():
    M = fast_bicircular(random_graph(random.Random(5), 3, 6))
    if M.is_connected():
        assert oracle_find_representation(M, (), jobs=2) == oracle_find_representation(M)
    assert oracle_search(fano(), jobs=2).graph is None
