import random

import pytest

from bicircular.decomposition import (adjacent_component, all_two_separations, canonical_tree,
                                      check_transduction, degree3_circuit_node_criterion,
                                      degree3_circuit_node_native, displayed,
                                      displayed_two_separations, good_separation,
                                      good_separations, has_degree3_circuit_node, transduce,
                                      trees_isomorphic)
from bicircular.errors import PreconditionError
from bicircular.generators import degree3_example, double_u24, random_matroid
from bicircular.graphs import fast_bicircular
from bicircular.matroid import check_matroid, direct_sum, isomorphism, two_sum, uniform, wedges

from structural import chained_sums


@pytest.fixture(scope="module")
def tree_corpus(connected_pool, big_corpus):
    out = [M for M in connected_pool if M.n >= 2]
    for G in big_corpus:
        M = fast_bicircular(G)
        if M.is_connected() and M.n <= 10:
            out.append(M)
    out += chained_sums(random.Random(4), 40)
    out += [double_u24(), degree3_example()]
    return out


# --- examples -----------------------------------------------------------


def test_tree_examples():
    T = canonical_tree(uniform(3, 4))
    assert [T.kind(i) for i in T.node_ids()] == ["circuit"] and not T.edges
    T = canonical_tree(uniform(1, 4))
    assert [T.kind(i) for i in T.node_ids()] == ["cocircuit"]
    T = canonical_tree(uniform(2, 4))
    assert [T.kind(i) for i in T.node_ids()] == ["three_connected"]
    T = canonical_tree(double_u24())
    assert [T.kind(i) for i in T.node_ids()] == ["three_connected"] * 2
    assert len(T.edges) == 1
    (_, _, bp), = T.edges
    assert displayed(T, bp) == [(frozenset("abc"), frozenset("dfg"))]
    with pytest.raises(PreconditionError):
        canonical_tree(direct_sum(uniform(1, 1, ["a"]), uniform(1, 1, ["b"])))


def test_displayed_by_a_node():
    T = canonical_tree(uniform(2, 4))
    assert T.edges == []
    # a circuit with two U2,4 hanging off it: the circuit node has two
    # neighbours and one own element
    M = two_sum(uniform(2, 3, ["p", "q", "r"]), uniform(2, 4, ["p", "a", "b", "c"]), "p")
    M = two_sum(M, uniform(2, 4, ["q", "d", "f", "g"]), "q")
    T = canonical_tree(M)
    (circ,) = [i for i in T.node_ids() if T.kind(i) == "circuit"]
    parts = displayed(T, circ)
    # parts {a,b,c}, {d,f,g}, {r}: 2^3 / 2 - 1 = 3 partitions
    assert len(parts) == 3
    assert (frozenset("abc"), frozenset("dfgr")) in parts


def test_good_separation_examples():
    M = double_u24()
    assert good_separation(M, ["a", "b", "c"])
    assert good_separation(M, ["d", "f", "g"])
    assert not good_separation(uniform(3, 4), ["a", "b"])
    assert not good_separation(M, [])
    assert good_separations(M) == [frozenset("abc"), frozenset("dfg")]


def test_degree3_examples():
    assert has_degree3_circuit_node(degree3_example())
    assert not has_degree3_circuit_node(double_u24())
    assert not has_degree3_circuit_node(uniform(2, 4))


def test_transduce_example():
    M = double_u24()
    R = transduce(M, ["a", "b", "c"])
    assert R.blocks == [frozenset("abc"), frozenset("d"), frozenset("f"), frozenset("g")]
    S = R.set_system()
    assert check_matroid(S)
    assert isomorphism(uniform(2, 4), S) is not None
    T = canonical_tree(M)
    (_, _, bp), = T.edges
    assert R.sigma[bp] == 0
    R2 = transduce(M, ["d", "f", "g"])
    assert R2.blocks == [frozenset("dfg"), frozenset("a"), frozenset("b"), frozenset("c")]
    with pytest.raises(PreconditionError):
        transduce(uniform(3, 4), ["a", "b"])


# --- properties ---------------------------------------------------------


def test_recomposition(tree_corpus):
    for M in tree_corpus:
        T = canonical_tree(M)
        T.validate()
        assert T.recompose() == M


def test_uniqueness_across_split_orders(tree_corpus):
    rng = random.Random(1)
    sample = rng.sample(tree_corpus, 50)
    for M in sample:
        T0 = canonical_tree(M)
        for _ in range(5):
            T = canonical_tree(M, rng=rng)
            assert trees_isomorphic(T, T0)


def test_displayed_separations_are_all_two_separations(tree_corpus):
    for M in tree_corpus:
        assert displayed_two_separations(canonical_tree(M)) == all_two_separations(M)


def test_wedges_at_series_and_parallel_nodes(tree_corpus):
    checked = 0
    for M in tree_corpus:
        T = canonical_tree(M)
        for nid in T.node_ids():
            if T.kind(nid) not in ("circuit", "cocircuit"):
                continue
            for A, B in displayed(T, nid):
                for a, b in ((A, B), (B, A)):
                    # subtrees T_i on the b side, and own elements of N in b
                    subtrees = [T.side(y, nid) for y, _ in T.neighbors(nid)]
                    subtrees = [s for s in subtrees if s <= b]
                    own = [x for x in T.own_elements(nid) if x in b]
                    if len(subtrees) + len(own) < 2 or len(a) < 2 or len(b) < 2:
                        continue
                    want = {b - s for s in subtrees} | {b - {x} for x in own}
                    got = {frozenset(w) for w in wedges(M, a)}
                    assert got == want
                    checked += 1
    assert checked > 50


def test_good_separation_iff_next_to_3connected_node(tree_corpus):
    for M in tree_corpus:
        T = canonical_tree(M)
        for A, B in all_two_separations(M):
            for side in (A, B):
                assert good_separation(M, side) == (adjacent_component(T, side) is not None)


def test_degree3_implementations_agree(tree_corpus):
    hits = 0
    for M in tree_corpus:
        T = canonical_tree(M)
        native = degree3_circuit_node_native(M, T) is not None
        crit = degree3_circuit_node_criterion(M) is not None
        assert native == crit
        hits += native
    assert hits >= 1


def test_transduction_is_the_adjacent_node(tree_corpus):
    count = 0
    for M in tree_corpus:
        T = canonical_tree(M)
        for A in good_separations(M):
            N, R = check_transduction(M, A, T)
            assert check_matroid(R.set_system())
            assert len(R.blocks) == N.n
            count += 1
    assert count > 20


def test_random_matroids_recompose():
    rng = random.Random(9)
    for _ in range(40):
        M = random_matroid(rng, 4, 7)
        for c in M.component_masks():
            C = M.restrict_mask(c)
            assert canonical_tree(C).recompose() == C
