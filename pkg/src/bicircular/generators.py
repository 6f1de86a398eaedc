"""Named matroids, random matroids and graph corpora for tests and the CLI."""

from __future__ import annotations

import random
from itertools import combinations, permutations

from .graphs import Multigraph, bicircular, enumerate_graphs, fast_bicircular
from .matroid import Matroid, default_names, direct_sum, popcount, two_sum, uniform

FANO_LINES = ["abc", "ade", "afg", "bdf", "beg", "cdg", "cef"]


def fano() -> Matroid:
    """F7 on a..g: the lines are the 3-circuits."""
    circ = [set(x) for x in FANO_LINES] + [set("abcdefg") - set(x) for x in FANO_LINES]
    return Matroid.from_circuits(list("abcdefg"), circ)


def fano_dual() -> Matroid:
    return fano().dual()


def double_u24() -> Matroid:
    """U2,4 on {a,b,c,e} 2-summed with U2,4 on {e,d,f,g} along e."""
    return two_sum(uniform(2, 4, list("abce")), uniform(2, 4, list("edfg")), "e")


def degree3_example() -> Matroid:
    """A triangle (U2,3 on p,q,r) with a U2,4 2-summed onto each element.
    Nine elements, rank 5; its tree has a circuit node of degree 3."""
    M = uniform(2, 3, ["p", "q", "r"])
    for bp in "pqr":
        M = two_sum(M, uniform(2, 4, [bp] + [f"{bp}{j}" for j in range(1, 4)]), bp)
    return M


def theta_graph(k=3) -> Multigraph:
    """k parallel edges on two vertices; theta3 gives U2,3."""
    names = default_names(k)
    return Multigraph(["u", "v"], [(x, "u", "v") for x in names])


def wheel(k, doubled_spokes=()) -> Multigraph:
    """Hub h and rim 1..k; spokes s1..sk, rim edges r1..rk."""
    rim = [str(i) for i in range(1, k + 1)]
    es = [(f"s{i + 1}", "h", rim[i]) for i in range(k)]
    es += [(f"r{i + 1}", rim[i], rim[(i + 1) % k]) for i in range(k)]
    es += [(f"t{i}", "h", rim[i - 1]) for i in doubled_spokes]
    return Multigraph(["h"] + rim, es)


def complete_graph(n) -> Multigraph:
    vs = [str(i) for i in range(1, n + 1)]
    es = []
    for k, (a, b) in enumerate(combinations(vs, 2)):
        es.append((default_names(n * (n - 1) // 2)[k], a, b))
    return Multigraph(vs, es)


# ---------------------------------------------------------------------
# vector matroids over a prime field


def _rank_mod_p(vectors, p):
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def vector_matroid(columns, p=2, names=None) -> Matroid:
    """Column matroid of integer vectors over GF(p)."""
    n = len(columns)
    names = list(names) if names is not None else default_names(n)
    ind = []
    for m in range(1 << n):
        vs = [columns[i] for i in range(n) if m >> i & 1]
        if _rank_mod_p(vs, p) == len(vs):
            ind.append(m)
    return Matroid(names, ind, check=False)


def random_vector_matroid(rng, rank, n, p=2, names=None) -> Matroid:
    cols = [[rng.randrange(p) for _ in range(rank)] for _ in range(n)]
    return vector_matroid(cols, p, names)


def sparse_paving(rng, rank, n, tries=None, names=None) -> Matroid:
    """Random sparse paving matroid: some rank-sized sets are circuit-
    hyperplanes, any two meeting in at most rank - 2 elements."""
    names = list(names) if names is not None else default_names(n)
    sets = list(combinations(range(n), rank))
    rng.shuffle(sets)
    chosen = []
    for s in sets[: tries if tries is not None else len(sets)]:
        if all(len(set(s) & set(t)) <= rank - 2 for t in chosen) and rng.random() < 0.5:
            chosen.append(s)
    bad = {sum(1 << i for i in s) for s in chosen}
    ind = [m for m in range(1 << n) if popcount(m) < rank or (popcount(m) == rank and m not in bad)]
    return Matroid(names, ind, check=False)


def random_graph(rng, nv, ne, loops=True, names=None) -> Multigraph:
    names = list(names) if names is not None else default_names(ne)
    vs = [str(i) for i in range(1, nv + 1)]
    es = []
    for x in names:
        a = rng.choice(vs)
        b = a if loops and rng.random() < 0.2 else rng.choice(vs)
        es.append((x, a, b))
    return Multigraph(vs, es)


# ---------------------------------------------------------------------
# graph corpora


def graph_key(G: Multigraph):
    """Isomorphism-class key (vertex permutations, edge names ignored)."""
    vs = list(G.vertices)
    best = None
    for perm in permutations(range(len(vs))):
        pos = {v: perm[i] for i, v in enumerate(vs)}
        k = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for _, a, b in G.edges))
        if best is None or k < best:
            best = k
    return (len(vs), best)


def small_graphs(max_vertices=3, max_edges=5, dedup=True):
    """Every multigraph (loops allowed) on 1..max_vertices labelled vertices
    with up to max_edges edges named a, b, c, ...; one per isomorphism class
    when dedup is set."""
    seen = set()
    for nv in range(1, max_vertices + 1):
        for ne in range(max_edges + 1):
            for G in enumerate_graphs(default_names(ne), nv):
                if dedup:
                    k = graph_key(G)
                    if k in seen:
                        continue
                    seen.add(k)
                yield G


def named_graphs():
    """Hand-picked graphs with five or more vertices."""
    out = {
        "wheel4": wheel(4),
        "wheel4_doubled": wheel(4, doubled_spokes=[1]),
        "wheel5": wheel(5),
        "k5": complete_graph(5),
    }
    prism = Multigraph([str(i) for i in range(1, 7)], [
        ("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"), ("d", "4", "5"), ("e", "5", "6"),
        ("f", "6", "4"), ("g", "1", "4"), ("h", "2", "5"), ("i", "3", "6")])
    out["prism"] = prism
    k33 = Multigraph([str(i) for i in range(1, 7)], [
        (default_names(9)[3 * i + j], str(i + 1), str(j + 4)) for i in range(3) for j in range(3)])
    out["k33"] = k33
    # wheel with a loop on one rim vertex and a doubled rim edge
    W = wheel(4)
    out["wheel4_loop"] = Multigraph(W.vertices, list(W.edges) + [("x", "1", "1")])
    out["wheel4_parallel"] = Multigraph(W.vertices, list(W.edges) + [("y", "1", "2")])
    return out


def medium_graphs(rng, count=40, nv=(4, 6), ne=(6, 10)):
    """Random connected graphs with a few more vertices."""
    out = []
    while len(out) < count:
        G = random_graph(rng, rng.randint(*nv), rng.randint(*ne))
        if G.is_connected():
            out.append(G)
    return out


# ---------------------------------------------------------------------
# random matroid pool


def random_matroid(rng, max_rank=3, max_n=7) -> Matroid:
    """One of: bicircular matroid of a random small graph, binary or
    ternary vector matroid, sparse paving, uniform, or a sum of two."""
    kind = rng.randrange(6)
    n = rng.randint(min(3, max_n), max_n)
    r = rng.randint(1, min(max_rank, n))
    if n < 2:
        kind = 4
    if kind == 0:
        G = random_graph(rng, r, n)
        M = fast_bicircular(G)
        if M.rank() <= max_rank:
            return M
        return random_matroid(rng, max_rank, max_n)
    if kind == 1:
        return random_vector_matroid(rng, r, n, 2)
    if kind == 2:
        return random_vector_matroid(rng, r, n, 3)
    if kind == 3 and r >= 2:
        return sparse_paving(rng, r, n)
    if kind == 4:
        return uniform(rng.randint(0, r) if n == 1 else r, n)
    k = rng.randint(1, n - 1)
    M1 = random_matroid(rng, max_rank, k)
    M2 = random_matroid(rng, max_rank, max(1, n - k))
    if M1.rank() + M2.rank() > max_rank or M1.n + M2.n > max_n:
        return random_matroid(rng, max_rank, max_n)
    names = default_names(M1.n + M2.n)
    return direct_sum(M1.relabel(dict(zip(M1.elements, names[:M1.n]))),
                      M2.relabel(dict(zip(M2.elements, names[M1.n:]))))


def matroid_pool(count=200, seed=0, max_rank=3, max_n=7):
    """F7, its dual, then random matroids until half the pool is
    bicircular and half is not (sorted into the halves by the structural
    decision; callers compare against the oracle).  Exact duplicates are
    skipped."""
    from .recognition import is_bicircular

    rng = random.Random(seed)
    out = [fano(), fano_dual()]
    seen = set(out)
    want = {True: count // 2, False: count - count // 2}
    for M in out:
        want[is_bicircular(M).bicircular] -= 1
    while want[True] > 0 or want[False] > 0:
        if want[False] > 0 and rng.random() < 0.5:
            M = sparse_paving(rng, min(3, max_rank), rng.randint(5, max_n))
            if rng.random() < 0.3 and M.n < max_n:
                # add a small direct summand now and then
                extra = uniform(rng.randint(0, 1), 1, ["z"])
                if M.rank() + extra.rank() <= max_rank:
                    M = direct_sum(M, extra)
        else:
            M = random_matroid(rng, max_rank, max_n)
        if M in seen:
            continue
        b = is_bicircular(M).bicircular
        if want[b] > 0:
            want[b] -= 1
            out.append(M)
            seen.add(M)
    return out


__all__ = [
    "fano", "fano_dual", "double_u24", "degree3_example", "theta_graph", "wheel",
    "complete_graph", "vector_matroid", "random_vector_matroid", "sparse_paving",
    "random_graph", "graph_key", "small_graphs", "named_graphs", "medium_graphs",
    "random_matroid", "matroid_pool",
]
