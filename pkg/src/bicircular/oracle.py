"""Brute-force search for a graph whose bicircular matroid is a given M.

The search places the edges (elements in sorted-name order) one at a time on
unordered vertex pairs of 1..r(M), in lexicographic order.  Two things keep
it tractable without changing the first witness found:

* vertex labels are introduced in increasing order (any witness can be
  relabelled to do so, and the relabelled one is never lexicographically
  larger), and
* after placing element k we check the circuits of M whose last element is
  k (they must not be pseudoforests) and the bases of the placed prefix that
  contain k (they must be pseudoforests).  Those two checks together force
  the placed prefix to have exactly M's independent sets.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .graphs import Multigraph, count_graphs, enumerate_graphs, fast_bicircular, vertex_pairs
from .matroid import Matroid, bits, popcount


@dataclass
class OracleResult:
    graph: Multigraph | None
    searched: int  # size of the nominal search space, summed over components
    nodes: int = 0  # search-tree nodes actually visited
    per_component: list = field(default_factory=list)


def _pseudo(ea, eb, m):
    """Is the edge set m (over placed ends ea/eb) a pseudoforest?"""
    parent = {}
    cyc = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    while m:
        low = m & -m
        i = low.bit_length() - 1
        m ^= low
        ra, rb = find(ea[i]), find(eb[i])
        if ra == rb:
            if cyc.get(ra):
                return False
            cyc[ra] = True
        else:
            ca, cb = cyc.get(ra, False), cyc.get(rb, False)
            if ca and cb:
                return False
            parent[ra] = rb
            cyc[rb] = ca or cb
    return True


def _prepare(M: Matroid, order):
    """Remap M to the element order, collect per-step pruning sets."""
    pos = [M.index[e] for e in order]
    n = len(order)

    def remap(m):
        return sum(1 << k for k in range(n) if m >> pos[k] & 1)

    circ = [[] for _ in range(n)]
    for c in M.circuit_masks():
        c2 = remap(c)
        circ[c2.bit_length() - 1].append(c2)
    ind = [remap(m) for m in M.independent]
    basis = [[] for _ in range(n)]
    for k in range(n):
        pref = (1 << (k + 1)) - 1
        rk = max(popcount(m) for m in ind if m & ~pref == 0)
        top = 1 << k
        basis[k] = [m for m in ind if m & ~pref == 0 and m & top and popcount(m) == rk]
    return circ, basis


def _dfs(n, nv, circ, basis, loop_only, start, limit_nodes=None):
    """Depth-first search; ``start`` is a list of fixed leading pair indices."""
    pairs = vertex_pairs(nv)
    ea = [0] * n
    eb = [0] * n
    choice = [0] * n
    nodes = 0

    def ok(k):
        for c in circ[k]:
            if _pseudo(ea, eb, c):
                return False
        for b in basis[k]:
            if not _pseudo(ea, eb, b):
                return False
        return True

    def cands(k, t):
        # labels must first appear in increasing order: t+1, then t+2
        for pi, (a, b) in enumerate(pairs):
            if a > t + 1:
                break
            if loop_only[k] and a != b:
                continue
            if a <= t:
                if b > t + 1:
                    continue
            elif b > t + 2:
                continue
            nt = max(t, b)
            # every vertex must end up used
            if nv - nt > 2 * (n - k - 1):
                continue
            yield pi, a, b, nt

    def go(k, t):
        nonlocal nodes
        if k == n:
            return t == nv
        it = cands(k, t)
        if k < len(start):
            want = start[k]
            it = [c for c in it if c[0] == want]
        for pi, a, b, nt in it:
            nodes += 1
            ea[k], eb[k] = a, b
            choice[k] = pi
            if ok(k) and go(k + 1, nt):
                return True
        return False

    found = go(0, 0)
    if found:
        return [pairs[c] for c in choice], nodes
    return None, nodes


def _worker(args):
    return _dfs(*args)


def _search_connected(M: Matroid, L, jobs=1):
    order = sorted(M.elements)
    n = len(order)
    nv = M.rank()
    circ, basis = _prepare(M, order)
    loop_only = [e in L for e in order]
    if jobs > 1 and n >= 2:
        # split by the placement of the first two elements; the least prefix
        # with a witness gives the global first witness
        pairs = vertex_pairs(nv)
        prefixes = [[i, j] for i in range(len(pairs)) for j in range(len(pairs))]
        tasks = [(n, nv, circ, basis, loop_only, p) for p in prefixes]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_worker, tasks))
        nodes = sum(r[1] for r in results)
        for r, _ in results:
            if r is not None:
                return _to_graph(order, nv, r), nodes
        return None, nodes
    res, nodes = _dfs(n, nv, circ, basis, loop_only, [])
    if res is None:
        return None, nodes
    return _to_graph(order, nv, res), nodes


def _to_graph(order, nv, placement):
    verts = [str(i) for i in range(1, nv + 1)]
    return Multigraph(verts, [(e, str(a), str(b)) for e, (a, b) in zip(order, placement)])


def _verify(G: Multigraph, M: Matroid) -> bool:
    return fast_bicircular(G) == M


def oracle_search(M: Matroid, L=(), jobs=1) -> OracleResult:
    """Search component by component.  None if M has a matroid loop (no
    graph edge is ever a loop of B(G)) or some component has no graph."""
    L = set(L)
    if any(M.is_loop(e) for e in M.elements):
        return OracleResult(None, 0)
    comps = M.component_masks()
    graphs = []
    searched = 0
    nodes = 0
    for c in comps:
        C = M.restrict_mask(c)
        if C.n == 1:
            e = C.elements[0]
            if e in L:
                G = Multigraph(["1"], [(e, "1", "1")])
            else:
                G = Multigraph(["1", "2"], [(e, "1", "2")])
            searched += 1
        else:
            G, k = _search_connected(C, L & set(C.elements), jobs)
            searched += count_graphs(C.n, C.rank())
            nodes += k
        graphs.append(G)
        if G is None:
            return OracleResult(None, searched, nodes, graphs)
        if not _verify(G, C):
            from .errors import DefectError
            raise DefectError("oracle produced a graph that does not represent its component")
    if len(graphs) == 1:
        return OracleResult(graphs[0], searched, nodes, graphs)
    # number the vertices of the pieces consecutively
    verts, edges, off = [], [], 0
    for G in graphs:
        mp = {v: str(off + i + 1) for i, v in enumerate(G.vertices)}
        verts += [mp[v] for v in G.vertices]
        edges += [(n, mp[a], mp[b]) for n, a, b in G.edges]
        off += len(G.vertices)
    return OracleResult(Multigraph(verts, edges), searched, nodes, graphs)


def oracle_find_representation(M: Matroid, L=(), jobs=1) -> Multigraph | None:
    return oracle_search(M, L, jobs).graph


def reference_find_representation(M: Matroid, L=()) -> Multigraph | None:
    """Unpruned scan of every placement on r(M) vertices.  Connected,
    loopless M with at least two elements only; tiny inputs only."""
    L = set(L)
    order = sorted(M.elements)
    for G in enumerate_graphs(order, M.rank()):
        if any(not G.is_loop(e) for e in L):
            continue
        if _verify(G, M):
            return G
    return None


def oracle_decide(M: Matroid, jobs=1):
    """Bicircular or not, by search.  Matroid loops are fine here: a
    bicircular matroid may carry a rank-zero direct summand."""
    loops = sum(1 << i for i in range(M.n) if M.r(1 << i) == 0)
    core = M.restrict_mask(M.full ^ loops)
    res = oracle_search(core, (), jobs)
    return res.graph is not None, res
