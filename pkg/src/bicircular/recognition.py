"""Deciding bicircularity from the decomposition tree.

A connected matroid is bicircular iff no circuit node of its canonical tree
has degree three or more, and every 3-connected node N is bicircular with
the basepoints that do not lead to a leaf circuit node as loops.  The
3-connected rooted test tries, in order: the graph whose vertex stars are
the good cocircuits; the non-separating cocircuits plus up to three more
vertex sets; an exhaustive search over graphs on at most four vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .decomposition import DecompositionTree, canonical_tree
from .errors import DefectError, PreconditionError
from .graphs import Multigraph, fast_bicircular, link_sum, loop_sum
from .matroid import Matroid, bits, good_cocircuit_mask, separation_masks, submasks
from .oracle import oracle_search


# ---------------------------------------------------------------------
# graphs from families of vertex stars


def family_graph(N: Matroid, family):
    """G(F): one vertex per member of F, each element joining the members
    that contain it (a loop if only one).  None unless every element lies
    in one or two members."""
    family = list(family)
    where = [[] for _ in range(N.n)]
    for k, f in enumerate(family):
        for i in bits(f):
            where[i].append(k)
    edges = []
    for i, w in enumerate(where):
        if len(w) == 1:
            edges.append((N.elements[i], str(w[0] + 1), str(w[0] + 1)))
        elif len(w) == 2:
            edges.append((N.elements[i], str(w[0] + 1), str(w[1] + 1)))
        else:
            return None
    return Multigraph([str(k + 1) for k in range(len(family))], edges)


def _represents(G, N: Matroid, L) -> bool:
    if G is None:
        return False
    if any(not G.is_loop(e) for e in L):
        return False
    return fast_bicircular(G) == N


def good_cocircuit_masks(N: Matroid):
    return [c for c in N.cocircuit_masks() if good_cocircuit_mask(N, c)]


def nonsep_cocircuit_masks(N: Matroid):
    return [c for c in N.cocircuit_masks() if N.restrict_mask(N.full ^ c).is_connected()]


def _extend(N: Matroid, base, L, extra):
    """Depth-first over exactly ``extra`` further vertex sets, in increasing
    mask order, keeping every element in at most two sets.  The final set
    has to cover whatever is still uncovered."""
    count = [0] * N.n
    for f in base:
        for i in bits(f):
            count[i] += 1
    if any(c > 2 for c in count):
        return None
    taken = set(base)
    n = N.n
    chosen = []
    rk = N.rank_table
    full = N.full
    r = rk[full]

    def star_ok(x):
        # G - v has one vertex fewer, G - u - v two fewer
        if rk[full & ~x] > r - 1:
            return False
        return all(rk[full & ~(x | y)] <= r - 2 for y in list(base) + chosen)

    def go(start, left):
        need = sum(1 << i for i in range(n) if count[i] == 0)
        if left == 0:
            if need:
                return None
            G = family_graph(N, list(base) + chosen)
            return G if _represents(G, N, L) else None
        room = sum(1 << i for i in range(n) if count[i] < 2)
        if left == 1:
            cands = sorted(need | s for s in submasks(room & ~need))
        else:
            cands = sorted(submasks(room))
        for x in cands:
            if x < start or x == 0 or x in taken or not star_ok(x):
                continue
            for i in bits(x):
                count[i] += 1
            chosen.append(x)
            got = go(x + 1, left - 1)
            chosen.pop()
            for i in bits(x):
                count[i] -= 1
            if got is not None:
                return got
        return None

    return go(1, extra)


def _check_3conn(N: Matroid):
    if N.n < 4 or not N.is_connected() or separation_masks(N, 2):
        raise PreconditionError("rooted_bicircular_3conn needs a 3-connected matroid")
    if N.rank() < 2 or N.corank() < 2:
        raise PreconditionError("rooted_bicircular_3conn needs rank and corank at least 2")


@dataclass
class RootedResult:
    graph: Multigraph | None
    case: str | None  # "iii", "ii", "i"


def rooted_bicircular_3conn(N: Matroid, L=(), detail=False):
    """A graph G with B(G) = N and every element of L a loop, or None."""
    _check_3conn(N)
    L = sorted(set(L))
    N.mask(L)  # unknown names raise
    res = RootedResult(None, None)
    # (iii) the good cocircuits are exactly the vertex stars
    G = family_graph(N, good_cocircuit_masks(N))
    if _represents(G, N, L):
        res = RootedResult(G, "iii")
    else:
        # (ii) committed vertices are the non-separating cocircuits; at most
        # three more vertices
        # every representation has exactly r(N) non-isolated vertices
        F = nonsep_cocircuit_masks(N)
        extra = N.rank() - len(F)
        G = _extend(N, F, L, extra) if 0 <= extra <= 3 else None
        if G is not None:
            res = RootedResult(G, "ii")
        elif N.rank() <= 4:
            # (i) few vertices: search them all
            G = oracle_search(N, L).graph
            if G is not None:
                res = RootedResult(G, "i")
    if res.graph is not None and not _represents(res.graph, N, L):
        raise DefectError("rooted representation does not recompute")
    return res if detail else res.graph


# ---------------------------------------------------------------------
# the decision procedure


@dataclass
class ComponentVerdict:
    elements: list
    bicircular: bool
    graph: Multigraph | None = None  # None for a matroid loop, or on failure
    reason: str = ""
    tree: DecompositionTree | None = None


@dataclass
class Verdict:
    bicircular: bool
    components: list = field(default_factory=list)
    witness: Multigraph | None = None
    reason: str = ""

    def __bool__(self):
        return self.bicircular


def _circuit_graph(names, loops, prefix):
    """B(G) is a circuit on names; the listed (at most two) names are loops:
    two loops joined by a path, or a cycle with one loop hung on it."""
    names = list(names)
    loops = list(loops)
    if len(loops) == 2:
        path = [x for x in names if x not in loops]
        vs = [f"{prefix}{i}" for i in range(len(path) + 1)]
        es = [(loops[0], vs[0], vs[0])]
        es += [(path[i], vs[i], vs[i + 1]) for i in range(len(path))]
        es.append((loops[1], vs[-1], vs[-1]))
        return Multigraph(vs, es)
    if len(loops) == 1:
        ring = [x for x in names if x != loops[0]]
        G = _cycle(ring, prefix)
        v0 = min(G.vertices)
        return Multigraph(G.vertices, list(G.edges) + [(loops[0], v0, v0)])
    return _circuit_graph(names, sorted(names)[:2], prefix)


def _cycle(names, prefix):
    k = len(names)
    vs = [f"{prefix}{i}" for i in range(k)]
    return Multigraph(vs, [(names[i], vs[i], vs[(i + 1) % k]) for i in range(k)])


def _bouquet(names, prefix):
    v = f"{prefix}0"
    return Multigraph([v], [(x, v, v) for x in names])


def _renumber(G: Multigraph) -> Multigraph:
    mp = {v: str(i + 1) for i, v in enumerate(G.vertices)}
    return G.relabel_vertices(mp)


def _decide_connected(C: Matroid) -> ComponentVerdict:
    els = sorted(C.elements)
    if C.n == 1:
        if C.rank() == 0:
            return ComponentVerdict(els, True, None, "matroid loop: rank-zero summand")
        e = C.elements[0]
        return ComponentVerdict(els, True, Multigraph(["1", "2"], [(e, "1", "2")]))
    T = canonical_tree(C)
    for nid in T.node_ids():
        if T.kind(nid) == "circuit" and T.degree(nid) >= 3:
            return ComponentVerdict(els, False, None, f"circuit node of degree {T.degree(nid)}", T)
    leaf_circuit = {nid for nid in T.node_ids() if T.kind(nid) == "circuit" and T.degree(nid) == 1}
    graphs = {}
    for nid in T.node_ids():
        if nid in leaf_circuit:
            continue
        N, kind = T.nodes[nid]
        loops = sorted(bp for y, bp in T.neighbors(nid) if y not in leaf_circuit)
        prefix = f"n{nid}_"
        if kind == "three_connected":
            G = rooted_bicircular_3conn(N, loops)
            if G is None:
                names = ",".join(sorted(T.own_elements(nid)))
                return ComponentVerdict(els, False, None,
                                        f"3-connected component {{{names}}} is not bicircular "
                                        f"with {len(loops)} basepoint(s) as loops", T)
            G = G.relabel_vertices({v: prefix + v for v in G.vertices})
        elif kind == "cocircuit":
            G = _bouquet(N.elements, prefix)
        else:
            G = _circuit_graph(N.elements, loops, prefix)
        graphs[nid] = G
    for nid in leaf_circuit:
        (other, bp), = T.neighbors(nid)
        N = T.matroid(nid)
        prefix = f"n{nid}_"
        if graphs[other].is_loop(bp):
            ring = [x for x in N.elements if x != bp]
            G = _cycle(ring, prefix)
            v0 = G.vertices[0]
            graphs[nid] = Multigraph(G.vertices, list(G.edges) + [(bp, v0, v0)])
        else:
            graphs[nid] = _cycle(list(N.elements), prefix)
    # glue along the tree, leaf circuits last so they always meet a finished side
    root = min(set(T.node_ids()) - leaf_circuit)
    G = graphs[root]
    seen = {root}
    frontier = [root]
    while frontier:
        x = frontier.pop(0)
        for y, bp in sorted(T.neighbors(x)):
            if y in seen:
                continue
            seen.add(y)
            H = graphs[y]
            if y in leaf_circuit and not H.is_loop(bp):
                G = link_sum(G, H, bp)
            else:
                G = loop_sum(G, H, bp)
            frontier.append(y)
    G = _renumber(G)
    if fast_bicircular(G) != C:
        raise DefectError("assembled witness does not represent the component")
    return ComponentVerdict(els, True, G, "", T)


def is_bicircular(M: Matroid) -> Verdict:
    """Structural decision, component by component, with a witness graph
    (for everything but matroid loops) checked by recomputing B(G)."""
    comps = []
    for c in M.component_masks():
        comps.append(_decide_connected(M.restrict_mask(c)))
    bad = [v for v in comps if not v.bicircular]
    if bad:
        v = bad[0]
        return Verdict(False, comps, None, v.reason)
    pieces = [v.graph for v in comps if v.graph is not None]
    verts, edges, off = [], [], 0
    for H in pieces:
        mp = {v: str(off + i + 1) for i, v in enumerate(H.vertices)}
        verts += [mp[v] for v in H.vertices]
        edges += [(n, mp[a], mp[b]) for n, a, b in H.edges]
        off += len(H.vertices)
    W = Multigraph(verts, edges)
    loops = sum(1 << i for i in range(M.n) if M.r(1 << i) == 0)
    if fast_bicircular(W) != M.restrict_mask(M.full ^ loops):
        raise DefectError("witness does not represent M minus its loops")
    return Verdict(True, comps, W, "")


def decide_both(M: Matroid, jobs=1):
    """Structural and oracle decisions side by side: (verdict, oracle_yes, searched)."""
    from .oracle import oracle_decide
    v = is_bicircular(M)
    yes, res = oracle_decide(M, jobs)
    return v, yes, res.searched


__all__ = ["rooted_bicircular_3conn", "is_bicircular", "Verdict", "ComponentVerdict",
           "family_graph", "good_cocircuit_masks", "nonsep_cocircuit_masks", "decide_both"]
