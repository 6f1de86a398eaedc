"""Multigraphs, bicycles and bicircular matroids."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DefectError, MatroidError, PreconditionError
from .matroid import Matroid, bits, minimal_masks, popcount, sort_family


class Multigraph:
    """Labelled vertices and labelled edges; an edge (name, u, u) is a loop."""

    def __init__(self, vertices, edges):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise MatroidError("duplicate vertex names")
        vs = set(self.vertices)
        es = []
        for name, u, v in edges:
            name, u, v = str(name), str(u), str(v)
            if u not in vs or v not in vs:
                raise MatroidError(f"edge {name} has an undeclared endpoint")
            es.append((name, u, v))
        self.edges = tuple(es)
        self.ends = {name: (u, v) for name, u, v in es}
        if len(self.ends) != len(es):
            raise MatroidError("duplicate edge names")

    @property
    def edge_names(self):
        return [e[0] for e in self.edges]

    def is_loop(self, e) -> bool:
        u, v = self.ends[e]
        return u == v

    def vertex_set(self, X) -> set:
        out = set()
        for e in X:
            out.update(self.ends[e])
        return out

    def degree(self, v, X=None) -> int:
        d = 0
        for name, a, b in self.edges:
            if X is not None and name not in X:
                continue
            d += (a == v) + (b == v)
        return d

    def star(self, v) -> frozenset:
        if v not in self.vertices:
            raise MatroidError(f"unknown vertex {v!r}")
        return frozenset(n for n, a, b in self.edges if v in (a, b))

    def delete_vertex(self, v) -> "Multigraph":
        return Multigraph([x for x in self.vertices if x != v],
                          [e for e in self.edges if v not in e[1:]])

    def delete_edges(self, X) -> "Multigraph":
        X = set(X)
        return Multigraph(self.vertices, [e for e in self.edges if e[0] not in X])

    def edge_subgraph(self, X) -> "Multigraph":
        X = set(X)
        es = [e for e in self.edges if e[0] in X]
        vs = set()
        for _, a, b in es:
            vs.update((a, b))
        return Multigraph([v for v in self.vertices if v in vs], es)

    def components(self) -> list:
        """Vertex sets of connected components (isolated vertices included)."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def cycle_rank(self) -> int:
        """|E| - |V| + #components: the number of independent cycles."""
        return len(self.edges) - len(self.vertices) + len(self.components())

    def has_cycle(self) -> bool:
        return self.cycle_rank() > 0

    def is_cycle(self) -> bool:
        """Connected, every vertex of degree two (a single loop counts)."""
        if not self.vertices or not self.is_connected():
            return False
        return all(self.degree(v) == 2 for v in self.vertices)

    def leaves(self) -> list:
        return [v for v in self.vertices if self.degree(v) == 1]

    def has_pendent_edge(self) -> bool:
        return bool(self.leaves())

    def cut_vertices(self) -> list:
        base = len(self.components())
        out = []
        for v in self.vertices:
            H = self.delete_vertex(v)
            if len(H.components()) > base:
                out.append(v)
        return out

    def is_two_connected(self) -> bool:
        """Connected, at least one edge, no cut vertex."""
        return self.is_connected() and bool(self.edges) and not self.cut_vertices()

    def relabel_vertices(self, mapping) -> "Multigraph":
        f = lambda x: mapping.get(x, x)
        return Multigraph([f(v) for v in self.vertices],
                          [(n, f(a), f(b)) for n, a, b in self.edges])

    def key(self):
        vs = tuple(sorted(self.vertices))
        es = tuple(sorted((n,) + tuple(sorted((a, b))) for n, a, b in self.edges))
        return vs, es

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        es = " ".join(f"{n}:{a}{'-' + b if b != a else '@'}" for n, a, b in self.edges)
        return f"Multigraph([{' '.join(self.vertices)}] {es})"


# ---------------------------------------------------------------------
# mask-level statistics; edges indexed by position in G.edges


def _indexed(G: Multigraph):
    vidx = {v: i for i, v in enumerate(G.vertices)}
    return [(vidx[a], vidx[b]) for _, a, b in G.edges], len(G.vertices)


def mask_stats(ends, nv, m):
    """For the edge subset m: (|V(X)|, number of components of G[X],
    number of acyclic components, True if every component has at most
    as many edges as vertices)."""
    parent = list(range(nv))
    used = 0
    for i in bits(m):
        a, b = ends[i]
        used |= (1 << a) | (1 << b)
    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for i in bits(m):
        a, b = ends[i]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    nedges = {}
    nverts = {}
    for v in bits(used):
        r = find(v)
        nverts[r] = nverts.get(r, 0) + 1
    for i in bits(m):
        r = find(ends[i][0])
        nedges[r] = nedges.get(r, 0) + 1
    acyclic = sum(1 for r in nverts if nedges.get(r, 0) == nverts[r] - 1)
    pseudo = all(nedges.get(r, 0) <= nverts[r] for r in nverts)
    return popcount(used), len(nverts), acyclic, pseudo


def is_pseudoforest(G: Multigraph, X) -> bool:
    ends, nv = _indexed(G)
    idx = {n: i for i, n in enumerate(G.edge_names)}
    m = sum(1 << idx[e] for e in X)
    return mask_stats(ends, nv, m)[3]


def bicircular_rank(G: Multigraph, X) -> int:
    """r(X) = |V(X)| - a(X)."""
    ends, nv = _indexed(G)
    idx = {n: i for i, n in enumerate(G.edge_names)}
    m = sum(1 << idx[e] for e in X)
    nvx, _, acyc, _ = mask_stats(ends, nv, m)
    return nvx - acyc


# ---------------------------------------------------------------------
# bicycles


@dataclass(frozen=True)
class Bicycle:
    edges: frozenset
    kind: str  # theta | loose-handcuff | tight-handcuff


def _bicycle_masks(G: Multigraph) -> list[int]:
    """Minimal edge sets whose subgraph is connected with cycle rank >= 2."""
    ends, nv = _indexed(G)
    cands = []
    for m in range(1, 1 << len(ends)):
        nvx, ncomp, _, _ = mask_stats(ends, nv, m)
        if ncomp == 1 and popcount(m) - nvx + 1 >= 2:
            cands.append(m)
    return minimal_masks(cands)


def classify_bicycle(G: Multigraph, X) -> str:
    H = G.edge_subgraph(X)
    if any(H.degree(v) == 4 for v in H.vertices):
        return "tight-handcuff"
    for name, a, b in H.edges:
        if a != b and not H.delete_edges([name]).is_connected():
            return "loose-handcuff"
    return "theta"


def bicycles(G: Multigraph) -> list:
    out = []
    names = G.edge_names
    for m in _bicycle_masks(G):
        X = frozenset(names[i] for i in bits(m))
        out.append(Bicycle(X, classify_bicycle(G, X)))
    order = {s: i for i, s in enumerate(sort_family(b.edges for b in out))}
    out.sort(key=lambda b: order[b.edges])
    return out


def bicircular(G: Multigraph, verify=True) -> Matroid:
    """B(G).  Independence comes from the pseudoforest condition; when
    ``verify`` is set, the circuits are checked against the bicycle
    enumeration and the rank against |V(X)| - a(X)."""
    ends, nv = _indexed(G)
    n = len(ends)
    stats = [mask_stats(ends, nv, m) for m in range(1 << n)]
    ind = [m for m in range(1 << n) if stats[m][3]]
    M = Matroid(G.edge_names, ind, check=False)
    if verify:
        if set(M.circuit_masks()) != set(_bicycle_masks(G)):
            raise DefectError("bicycles differ from the circuits of the pseudoforest matroid")
        rk = M.rank_table
        for m in range(1 << n):
            nvx, _, acyc, _ = stats[m]
            if rk[m] != nvx - acyc:
                raise DefectError(f"rank formula fails on edge set {M.sorted_names(m)}")
    return M


def fast_bicircular(G: Multigraph) -> Matroid:
    return bicircular(G, verify=False)


# ---------------------------------------------------------------------
# vertex stars and connectivity


def vertex_star(G: Multigraph, v) -> frozenset:
    return G.star(v)


def star_is_cocircuit(G: Multigraph, v, M: Matroid | None = None) -> bool:
    """star(v) is a cocircuit of B(G) iff G - v has a cycle (2-connected G).

    The graph-side answer is compared with the cocircuits of B(G)."""
    if v not in G.vertices:
        raise MatroidError(f"unknown vertex {v!r}")
    if len(G.vertices) < 2 or not G.is_two_connected() or not G.has_cycle():
        # a single edge or a bouquet of loops has no cut vertex, but is not
        # counted as 2-connected
        raise PreconditionError("star_is_cocircuit needs a 2-connected graph with a cycle")
    graph_side = G.delete_vertex(v).has_cycle()
    if M is None:
        M = bicircular(G)
    matroid_side = M.mask(G.star(v)) in set(M.cocircuit_masks())
    if graph_side != matroid_side:
        raise DefectError(f"star({v}): graph says {graph_side}, matroid says {matroid_side}")
    return graph_side


def matroid_connectivity_class(M: Matroid) -> str:
    if not M.is_connected():
        return "disconnected"
    from .matroid import separation_masks
    if separation_masks(M, 2):
        return "connected"
    return "three_connected"


def bicircular_connectivity(G: Multigraph, M: Matroid | None = None) -> str:
    """disconnected | connected | three_connected for B(G).

    Uses the degree / cut-vertex / loop criteria when G is connected with at
    least three vertices, and the matroid itself otherwise."""
    if not (G.is_connected() and len(G.vertices) >= 3):
        return matroid_connectivity_class(M if M is not None else bicircular(G))
    if G.is_cycle() or G.has_pendent_edge():
        return "disconnected"
    loops_at = {}
    for name, a, b in G.edges:
        if a == b:
            loops_at[a] = loops_at.get(a, 0) + 1
    if (min(G.degree(v) for v in G.vertices) >= 3 and not G.cut_vertices()
            and all(c <= 1 for c in loops_at.values())):
        return "three_connected"
    return "connected"


def is_committed(G: Multigraph, v, M: Matroid | None = None) -> bool:
    """Is star(v) a non-separating cocircuit of B(G)?  Checked against the
    'G - v is not a cycle and has no pendent edge' criterion."""
    if v not in G.vertices:
        raise MatroidError(f"unknown vertex {v!r}")
    if M is None:
        M = bicircular(G)
    if len(G.vertices) < 4 or not G.is_connected() or matroid_connectivity_class(M) != "three_connected":
        raise PreconditionError("is_committed needs a connected graph on >= 4 vertices with B(G) 3-connected")
    H = G.delete_vertex(v)
    graph_side = not H.is_cycle() and not H.has_pendent_edge()
    s = M.mask(G.star(v))
    if s in set(M.cocircuit_masks()):
        matroid_side = M.restrict_mask(M.full ^ s).is_connected()
    else:
        matroid_side = False
    if graph_side != matroid_side:
        raise DefectError(f"vertex {v}: graph criterion {graph_side}, matroid {matroid_side}")
    return matroid_side


# ---------------------------------------------------------------------
# loop-sums and link-sums


def _disjoint_vertex_names(G1: Multigraph, G2: Multigraph, keep=()):
    """Rename vertices of G2 (other than those in keep) away from G1's."""
    taken = set(G1.vertices)
    mapping = {}
    for v in G2.vertices:
        if v in keep:
            continue
        name = v
        while name in taken:
            name += "'"
        taken.add(name)
        mapping[v] = name
    return mapping


def _is_separator(G: Multigraph, e) -> bool:
    M = bicircular(G, verify=False)
    return M.is_loop(e) or M.is_coloop(e)


def loop_sum(G1: Multigraph, G2: Multigraph, e) -> Multigraph:
    """Glue along a loop e: drop e from both, identify its two vertices."""
    if set(G1.edge_names) & set(G2.edge_names) != {e}:
        raise PreconditionError("edge sets must meet exactly in e")
    if not (G1.is_loop(e) and G2.is_loop(e)):
        raise PreconditionError(f"{e} must be a loop in both graphs")
    if _is_separator(G1, e):
        raise PreconditionError(f"{e} is a separator of B(G1)")
    if _is_separator(G2, e) and not G2.is_cycle():
        raise PreconditionError(f"{e} is a separator of B(G2) and G2 is not a cycle")
    v1 = G1.ends[e][0]
    v2 = G2.ends[e][0]
    mapping = _disjoint_vertex_names(G1, G2)
    mapping[v2] = v1
    H2 = G2.relabel_vertices(mapping)
    verts = list(G1.vertices) + [v for v in H2.vertices if v not in G1.vertices]
    edges = [x for x in G1.edges if x[0] != e] + [x for x in H2.edges if x[0] != e]
    return Multigraph(verts, edges)


def link_sum(G1: Multigraph, G2: Multigraph, e) -> Multigraph:
    """Glue a cycle G2 along a link e: the ends of e are identified in order."""
    if set(G1.edge_names) & set(G2.edge_names) != {e}:
        raise PreconditionError("edge sets must meet exactly in e")
    if not G2.is_cycle():
        raise PreconditionError("the second graph of a link-sum must be a cycle")
    if G1.is_loop(e) or G2.is_loop(e):
        raise PreconditionError(f"{e} must be a link in both graphs")
    if _is_separator(G1, e):
        raise PreconditionError(f"{e} is a separator of B(G1)")
    u1, v1 = G1.ends[e]
    u2, v2 = G2.ends[e]
    mapping = _disjoint_vertex_names(G1, G2)
    mapping[u2] = u1
    mapping[v2] = v1
    H2 = G2.relabel_vertices(mapping)
    verts = list(G1.vertices) + [v for v in H2.vertices if v not in G1.vertices]
    edges = [x for x in G1.edges if x[0] != e] + [x for x in H2.edges if x[0] != e]
    return Multigraph(verts, edges)


def cycle_graph(edge_names, prefix="c") -> Multigraph:
    """A cycle through the given edges in order (one edge: a loop)."""
    k = len(edge_names)
    vs = [f"{prefix}{i}" for i in range(k)]
    es = [(edge_names[i], vs[i], vs[(i + 1) % k]) for i in range(k)]
    return Multigraph(vs, es)


def disjoint_union(graphs) -> Multigraph:
    verts, edges = [], []
    G = Multigraph([], [])
    for H in graphs:
        mapping = _disjoint_vertex_names(G, H)
        H = H.relabel_vertices(mapping)
        verts += list(H.vertices)
        edges += list(H.edges)
        G = Multigraph(verts, edges)
    return G


# ---------------------------------------------------------------------
# enumeration


def vertex_pairs(n: int):
    """Unordered pairs (i <= j) of labels 1..n in lexicographic order."""
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def enumerate_graphs(edge_names, num_vertices: int):
    """Every placement of the edges on labelled vertices 1..n, loops allowed,
    in lexicographic order of the placement vector."""
    if num_vertices < 1:
        raise MatroidError("need at least one vertex")
    edge_names = list(edge_names)
    pairs = vertex_pairs(num_vertices)
    verts = [str(i) for i in range(1, num_vertices + 1)]
    for choice in product(pairs, repeat=len(edge_names)):
        yield Multigraph(verts, [(e, str(a), str(b)) for e, (a, b) in zip(edge_names, choice)])


def count_graphs(num_edges: int, num_vertices: int) -> int:
    return (num_vertices * (num_vertices + 1) // 2) ** num_edges
