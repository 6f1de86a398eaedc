"""Canonical 2-sum decomposition trees, displayed separations, wedges and the
transduction of a good separation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .errors import DefectError, MatroidError, PreconditionError
from .matroid import (Matroid, SetSystem, bits, check_matroid, fresh_name, isomorphism,
                      popcount, separation_masks, split_along, two_sum, wedge_masks)

KINDS = ("three_connected", "circuit", "cocircuit", "singleton")


def classify(N: Matroid) -> str:
    """Kind of a connected matroid with no 2-separation."""
    if N.n == 1:
        return "singleton"
    if N.full in set(N.circuit_masks()):
        return "circuit"
    if N.full in set(N.cocircuit_masks()):
        return "cocircuit"
    return "three_connected"


class DecompositionTree:
    """Matroid-labelled tree.  Node ids are small ints; an edge is
    (id, id, basepoint) and the basepoint lies in both node grounds."""

    def __init__(self, nodes, edges, elements=None):
        # nodes: {id: (Matroid, kind)}
        self.nodes = dict(nodes)
        self.edges = [tuple(e) for e in edges]
        bps = {bp for _, _, bp in self.edges}
        if elements is None:
            elements = sorted({x for N, _ in self.nodes.values() for x in N.elements} - bps)
        self.elements = tuple(elements)
        self._adj = {i: [] for i in self.nodes}
        for a, b, bp in self.edges:
            self._adj[a].append((b, bp))
            self._adj[b].append((a, bp))

    @classmethod
    def from_parts(cls, built, edges):
        """From {id: (Matroid, kind)} and (id, id, basepoint) with string or
        int ids (as read back from text)."""
        ids = {k: i for i, k in enumerate(sorted(built, key=_id_key))}
        nodes = {ids[k]: v for k, v in built.items()}
        es = [(ids[a], ids[b], bp) for a, b, bp in edges]
        T = cls(nodes, es)
        T.validate()
        return T

    # --- access ----------------------------------------------------

    def node_ids(self):
        return sorted(self.nodes)

    def matroid(self, nid) -> Matroid:
        return self.nodes[nid][0]

    def kind(self, nid) -> str:
        return self.nodes[nid][1]

    def neighbors(self, nid):
        return list(self._adj[nid])

    def degree(self, nid) -> int:
        return len(self._adj[nid])

    def basepoints(self):
        return [bp for _, _, bp in self.edges]

    def own_elements(self, nid):
        """Elements of the node that are elements of M (not basepoints)."""
        bps = set(self.basepoints())
        return [x for x in self.matroid(nid).elements if x not in bps]

    def side(self, nid, avoid):
        """E(T') for the component T' of T - avoid containing nid."""
        out, stack, seen = set(), [nid], {nid, avoid}
        while stack:
            x = stack.pop()
            out.update(self.own_elements(x))
            for y, _ in self._adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(out)

    def edge_sides(self, edge):
        a, b, _ = edge
        return self.side(a, b), self.side(b, a)

    def edge_by_basepoint(self, bp):
        for e in self.edges:
            if e[2] == bp:
                return e
        raise MatroidError(f"no tree edge with basepoint {bp!r}")

    def three_connected_components(self):
        return [i for i in self.node_ids() if self.kind(i) == "three_connected"]

    # --- checks ----------------------------------------------------

    def validate(self):
        """Raise DefectError if a matroid-labelled tree condition fails."""
        n = len(self.nodes)
        if len(self.edges) != n - 1 and n:
            raise DefectError("tree has the wrong number of edges")
        # connected
        if n:
            seen, stack = {self.node_ids()[0]}, [self.node_ids()[0]]
            while stack:
                x = stack.pop()
                for y, _ in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != n:
                raise DefectError("tree is not connected")
        if n > 1 and any(N.n < 3 for N, _ in self.nodes.values()):
            raise DefectError("node with fewer than three elements")
        adjacent = {(a, b) for a, b, _ in self.edges} | {(b, a) for a, b, _ in self.edges}
        bp_of = {}
        for a, b, bp in self.edges:
            bp_of[(a, b)] = bp_of[(b, a)] = bp
        ids = self.node_ids()
        for i, x in enumerate(ids):
            for y in ids[i + 1:]:
                common = set(self.matroid(x).elements) & set(self.matroid(y).elements)
                if (x, y) in adjacent:
                    if common != {bp_of[(x, y)]}:
                        raise DefectError(f"nodes {x},{y} share {sorted(common)}")
                elif common:
                    raise DefectError(f"non-adjacent nodes {x},{y} share {sorted(common)}")
        for a, b, bp in self.edges:
            ka, kb = self.kind(a), self.kind(b)
            if ka == kb and ka in ("circuit", "cocircuit"):
                raise DefectError(f"edge {bp} joins two {ka} nodes")
            for x in (a, b):
                N = self.matroid(x)
                if N.is_loop(bp) or N.is_coloop(bp):
                    raise DefectError(f"basepoint {bp} is a separator of node {x}")

    def recompose(self) -> Matroid:
        """Fold the tree back into one matroid with 2-sums."""
        if not self.nodes:
            return Matroid([], [0], check=False)
        root = self.node_ids()[0]
        M = self.matroid(root)
        seen = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y, bp in sorted(self._adj[x], key=lambda t: t[0]):
                if y in seen:
                    continue
                seen.add(y)
                M = two_sum(M, self.matroid(y), bp)
                stack.append(y)
        return M

    def signature(self):
        """Name-free description: basepoints replaced by the separation the
        edge displays.  Two trees for the same M are isomorphic exactly when
        their signatures agree."""
        least = min(self.elements) if self.elements else None
        token = {}
        for e in self.edges:
            s1, s2 = self.edge_sides(e)
            token[e[2]] = ("sep", s2 if least in s1 else s1)
        out = []
        for nid in self.node_ids():
            N = self.matroid(nid)
            els = tuple(token.get(x, ("el", x)) for x in N.elements)
            fam = frozenset(frozenset(els[i] for i in bits(m)) for m in N.independent)
            out.append((self.kind(nid), frozenset(els), fam))
        return frozenset(out)

    def __repr__(self):
        return f"DecompositionTree({len(self.nodes)} nodes, {len(self.edges)} edges)"


def _id_key(k):
    s = str(k)
    return (0, int(s)) if s.isdigit() else (1, s)


def trees_isomorphic(T1: DecompositionTree, T2: DecompositionTree) -> bool:
    return T1.signature() == T2.signature()


# ---------------------------------------------------------------------
# construction


def _choose_split(P: Matroid, rng):
    """A side A of a 2-separation of P with both sides of size >= 2, or None."""
    cands = []
    for m in separation_masks(P, 2):
        cands.append(m)
        cands.append(P.full ^ m)
    if not cands:
        return None
    if rng is not None:
        return rng.choice(sorted(cands))
    return min(cands, key=lambda m: (popcount(m), P.sorted_names(m)))


def canonical_tree(M: Matroid, rng=None, seed=None) -> DecompositionTree:
    """The canonical decomposition tree of a connected matroid.

    Splits recursively along 2-separations (the lexicographically least
    smallest side by default, random ones if rng or seed is given), then
    merges adjacent circuit/circuit and cocircuit/cocircuit nodes.
    Basepoints are renamed at the end so the output does not depend on the
    split order."""
    if M.n == 0:
        raise PreconditionError("canonical_tree needs a non-empty matroid")
    if not M.is_connected():
        raise PreconditionError("canonical_tree needs a connected matroid")
    if seed is not None and rng is None:
        rng = random.Random(seed)
    taken = set(M.elements)
    nodes = {}
    edges = []

    def build(P):
        # returns {bp: node id holding bp} for the basepoints already in P
        A = _choose_split(P, rng)
        if A is None:
            nid = len(nodes)
            nodes[nid] = (P, classify(P))
            return {x: nid for x in P.elements}
        bp = fresh_name(taken)
        taken.add(bp)
        left, right, _ = split_along(P, P.sorted_names(A), bp)
        wl = build(left)
        wr = build(right)
        edges.append((wl[bp], wr[bp], bp))
        out = {}
        for w in (wl, wr):
            for x, nid in w.items():
                if x != bp:
                    out[x] = nid
        return out

    build(M)
    nodes, edges = _merge(nodes, edges)
    T = _canonical_names(DecompositionTree(nodes, edges, sorted(M.elements)))
    T.validate()
    if T.recompose() != M:
        raise DefectError("decomposition tree does not recompose to M")
    return T


def _merge(nodes, edges):
    """Contract edges between two circuit nodes or two cocircuit nodes."""
    nodes = dict(nodes)
    edges = list(edges)
    while True:
        for e in edges:
            a, b, bp = e
            ka, kb = nodes[a][1], nodes[b][1]
            if ka == kb and ka in ("circuit", "cocircuit"):
                break
        else:
            return nodes, edges
        N = two_sum(nodes[a][0], nodes[b][0], bp)
        nodes[a] = (N, ka)
        del nodes[b]
        edges.remove(e)
        edges = [(a if x == b else x, a if y == b else y, p) for x, y, p in edges]


def _canonical_names(T: DecompositionTree):
    """Rename basepoints __bp0, __bp1, ... in the order of the separations
    they display, and node ids by the sets they see around them."""
    user = set(T.elements)
    keyed = []
    for e in T.edges:
        s1, s2 = T.edge_sides(e)
        small = min((len(s1), sorted(s1)), (len(s2), sorted(s2)))
        keyed.append((small, e))
    keyed.sort(key=lambda t: t[0])
    ren = {}
    used = set(user)
    for _, e in keyed:
        name = fresh_name(used)
        used.add(name)
        ren[e[2]] = name
    far = {}
    for e in T.edges:
        s1, s2 = T.edge_sides(e)
        far[(e[0], e[2])] = s2
        far[(e[1], e[2])] = s1

    def node_key(nid):
        parts = []
        for x in T.matroid(nid).elements:
            if (nid, x) in far:
                parts.append(sorted(far[(nid, x)]))
        return (sorted(T.own_elements(nid)) or ["\uffff"], sorted(parts))

    order = sorted(T.node_ids(), key=node_key)
    newid = {old: i for i, old in enumerate(order)}
    nodes = {}
    for old in order:
        N, kind = T.nodes[old]
        N2 = N.relabel(ren)
        # keep ground order deterministic: sorted names
        perm = sorted(range(N2.n), key=lambda i: N2.elements[i])
        pos = [0] * N2.n
        for k, i in enumerate(perm):
            pos[i] = k
        ind = [sum(1 << pos[i] for i in bits(m)) for m in N2.independent]
        nodes[newid[old]] = (Matroid([N2.elements[i] for i in perm], ind, check=False), kind)
    edges = []
    for a, b, bp in T.edges:
        a2, b2 = sorted((newid[a], newid[b]))
        edges.append((a2, b2, ren[bp]))
    edges.sort(key=lambda t: (t[0], t[1]))
    return DecompositionTree(nodes, edges, T.elements)


# ---------------------------------------------------------------------
# displayed separations


def _norm(M_elements, A, B):
    least = min(M_elements)
    return (frozenset(A), frozenset(B)) if least in A else (frozenset(B), frozenset(A))


def displayed(T: DecompositionTree, ref):
    """Partitions (A, B) of E(M) displayed by a tree edge or by a node.

    ``ref`` is an edge tuple, a basepoint name, or a node id.  For a node
    every grouping of its parts (the element sets of the components of T - N
    and its own elements) into two non-empty sides is returned.  Each
    partition is oriented so that A holds the least element."""
    els = T.elements
    if isinstance(ref, tuple) or (isinstance(ref, str) and ref in T.basepoints()):
        e = ref if isinstance(ref, tuple) else T.edge_by_basepoint(ref)
        A, B = T.edge_sides(e)
        return [_norm(els, A, B)]
    nid = ref
    if nid not in T.nodes:
        raise MatroidError(f"no node {nid!r}")
    parts = [frozenset({x}) for x in T.own_elements(nid)]
    for y, _ in T.neighbors(nid):
        parts.append(T.side(y, nid))
    parts = [p for p in parts if p]
    out = set()
    k = len(parts)
    for mask in range(1, (1 << k) - 1):
        A = frozenset().union(*(parts[i] for i in range(k) if mask >> i & 1))
        B = frozenset(els) - A
        out.add(_norm(els, A, B))
    return sorted(out, key=lambda p: (len(p[0]), sorted(p[0])))


def displayed_two_separations(T: DecompositionTree):
    """Everything displayed by an edge, or by a circuit or cocircuit node,
    with both sides of size at least two."""
    out = set()
    for e in T.edges:
        out.update(displayed(T, e))
    for nid in T.node_ids():
        if T.kind(nid) in ("circuit", "cocircuit"):
            out.update(displayed(T, nid))
    return {p for p in out if len(p[0]) >= 2 and len(p[1]) >= 2}


def all_two_separations(M: Matroid):
    """Every 2-separation of M with both sides of size at least two."""
    out = set()
    for m in separation_masks(M, 2):
        out.add(_norm(M.elements, M.names(m), M.names(M.full ^ m)))
    return out


# ---------------------------------------------------------------------
# good separations


def _closure_meets(M, a, b):
    return M.closure_mask(a) & b


def _skew_masks(M, x, y):
    u = x | y
    for c in M.circuit_masks():
        if c & ~u == 0 and c & x and c & y:
            return False
    return True


def good_separation(M: Matroid, A) -> bool:
    """(A, E - A) is a 2-separation, nothing of E - A is in the closure or
    coclosure of A, and distinct wedges relative to A are disjoint, skew
    and coskew."""
    if not M.is_connected():
        raise PreconditionError("good_separation needs a connected matroid")
    a = M.mask(A)
    b = M.full ^ a
    if popcount(a) < 2 or popcount(b) < 2 or M.lam(a) >= 2:
        return False
    D = M.dual()
    if _closure_meets(M, a, b) or _closure_meets(D, a, b):
        return False
    ws = wedge_masks(M, a)
    for w1, w2 in combinations(ws, 2):
        if w1 & w2:
            return False
        if not _skew_masks(M, w1, w2) or not _skew_masks(D, w1, w2):
            return False
    return True


def good_separations(M: Matroid):
    """All sides A (both orientations) of good separations."""
    out = []
    for m in separation_masks(M, 2):
        for a in (m, M.full ^ m):
            if good_separation(M, a):
                out.append(frozenset(M.names(a)))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def adjacent_component(T: DecompositionTree, A):
    """If A is displayed by an edge whose node on the other side is a
    3-connected component, return (edge, that node id); else None."""
    A = frozenset(A)
    for e in T.edges:
        s1, s2 = T.edge_sides(e)
        a, b, _ = e
        if s1 == A and T.kind(b) == "three_connected":
            return e, b
        if s2 == A and T.kind(a) == "three_connected":
            return e, a
    return None


# ---------------------------------------------------------------------
# circuit nodes of degree three


def degree3_circuit_node_native(M: Matroid, T: DecompositionTree | None = None):
    """Node id of a circuit node of degree >= 3 in the canonical tree, or None."""
    if T is None:
        T = canonical_tree(M)
    for nid in T.node_ids():
        if T.kind(nid) == "circuit" and T.degree(nid) >= 3:
            return nid
    return None


def degree3_circuit_node_criterion(M: Matroid):
    """Search for a 2-separation (A, B) and wedges B1, B2 relative to A with
    B1 ∪ B2 = B, |B - Bi| >= 2, B - B1 and B - B2 not coskew, and A disjoint
    from cl*(B1).  Returns (A, B1, B2) as name sets, or None."""
    if not M.is_connected():
        raise PreconditionError("needs a connected matroid")
    D = M.dual()
    for m in separation_masks(M, 2):
        for a in (m, M.full ^ m):
            b = M.full ^ a
            ws = wedge_masks(M, a)
            for b1 in ws:
                if D.closure_mask(b1) & a:
                    continue
                for b2 in ws:
                    if b2 == b1 or b1 | b2 != b:
                        continue
                    r1, r2 = b & ~b1, b & ~b2
                    if popcount(r1) < 2 or popcount(r2) < 2:
                        continue
                    if _skew_masks(D, r1, r2):
                        continue
                    return M.names(a), M.names(b1), M.names(b2)
    return None


def has_degree3_circuit_node(M: Matroid, T: DecompositionTree | None = None) -> bool:
    """Both implementations, which must agree."""
    native = degree3_circuit_node_native(M, T) is not None
    crit = degree3_circuit_node_criterion(M) is not None
    if native != crit:
        raise DefectError(f"degree-3 circuit node: tree says {native}, criterion says {crit}")
    return native


# ---------------------------------------------------------------------
# transduction


def block_name(block) -> str:
    s = sorted(block)
    return s[0] if len(s) == 1 else "{" + ",".join(s) + "}"


@dataclass
class TransducedMatroid:
    blocks: list  # frozensets; blocks[0] is A
    independent_block_sets: list  # frozensets of block indices
    sigma: dict = field(default_factory=dict)  # node element -> block index

    def set_system(self) -> SetSystem:
        names = [block_name(b) for b in self.blocks]
        return SetSystem(names, [[names[i] for i in x] for x in self.independent_block_sets])


def transduce(M: Matroid, A, T: DecompositionTree | None = None) -> TransducedMatroid:
    """Quotient set-system on A and its wedges: a family of blocks is
    independent when every circuit inside their union lies in one block.
    When the tree is available sigma maps the adjacent component onto it."""
    a = M.mask(A)
    if not good_separation(M, a):
        raise PreconditionError(f"{sorted(M.names(a))} is not a good separation")
    ws = wedge_masks(M, a)
    masks = [a] + ws
    circs = M.circuit_masks()
    k = len(masks)
    ind = []
    for x in range(1 << k):
        u = 0
        for i in bits(x):
            u |= masks[i]
        ok = True
        for c in circs:
            if c & ~u == 0 and not any(c & ~masks[i] == 0 for i in bits(x)):
                ok = False
                break
        if ok:
            ind.append(frozenset(bits(x)))
    blocks = [frozenset(M.names(m)) for m in masks]
    R = TransducedMatroid(blocks, ind)
    if T is None:
        T = canonical_tree(M)
    hit = adjacent_component(T, M.names(a))
    if hit is not None:
        e, nid = hit
        index = {b: i for i, b in enumerate(blocks)}
        for x in T.matroid(nid).elements:
            if x == e[2]:
                R.sigma[x] = 0
                continue
            other = [y for y, bp in T.neighbors(nid) if bp == x]
            part = T.side(other[0], nid) if other else frozenset({x})
            if part not in index:
                raise DefectError(f"no block for node element {x}")
            R.sigma[x] = index[part]
    return R


def check_transduction(M: Matroid, A, T: DecompositionTree | None = None):
    """Transduce, then confirm the result is a matroid and that sigma is an
    isomorphism from the adjacent 3-connected component.  Returns the node."""
    if T is None:
        T = canonical_tree(M)
    R = transduce(M, A, T)
    S = R.set_system()
    if not check_matroid(S):
        raise DefectError("transduced set-system is not a matroid")
    hit = adjacent_component(T, frozenset(M.names(M.mask(A))))
    if hit is None:
        raise DefectError("good separation not displayed next to a 3-connected component")
    N = T.matroid(hit[1])
    names = [block_name(b) for b in R.blocks]
    fixed = {x: names[i] for x, i in R.sigma.items()}
    if isomorphism(N, S, fixed) is None:
        raise DefectError("sigma is not an isomorphism")
    return N, R
