"""Text formats: set-systems, graphs and decomposition trees.

Set-system::

    ground a b c d
    ind
    ind a
    circuit a b c     # alternative form; independence = contains no circuit

Graph::

    vertex u
    edge a u v

Tree::

    node 0 three_connected ground=a,b,c,__bp0
    tree-edge 0 1 basepoint=__bp0

A tree file written by :func:`write_tree` also carries ``circuit <id> ...``
lines so that it can be parsed back and re-composed.
"""

from __future__ import annotations

from .errors import MatroidError, ParseError
from .graphs import Multigraph
from .matroid import Matroid, SetSystem, check_matroid, family_key


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", source=str(path)) from None


# ---------------------------------------------------------------------
# set-systems


def parse_set_system(text: str, source=None) -> SetSystem:
    """Parse the set-system format.  Returns a Matroid when the family
    passes the axioms, otherwise a bare SetSystem."""
    ground = None
    ground_line = None
    ind, circ = [], []
    for no, toks in _lines(text):
        kw, args = toks[0], toks[1:]
        if kw == "ground":
            if ground is not None:
                raise ParseError("second 'ground' line", no, 1, source)
            if len(set(args)) != len(args):
                raise ParseError("duplicate element in ground", no, 1, source)
            ground, ground_line = args, no
        elif kw in ("ind", "circuit"):
            if ground is None:
                raise ParseError(f"'{kw}' before 'ground'", no, 1, source)
            known = set(ground)
            for k, a in enumerate(args):
                if a not in known:
                    col = len(" ".join(toks[:k + 1])) + 2
                    raise ParseError(f"unknown element {a!r}", no, col, source)
            if kw == "circuit" and not args:
                raise ParseError("empty circuit", no, 1, source)
            (ind if kw == "ind" else circ).append((no, args))
        else:
            raise ParseError(f"unknown statement {kw!r}", no, 1, source)
    if ground is None:
        raise ParseError("missing 'ground' line", None, None, source)
    if ind and circ:
        raise ParseError("mix of 'ind' and 'circuit' lines", circ[0][0], 1, source)
    if circ:
        try:
            return Matroid.from_circuits(ground, [c for _, c in circ], check=True)
        except MatroidError as exc:
            raise ParseError(f"circuits do not define a matroid: {exc}", ground_line, 1, source) from None
    S = SetSystem(ground, [set(a) for _, a in ind])
    if check_matroid(S):
        return Matroid(S.elements, S.independent, check=False)
    return S


def read_set_system(path) -> SetSystem:
    return parse_set_system(_read(path), source=str(path))


def write_set_system(S: SetSystem, circuits=False) -> str:
    """Canonical text: elements in ground order, sets sorted by size then names."""
    out = ["ground " + " ".join(S.elements)]
    if circuits and isinstance(S, Matroid):
        fam = [S.sorted_names(c) for c in S.circuit_masks()]
        kw = "circuit"
    else:
        fam = [S.sorted_names(m) for m in S.independent]
        kw = "ind"
    fam.sort(key=lambda s: (len(s), s))
    for s in fam:
        out.append(" ".join([kw] + s))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------
# graphs


def parse_graph(text: str, source=None) -> Multigraph:
    verts, edges, seen = [], [], set()
    for no, toks in _lines(text):
        kw = toks[0]
        if kw == "vertex":
            if len(toks) != 2:
                raise ParseError("expected 'vertex NAME'", no, 1, source)
            if toks[1] in seen:
                raise ParseError(f"duplicate vertex {toks[1]!r}", no, 8, source)
            seen.add(toks[1])
            verts.append(toks[1])
        elif kw == "edge":
            if len(toks) != 4:
                raise ParseError("expected 'edge NAME U V'", no, 1, source)
            for k in (2, 3):
                if toks[k] not in seen:
                    col = len(" ".join(toks[:k])) + 2
                    raise ParseError(f"undeclared vertex {toks[k]!r}", no, col, source)
            edges.append((toks[1], toks[2], toks[3]))
        else:
            raise ParseError(f"unknown statement {kw!r}", no, 1, source)
    try:
        return Multigraph(verts, edges)
    except MatroidError as exc:
        raise ParseError(str(exc), None, None, source) from None


def read_graph(path) -> Multigraph:
    return parse_graph(_read(path), source=str(path))


def write_graph(G: Multigraph) -> str:
    out = [f"vertex {v}" for v in G.vertices]
    out += [f"edge {n} {a} {b}" for n, a, b in G.edges]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------
# trees


def write_tree(T, with_circuits=True) -> str:
    out = []
    for nid in T.node_ids():
        N = T.matroid(nid)
        out.append(f"node {nid} {T.kind(nid)} ground={','.join(sorted(N.elements))}")
    for a, b, bp in T.edges:
        out.append(f"tree-edge {a} {b} basepoint={bp}")
    if with_circuits:
        for nid in T.node_ids():
            N = T.matroid(nid)
            for c in sorted((N.sorted_names(c) for c in N.circuit_masks()), key=family_key):
                out.append(f"circuit {nid} " + " ".join(c))
    return "\n".join(out) + "\n"


def parse_tree(text: str, source=None):
    """Inverse of write_tree (needs the circuit lines)."""
    from .decomposition import DecompositionTree

    nodes = {}
    edges = []
    circs = {}
    for no, toks in _lines(text):
        kw = toks[0]
        if kw == "node":
            if len(toks) != 4 or not toks[3].startswith("ground="):
                raise ParseError("expected 'node ID KIND ground=NAMES'", no, 1, source)
            ground = [x for x in toks[3][len("ground="):].split(",") if x]
            nodes[toks[1]] = (toks[2], ground)
        elif kw == "tree-edge":
            if len(toks) != 4 or not toks[3].startswith("basepoint="):
                raise ParseError("expected 'tree-edge ID ID basepoint=NAME'", no, 1, source)
            edges.append((toks[1], toks[2], toks[3][len("basepoint="):]))
        elif kw == "circuit":
            if len(toks) < 3:
                raise ParseError("expected 'circuit ID NAMES'", no, 1, source)
            circs.setdefault(toks[1], []).append(toks[2:])
        else:
            raise ParseError(f"unknown statement {kw!r}", no, 1, source)
    for a, b, _ in edges:
        for x in (a, b):
            if x not in nodes:
                raise ParseError(f"edge mentions unknown node {x!r}", None, None, source)
    built = {}
    for nid, (kind, ground) in nodes.items():
        try:
            built[nid] = (Matroid.from_circuits(ground, circs.get(nid, [])), kind)
        except MatroidError as exc:
            raise ParseError(f"node {nid}: {exc}", None, None, source) from None
    return DecompositionTree.from_parts(built, edges)


def write_forest(trees, with_circuits=True) -> str:
    """Several component trees in one file.  Node ids are shifted so they
    stay distinct; basepoints must already be distinct across trees."""
    out, off = [], 0
    for T in trees:
        mp = {nid: off + i for i, nid in enumerate(T.node_ids())}
        for line in write_tree(T, with_circuits).splitlines():
            toks = line.split(" ")
            toks[1] = str(mp[int(toks[1])])
            if toks[0] == "tree-edge":
                toks[2] = str(mp[int(toks[2])])
            out.append(" ".join(toks))
        off += len(mp)
    return "\n".join(out) + "\n"


def parse_forest(text: str, source=None):
    """Split a tree file into its connected pieces, one tree each."""
    node_lines, edge_of, rest = {}, [], []
    for no, toks in _lines(text):
        if toks[0] == "node" and len(toks) > 1:
            node_lines.setdefault(toks[1], []).append(" ".join(toks))
        elif toks[0] == "tree-edge" and len(toks) > 2:
            edge_of.append((toks[1], toks[2], " ".join(toks)))
        else:
            rest.append((toks, " ".join(toks)))
    parent = {k: k for k in node_lines}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, line in edge_of:
        if a not in parent or b not in parent:
            raise ParseError(f"edge mentions unknown node: {line!r}", None, None, source)
        parent[find(a)] = find(b)
    groups = {}
    for k in node_lines:
        groups.setdefault(find(k), []).append(k)
    if not groups:
        return [parse_tree(text, source)]
    trees = []
    for members in sorted(groups.values(), key=lambda g: min(int(x) if x.isdigit() else 0 for x in g)):
        ms = set(members)
        chunk = [line for k in members for line in node_lines[k]]
        chunk += [line for a, b, line in edge_of if a in ms or b in ms]
        chunk += [line for toks, line in rest if len(toks) > 1 and toks[1] in ms]
        trees.append(parse_tree("\n".join(chunk), source))
    for toks, line in rest:
        if not (len(toks) > 1 and toks[1] in node_lines):
            raise ParseError(f"statement does not belong to a known node: {line!r}", None, None, source)
    return trees
