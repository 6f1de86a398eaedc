"""Command line front end.

Exit codes: 0 yes/true, 1 no/false, 2 parse or precondition error,
3 the structural decision and the oracle disagree.
"""

from __future__ import annotations

import argparse
import sys
import time

from .errors import DefectError, MatroidError, ParseError, UnboundVariableError
from .formats import (read_graph, read_set_system, write_forest, write_graph, write_set_system,
                      _read)
from .graphs import bicircular
from .matroid import Matroid, fresh_name

EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_DISAGREE = 0, 1, 2, 3


class _Clock:
    def __init__(self, verbose, out):
        self.verbose = verbose
        self.out = out
        self.t0 = time.perf_counter()

    def lap(self, what):
        if self.verbose:
            print(f"# {what}: {time.perf_counter() - self.t0:.3f}s", file=self.out)
            self.t0 = time.perf_counter()


def _matroid(path) -> Matroid:
    S = read_set_system(path)
    if not isinstance(S, Matroid):
        raise ParseError("set-system is not a matroid", None, None, str(path))
    return S


def cmd_check(args, out):
    from .oracle import oracle_decide
    from .recognition import is_bicircular

    M = _matroid(args.file)
    clock = _Clock(args.verbose, out)
    v = yes = res = None
    if args.mode in ("structural", "both"):
        v = is_bicircular(M)
        clock.lap("structural")
    if args.mode in ("oracle", "both"):
        yes, res = oracle_decide(M, args.jobs)
        clock.lap("oracle")
    if args.mode == "structural":
        if v.bicircular:
            print("bicircular", file=out)
            print(write_graph(v.witness), end="", file=out)
            return EXIT_YES
        print(f"not bicircular: {v.reason}", file=out)
        return EXIT_NO
    if args.mode == "oracle":
        if yes:
            print(f"bicircular ({res.searched} graphs searched)", file=out)
            print(write_graph(res.graph), end="", file=out)
            return EXIT_YES
        print(f"not bicircular ({res.searched} graphs searched)", file=out)
        return EXIT_NO
    if v.bicircular != yes:
        said = "bicircular" if v.bicircular else f"not bicircular ({v.reason})"
        osaid = "bicircular" if yes else "not bicircular"
        print(f"disagreement: structural says {said}, oracle says {osaid} "
              f"({res.searched} graphs searched)", file=out)
        return EXIT_DISAGREE
    if yes:
        print(f"bicircular; oracle agrees ({res.searched} graphs searched)", file=out)
        print(write_graph(v.witness), end="", file=out)
        return EXIT_YES
    print(f"not bicircular; oracle agrees ({res.searched} graphs searched)", file=out)
    if args.verbose:
        print(f"# reason: {v.reason}", file=out)
    return EXIT_NO


def decompose_forest(M: Matroid):
    """Canonical tree of each component, basepoints renamed apart."""
    from .decomposition import DecompositionTree, canonical_tree

    trees = []
    comps = M.component_masks()
    taken = set(M.elements)
    for k, c in enumerate(comps):
        T = canonical_tree(M.restrict_mask(c))
        if len(comps) > 1 and T.edges:
            mp = {}
            for _, _, bp in T.edges:
                mp[bp] = fresh_name(taken, f"__c{k}{bp.lstrip('_')}")
                taken.add(mp[bp])
            nodes = {}
            for nid, (N, kind) in T.nodes.items():
                nodes[nid] = (N.relabel({x: mp.get(x, x) for x in N.elements}), kind)
            T = DecompositionTree(nodes, [(a, b, mp[bp]) for a, b, bp in T.edges])
        trees.append(T)
    return trees


def cmd_decompose(args, out):
    M = _matroid(args.file)
    clock = _Clock(args.verbose, out)
    if M.n == 0:
        raise ParseError("empty ground set has no decomposition", None, None, args.file)
    print(write_forest(decompose_forest(M)), end="", file=out)
    clock.lap("decompose")
    return EXIT_YES


def cmd_bmatroid(args, out):
    G = read_graph(args.graph)
    clock = _Clock(args.verbose, out)
    print(write_set_system(bicircular(G), circuits=args.circuits), end="", file=out)
    clock.lap("bmatroid")
    return EXIT_YES


def parse_bindings(text, S, source="--bind"):
    """'X=a,b;Y=' to {X: [a, b], Y: []}; names are checked against S."""
    theta = {}
    if not text:
        return theta
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ParseError(f"binding {part!r} needs the form VAR=a,b", None, None, source)
        var, vals = part.split("=", 1)
        names = [x.strip() for x in vals.split(",") if x.strip()]
        S.mask(names)  # unknown names raise MatroidError
        theta[var.strip()] = names
    return theta


def cmd_eval(args, out):
    from .logic.evaluate import evaluate
    from .logic.syntax import parse
    from .logic.transforms import miniscope

    f = parse(_read(args.formula), source=args.formula)
    S = read_set_system(args.ss)
    theta = parse_bindings(args.bind, S)
    clock = _Clock(args.verbose, out)
    if not args.no_miniscope:
        f = miniscope(f)
    val = evaluate(S, f, theta)
    print("true" if val else "false", file=out)
    clock.lap("eval")
    return EXIT_YES if val else EXIT_NO


def cmd_emit(args, out):
    from .logic.catalog import build
    from .logic.syntax import to_text

    vs = [x for x in args.vars.split(",") if x] if args.vars else None
    f = build(args.name, vars=vs, k=args.k, n=args.n, phi=args.phi)
    print(to_text(f), file=out)
    return EXIT_YES


def cmd_oracle(args, out):
    from .oracle import oracle_search

    M = _matroid(args.file)
    L = [x for x in (args.loops or "").split(",") if x]
    M.mask(L)
    clock = _Clock(args.verbose, out)
    loops = [e for e in M.elements if M.is_loop(e)]
    if set(loops) & set(L):
        raise MatroidError(f"{args.file}: matroid loops cannot be graph edges: "
                           f"{','.join(sorted(set(loops) & set(L)))}")
    if loops:
        # matroid loops form a rank-zero summand; search the rest
        M = M.restrict_mask(M.full ^ M.mask(loops))
        print(f"# ignoring matroid loops {','.join(loops)}", file=out)
    res = oracle_search(M, L, args.jobs)
    clock.lap("oracle")
    if res.graph is None:
        print(f"no representation ({res.searched} graphs searched)", file=out)
        return EXIT_NO
    print(f"representation found ({res.searched} graphs searched)", file=out)
    print(write_graph(res.graph), end="", file=out)
    return EXIT_YES


def build_parser():
    top = argparse.ArgumentParser(add_help=False)
    top.add_argument("--jobs", type=int, default=1, help="worker processes for graph search")
    top.add_argument("--verbose", action="store_true", help="print timings")
    # the same flags after the verb; SUPPRESS keeps them from resetting the top-level values
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="bicircular", parents=[top],
                                description="Decide bicircularity of small matroids.")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("check", parents=[common], help="decide whether a matroid is bicircular")
    c.add_argument("file")
    c.add_argument("--mode", choices=["structural", "oracle", "both"], default="structural")
    c.set_defaults(run=cmd_check)

    d = sub.add_parser("decompose", parents=[common], help="print the canonical 2-sum tree")
    d.add_argument("file")
    d.set_defaults(run=cmd_decompose)

    b = sub.add_parser("bmatroid", parents=[common], help="bicircular matroid of a graph")
    b.add_argument("graph")
    b.add_argument("--circuits", action="store_true", help="write circuits instead of independent sets")
    b.set_defaults(run=cmd_bmatroid)

    e = sub.add_parser("eval", parents=[common], help="evaluate a formula on a set-system")
    e.add_argument("formula")
    e.add_argument("ss")
    e.add_argument("--bind", default="", help="free variables, e.g. 'X=a,b;Y='")
    e.add_argument("--no-miniscope", action="store_true")
    e.set_defaults(run=cmd_eval)

    from .logic.catalog import catalog_names

    m = sub.add_parser("emit", parents=[common], help="print a catalog formula")
    m.add_argument("name", help="one of: " + ", ".join(catalog_names()))
    m.add_argument("--k", type=int)
    m.add_argument("--n", type=int)
    m.add_argument("--phi")
    m.add_argument("--vars", help="comma separated free variable names")
    m.set_defaults(run=cmd_emit)

    o = sub.add_parser("oracle", parents=[common], help="brute-force graph search")
    o.add_argument("file")
    o.add_argument("--loops", help="elements that must be graph loops")
    o.set_defaults(run=cmd_oracle)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=err)
    except UnboundVariableError as exc:
        print(f"error: {exc}", file=err)
    except MatroidError as exc:
        print(f"error: {exc}", file=err)
    except DefectError as exc:
        print(f"internal check failed: {exc}", file=err)
        return EXIT_DISAGREE
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
