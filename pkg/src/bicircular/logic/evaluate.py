"""Evaluation of MS0 formulas over a set-system.

The formula is compiled into a DAG in which alpha-equivalent subformulas
(equal up to renaming of bound *and* free variables) share one node.  A
node sees its free variables positionally, so the memo table of a node is
keyed by the tuple of their values and is shared by every occurrence.

Quantifier domains are cut down using conjuncts of the body that pin the
bound variable: ``v ⊆ W`` (upper bound), ``W ⊆ v`` (lower bound),
``v = W``, "v is a singleton", "v is empty", and definitions of the form
``∀S(Sing S → (S ⊆ v ↔ boolean combination of S ⊆ W_i))`` that fix v
outright.  For ∀ the conjuncts of the negated body are used.
"""

from __future__ import annotations

from ..errors import UnboundVariableError
from ..matroid import SetSystem, popcount, submasks
from .syntax import deep, free_vars, postorder

IND, SUB, EQ, NOT, AND, OR, IMP, IFF, EX, ALL, EXK = range(11)
_OPS = {"ind": IND, "sub": SUB, "eq": EQ, "not": NOT, "and": AND, "or": OR,
        "implies": IMP, "iff": IFF, "exists": EX, "forall": ALL, "exists=": EXK}


class _Node:
    __slots__ = ("op", "a", "b", "ia", "ib", "ma", "mb", "p", "k", "bounds", "nfree", "idx")


# ---------------------------------------------------------------------
# recognising bounding conjuncts


def _sing_var(f):
    """If f is ∃₂u (u ⊆ X) return X."""
    if f.op == "exists=" and f.k == 2 and f.body.op == "sub" and f.body.left == f.var \
            and f.body.right != f.var:
        return f.body.right
    return None


def _empty_var(f):
    if f.op == "exists=" and f.k == 1 and f.body.op == "sub" and f.body.left == f.var \
            and f.body.right != f.var:
        return f.body.right
    return None


def _conjuncts(f, negated=False):
    """Literals that hold whenever f (or ¬f) holds, flattened along the
    boolean spine.  Returns (formula, polarity) pairs."""
    out = []
    stack = [(f, negated)]
    while stack:
        g, neg = stack.pop()
        op = g.op
        if op == "not":
            stack.append((g.arg, not neg))
        elif op == "and" and not neg:
            stack += [(g.left, False), (g.right, False)]
        elif op == "or" and neg:
            stack += [(g.left, True), (g.right, True)]
        elif op == "implies" and neg:
            stack += [(g.left, False), (g.right, True)]
        else:
            out.append((g, neg))
    return out


def _bitexpr(g, s, v):
    """Translate a boolean combination of ``s ⊆ W`` atoms into an
    expression tree over variable names; None if g has another shape."""
    op = g.op
    if op == "sub":
        if g.left == s and g.right not in (s, v):
            return ("var", g.right)
        return None
    if op == "not":
        e = _bitexpr(g.arg, s, v)
        return None if e is None else ("not", e)
    if op in ("and", "or"):
        a = _bitexpr(g.left, s, v)
        b = _bitexpr(g.right, s, v) if a is not None else None
        return None if b is None else (op, a, b)
    return None


def _definition(g, v):
    """If g reads ∀S(Sing S → (S ⊆ v ↔ expr)) return expr."""
    if g.op != "forall":
        return None
    s = g.var
    if s == v:
        return None
    body = g.body
    if body.op != "implies" or _sing_var(body.left) != s:
        return None
    iff = body.right
    if iff.op != "iff":
        return None
    for lhs, rhs in ((iff.left, iff.right), (iff.right, iff.left)):
        if lhs.op == "sub" and lhs.left == s and lhs.right == v:
            e = _bitexpr(rhs, s, v)
            if e is not None:
                return e
    return None


def _bounds_for(q):
    """Constraints on q.var from the body of quantifier q, by name."""
    v = q.var
    lits = _conjuncts(q.body, negated=(q.op == "forall"))
    up, lo, eq, defs = [], [], [], []
    sing = empty = False
    for g, neg in lits:
        if neg:
            continue
        op = g.op
        if op == "sub":
            if g.left == v and g.right != v:
                up.append(g.right)
            elif g.right == v and g.left != v:
                lo.append(g.left)
        elif op == "eq":
            if g.left == v and g.right != v:
                eq.append(g.right)
            elif g.right == v and g.left != v:
                eq.append(g.left)
        elif op == "exists=":
            if _sing_var(g) == v:
                sing = True
            elif _empty_var(g) == v:
                empty = True
        elif op == "forall":
            if g.body.op == "sub" and g.body.left == g.var and g.body.right == v:
                defs.append(("full",))
                continue
            e = _definition(g, v)
            if e is not None:
                defs.append(e)
    if not (up or lo or eq or defs or sing or empty):
        return None
    return up, lo, eq, defs, sing, empty


# ---------------------------------------------------------------------
# compilation


class Compiled:
    """A formula compiled for repeated evaluation."""

    def __init__(self, f):
        self.formula = f
        self.nodes = []
        table = {}
        info = {}  # id(formula) -> (node, free variable list)
        for g in postorder(f):
            op = _OPS[g.op]
            if op == IND:
                key, fv, extra = (IND,), [g.var], None
            elif op in (SUB, EQ):
                if g.left == g.right:
                    key, fv, extra = (op, 0, 0), [g.left], (0, 0)
                else:
                    key, fv, extra = (op, 0, 1), [g.left, g.right], (0, 1)
            elif op == NOT:
                na, fa = info[id(g.arg)]
                key, fv, extra = (NOT, na.idx), list(fa), None
            elif op in (AND, OR, IMP, IFF):
                na, fa = info[id(g.left)]
                nb, fb = info[id(g.right)]
                fv = list(fa) + [x for x in fb if x not in fa]
                pos = {x: i for i, x in enumerate(fv)}
                mb = tuple(pos[x] for x in fb)
                key, extra = (op, na.idx, nb.idx, mb), mb
            else:
                nb, fb = info[id(g.body)]
                p = fb.index(g.var) if g.var in fb else None
                fv = [x for x in fb if x != g.var]
                key = (op, g.k if op == EXK else 0, nb.idx, p)
                extra = p
            nd = table.get(key)
            if nd is None:
                nd = _Node()
                nd.op = op
                nd.nfree = len(fv)
                nd.idx = len(self.nodes)
                nd.bounds = None
                nd.k = 0
                if op in (SUB, EQ):
                    nd.ia, nd.ib = extra
                elif op == NOT:
                    nd.a = na
                elif op in (AND, OR, IMP, IFF):
                    nd.a, nd.b, nd.mb = na, nb, extra
                    nd.ma = len(fa)
                    # right child sees a prefix of our variables: slice instead of gather
                    if extra == tuple(range(len(extra))):
                        nd.mb = len(extra)
                elif op in (EX, ALL, EXK):
                    nd.a, nd.p = nb, extra
                    nd.k = g.k if op == EXK else 0
                    b = _bounds_for(g)
                    if b is not None:
                        pos = {x: i for i, x in enumerate(fv)}
                        up, lo, eq, defs, sing, empty = b

                        def tr(e):
                            if e[0] == "var":
                                return ("var", pos[e[1]])
                            if e[0] == "full":
                                return e
                            return (e[0],) + tuple(tr(x) for x in e[1:])

                        nd.bounds = ([pos[x] for x in up], [pos[x] for x in lo],
                                     [pos[x] for x in eq], [tr(e) for e in defs], sing, empty)
                table[key] = nd
                self.nodes.append(nd)
            info[id(g)] = (nd, fv)
        self.root, self.free = info[id(f)]

    def __call__(self, S: SetSystem, theta=None):
        return evaluate_compiled(self, S, theta)


def _bitval(e, vals, full):
    t = e[0]
    if t == "var":
        return vals[e[1]]
    if t == "full":
        return full
    if t == "not":
        return full & ~_bitval(e[1], vals, full)
    a = _bitval(e[1], vals, full)
    b = _bitval(e[2], vals, full)
    return a & b if t == "and" else a | b


def _domain(bounds, vals, full):
    up_i, lo_i, eq_i, defs, sing, empty = bounds
    up = full
    for i in up_i:
        up &= vals[i]
    lo = 0
    for i in lo_i:
        lo |= vals[i]
    fixed = None
    for i in eq_i:
        x = vals[i]
        if fixed is None:
            fixed = x
        elif x != fixed:
            return ()
    for e in defs:
        x = _bitval(e, vals, full)
        if fixed is None:
            fixed = x
        elif x != fixed:
            return ()
    if fixed is not None:
        if fixed & ~up or lo & ~fixed:
            return ()
        if sing and popcount(fixed) != 1:
            return ()
        if empty and fixed:
            return ()
        return (fixed,)
    if lo & ~up:
        return ()
    if empty:
        return (0,) if lo == 0 else ()
    if sing:
        if lo:
            return (lo,) if popcount(lo) == 1 else ()
        out = []
        m = up
        while m:
            low = m & -m
            out.append(low)
            m ^= low
        return out
    free = up & ~lo
    if lo == 0:
        return submasks(free)
    return [s | lo for s in submasks(free)]


def _as_mask_value(S, val):
    if isinstance(val, int):
        return val
    if isinstance(val, str):
        return S.mask([val]) if val else 0
    return S.mask(list(val))


class Session:
    """One set-system and one compiled formula; memo tables survive across
    queries, so evaluating the same formula under many bindings is cheap."""

    def __init__(self, C: Compiled, S: SetSystem, memo_limit=3_000_000):
        self.C = C
        self.S = S
        n = S.n
        full = (1 << n) - 1
        ind = bytearray(1 << n)
        for m in S.independent:
            ind[m] = 1
        all_sets = range(1 << n)
        memos = [dict() for _ in C.nodes]
        self.memos = memos
        stored = [0]

        def ev(nd, vals):
            op = nd.op
            if op == SUB:
                return not (vals[nd.ia] & ~vals[nd.ib])
            if op == IND:
                return ind[vals[0]] == 1
            if op == EQ:
                return vals[nd.ia] == vals[nd.ib]
            if op == NOT:
                return not ev(nd.a, vals)
            if op <= IFF:
                va = vals if nd.ma == len(vals) else vals[:nd.ma]
                mb = nd.mb
                vb = (vals if mb == len(vals) else vals[:mb]) if isinstance(mb, int) \
                    else tuple([vals[i] for i in mb])
                if op == AND:
                    return ev(nd.a, va) and ev(nd.b, vb)
                if op == OR:
                    return ev(nd.a, va) or ev(nd.b, vb)
                if op == IMP:
                    return (not ev(nd.a, va)) or ev(nd.b, vb)
                return ev(nd.a, va) == ev(nd.b, vb)
            # only quantifier nodes are memoized; connectives are cheap to
            # redo once the quantifiers below them are cached
            memo = memos[nd.idx]
            r = memo.get(vals)
            if r is not None:
                return r
            body = nd.a
            p = nd.p
            if p is None:
                # bound variable unused: the domain is every subset
                t = ev(body, vals)
                if op == EXK:
                    r = (len(all_sets) if t else 0) == nd.k
                else:
                    r = t
            else:
                dom = all_sets if nd.bounds is None else _domain(nd.bounds, vals, full)
                pre, post = vals[:p], vals[p:]
                if op == EX:
                    r = False
                    for y in dom:
                        if ev(body, pre + (y,) + post):
                            r = True
                            break
                elif op == ALL:
                    r = True
                    for y in dom:
                        if not ev(body, pre + (y,) + post):
                            r = False
                            break
                else:
                    k = nd.k
                    c = 0
                    for y in dom:
                        if ev(body, pre + (y,) + post):
                            c += 1
                            if c > k:
                                break
                    r = c == k
            memo[vals] = r
            stored[0] += 1
            if stored[0] > memo_limit:
                # keep memory bounded; results stay correct, only slower
                for m in memos:
                    m.clear()
                stored[0] = 0
            return r


        self._ev = ev

    def query(self, theta=None):
        C = self.C
        theta = theta or {}
        missing = [x for x in C.free if x not in theta]
        if missing:
            raise UnboundVariableError(sorted(missing))
        vals0 = tuple(_as_mask_value(self.S, theta[x]) for x in C.free)
        return _run_deep(self._ev, C.root, vals0)

    def memo_entries(self):
        return sum(len(m) for m in self.memos)


@deep
def _run_deep(ev, root, vals):
    return ev(root, vals)


def evaluate_compiled(C: Compiled, S: SetSystem, theta=None, stats=None):
    sess = Session(C, S)
    result = sess.query(theta)
    if stats is not None:
        stats["memo_entries"] = sess.memo_entries()
        stats["nodes"] = len(C.nodes)
    return result


def evaluate(S: SetSystem, f, theta=None, mode="memo", stats=None) -> bool:
    """Satisfaction of f in S under theta (variable -> set of names or mask).

    mode "memo" is the compiled evaluator; "reference" is direct recursion
    over all 2^|E| subsets at every quantifier (tiny ground sets only)."""
    if mode == "reference":
        return evaluate_reference(S, f, theta)
    return evaluate_compiled(Compiled(f), S, theta, stats)


eval_formula = evaluate


@deep
def evaluate_reference(S: SetSystem, f, theta=None) -> bool:
    theta = theta or {}
    fv = free_vars(f)
    missing = [x for x in fv if x not in theta]
    if missing:
        raise UnboundVariableError(sorted(missing))
    env = {x: _as_mask_value(S, theta[x]) for x in fv}
    ind = set(S.independent)
    universe = range(1 << S.n)

    def go(g, env):
        op = g.op
        if op == "ind":
            return env[g.var] in ind
        if op == "sub":
            return env[g.left] & ~env[g.right] == 0
        if op == "eq":
            return env[g.left] == env[g.right]
        if op == "not":
            return not go(g.arg, env)
        if op == "and":
            return go(g.left, env) and go(g.right, env)
        if op == "or":
            return go(g.left, env) or go(g.right, env)
        if op == "implies":
            return (not go(g.left, env)) or go(g.right, env)
        if op == "iff":
            return go(g.left, env) == go(g.right, env)
        hits = 0
        for y in universe:
            e2 = dict(env)
            e2[g.var] = y
            if go(g.body, e2):
                if op == "exists":
                    return True
                hits += 1
            elif op == "forall":
                return False
        if op == "exists":
            return False
        if op == "forall":
            return True
        return hits == g.k

    return go(f, env)
