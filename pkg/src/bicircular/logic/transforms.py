"""Syntactic transforms: counting-quantifier expansion, prenex form,
miniscoping, and the two relativizations (to connected components and to
the transduction of a good separation)."""

from __future__ import annotations

from ..errors import PreconditionError
from .syntax import (And, Eq, Exists, ExistsExactly, Forall, Implies, IndAtom, Not, Or,
                     all_vars, children, conj, deep, disj, free_vars, neq, postorder, rebuild,
                     rename_free)


class _Fresh:
    def __init__(self, taken):
        self.taken = set(taken)
        self.counter = 0

    def __call__(self, base):
        base = base.split("_")[0] or "Z"
        while True:
            name = f"{base}_{self.counter}"
            self.counter += 1
            if name not in self.taken:
                self.taken.add(name)
                return name


# ---------------------------------------------------------------------
# counting quantifiers


def _expand_one(k, v, body, fresh):
    """∃_k v body without counting quantifiers (body already expanded)."""
    if k == 0:
        return Not(Exists(v, body))
    ws = [fresh(v) for _ in range(k)]
    other = fresh(v)
    parts = [rename_free(body, {v: w}) for w in ws]
    parts += [neq(ws[i], ws[j]) for i in range(k) for j in range(i + 1, k)]
    parts.append(Forall(other, Implies(rename_free(body, {v: other}),
                                       disj(*[Eq(other, w) for w in ws]))))
    out = conj(*parts)
    for w in reversed(ws):
        out = Exists(w, out)
    return out


def expand_exists_exactly(f):
    """Replace every ∃_k node by the first-order counting construction:
    k witnesses, pairwise distinct, and every satisfier is one of them."""
    fresh = _Fresh(all_vars(f))

    @deep
    def go(g):
        if g.op == "exists=":
            return _expand_one(g.k, g.var, go(g.body), fresh)
        kids = children(g)
        if not kids:
            return g
        return rebuild(g, [go(c) for c in kids])

    return go(f)


# ---------------------------------------------------------------------
# prenex form


def rename_apart(f):
    """Give every binder a distinct name, also distinct from the free
    variables.  Binders keep their name when it is not yet in use."""
    used = set(free_vars(f))
    fresh = _Fresh(all_vars(f))

    @deep
    def go(g, m):
        op = g.op
        if op == "ind":
            return IndAtom(m.get(g.var, g.var))
        if op in ("sub", "eq"):
            return type(g)(m.get(g.left, g.left), m.get(g.right, g.right))
        if op in ("exists", "forall", "exists="):
            v = g.var
            if v in used:
                nv = fresh(v)
            else:
                nv = v
            used.add(nv)
            m2 = dict(m)
            m2[v] = nv
            body = go(g.body, m2)
            if op == "exists":
                return Exists(nv, body)
            if op == "forall":
                return Forall(nv, body)
            return ExistsExactly(g.k, nv, body)
        return rebuild(g, [go(c, m) for c in children(g)])

    return go(f, {})


def _flip(prefix):
    return [("forall" if q == "exists" else "exists", v) for q, v in prefix]


def is_prenex(f) -> bool:
    g = f
    while g.op in ("exists", "forall"):
        g = g.body
    return not any(h.op in ("exists", "forall", "exists=") for h in _walk(g))


def _walk(f):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(children(g))


def split_prenex(f):
    prefix = []
    g = f
    while g.op in ("exists", "forall"):
        prefix.append((g.op, g.var))
        g = g.body
    return prefix, g


def attach_prefix(prefix, matrix):
    out = matrix
    for q, v in reversed(prefix):
        out = Exists(v, out) if q == "exists" else Forall(v, out)
    return out


def to_prenex(f):
    """Equivalent formula Q1 X1 ... Qn Xn ω with ω quantifier-free."""
    f = rename_apart(expand_exists_exactly(f))
    fresh = _Fresh(all_vars(f))

    def quantifier_free(g):
        return not any(h.op in ("exists", "forall") for h in _walk(g))

    @deep
    def go(g):
        op = g.op
        if op in ("ind", "sub", "eq"):
            return [], g
        if op == "not":
            p, m = go(g.arg)
            return _flip(p), Not(m)
        if op in ("exists", "forall"):
            p, m = go(g.body)
            return [(op, g.var)] + p, m
        if op == "iff":
            if quantifier_free(g.left) and quantifier_free(g.right):
                return [], g
            # both directions; the second copy gets its own bound names
            a2 = rename_apart_with(g.left, fresh)
            b2 = rename_apart_with(g.right, fresh)
            return go(And(Implies(g.left, g.right), Implies(b2, a2)))
        pa, ma = go(g.left)
        pb, mb = go(g.right)
        if op == "implies":
            return _flip(pa) + pb, Implies(ma, mb)
        return pa + pb, rebuild(g, [ma, mb])

    prefix, matrix = go(f)
    return attach_prefix(prefix, matrix)


def rename_apart_with(f, fresh):
    """Rename every binder of f to a brand-new name."""

    @deep
    def go(g, m):
        op = g.op
        if op == "ind":
            return IndAtom(m.get(g.var, g.var))
        if op in ("sub", "eq"):
            return type(g)(m.get(g.left, g.left), m.get(g.right, g.right))
        if op in ("exists", "forall", "exists="):
            nv = fresh(g.var)
            m2 = dict(m)
            m2[g.var] = nv
            body = go(g.body, m2)
            if op == "exists":
                return Exists(nv, body)
            if op == "forall":
                return Forall(nv, body)
            return ExistsExactly(g.k, nv, body)
        return rebuild(g, [go(c, m) for c in children(g)])

    return go(f, {})


# ---------------------------------------------------------------------
# miniscoping: push quantifiers as far in as they go.  Prenex and
# relativized sentences are hopeless to evaluate as written; miniscoping
# recovers most of the original nesting.


def _lits(g, neg, conjunctive):
    """Flatten the conjunctive (or disjunctive) spine of g / ¬g."""
    out = []
    stack = [(g, neg)]
    while stack:
        h, n = stack.pop()
        op = h.op
        if op == "not":
            stack.append((h.arg, not n))
        elif conjunctive and ((op == "and" and not n) or (op == "or" and n)):
            stack += [(h.right, n), (h.left, n)]
        elif conjunctive and op == "implies" and n:
            stack += [(h.right, True), (h.left, False)]
        elif not conjunctive and ((op == "or" and not n) or (op == "and" and n)):
            stack += [(h.right, n), (h.left, n)]
        elif not conjunctive and op == "implies" and not n:
            stack += [(h.right, False), (h.left, True)]
        else:
            out.append((h, n))
    return out


def _lit(h, n):
    return Not(h) if n else h


def _small(h):
    """Literals that are cheap to duplicate when distributing."""
    if h.op in ("ind", "sub", "eq"):
        return True
    if h.op == "exists=" and h.body.op == "sub":
        return True
    return False


class _FreeVars:
    """free_vars with a cache; keeps the formulas alive so ids stay valid."""

    def __init__(self):
        self.cache = {}

    def __call__(self, g):
        hit = self.cache.get(id(g))
        if hit is not None:
            return hit[1]
        op = g.op
        if op == "ind":
            r = frozenset((g.var,))
        elif op in ("sub", "eq"):
            r = frozenset((g.left, g.right))
        elif op in ("exists", "forall", "exists="):
            r = self(g.body) - {g.var}
        else:
            r = frozenset().union(*(self(c) for c in children(g)))
        self.cache[id(g)] = (g, r)
        return r


def miniscope(f):
    """Equivalent formula with quantifier scopes made as small as the
    boolean structure allows.  Uses that every domain is non-empty."""
    fv = _FreeVars()
    for g in postorder(f):  # fill the cache without deep recursion
        fv(g)
    return _miniscope(f, fv)


@deep
def _miniscope(f, fv):
    op = f.op
    if op in ("ind", "sub", "eq"):
        return f
    if op == "not":
        return Not(_miniscope(f.arg, fv))
    if op in ("and", "or", "implies", "iff"):
        return rebuild(f, [_miniscope(f.left, fv), _miniscope(f.right, fv)])
    body = _miniscope(f.body, fv)
    if op == "exists=":
        return ExistsExactly(f.k, f.var, body)
    return _push(op, f.var, body, fv)


def _push(q, v, body, fv):
    if v not in fv(body):
        return body
    conjunctive = q == "exists"
    lits = _lits(body, False, conjunctive)
    join = conj if conjunctive else disj
    # the opposite connective: ∃ distributes over ∨, ∀ over ∧
    if len(lits) == 1:
        h, n = lits[0]
        other = _lits(h, n, not conjunctive)
        if len(other) > 1:
            return (disj if conjunctive else conj)(*[_push(q, v, _lit(a, b), fv) for a, b in other])
        if h.op in ("exists", "forall") and n:
            # ∃v ¬∀w φ = ¬∀v∀w φ etc.
            dual = "forall" if q == "exists" else "exists"
            return Not(_push(dual, v, h, fv))
        return Exists(v, body) if q == "exists" else Forall(v, body)
    without = [(h, n) for h, n in lits if v not in fv(h)]
    with_v = [(h, n) for h, n in lits if v in fv(h)]
    if without:
        inner = _push(q, v, join(*[_lit(h, n) for h, n in with_v]), fv)
        return join(*[_lit(h, n) for h, n in without], inner)
    guards = [(h, n) for h, n in with_v if _small(h)]
    rest = [(h, n) for h, n in with_v if not _small(h)]
    if len(rest) == 1:
        h, n = rest[0]
        other = _lits(h, n, not conjunctive)
        if len(other) > 1:
            g = [_lit(a, b) for a, b in guards]
            split = [_push(q, v, join(*g, _lit(a, b)), fv) for a, b in other]
            return (disj if conjunctive else conj)(*split)
    return Exists(v, body) if q == "exists" else Forall(v, body)


# ---------------------------------------------------------------------
# relativizations


def _guard_nested(f, ex_guard, all_guard, ind=None):
    """Guard every quantifier of f in place: ∃v ψ becomes ∃v (g(v) ∧ ψ), ∀v ψ
    becomes ∀v (g(v) → ψ), ∃_k v ψ counts over g(v) ∧ ψ.  Shared subformulas
    stay shared, so this works on formulas whose prenex form is too big to
    build."""
    memo = {}
    for g in postorder(f):
        op = g.op
        if op == "ind":
            r = ind(g.var) if ind is not None else g
        elif op in ("sub", "eq"):
            r = g
        elif op == "exists":
            r = Exists(g.var, And(ex_guard(g.var), memo[id(g.body)]))
        elif op == "forall":
            r = Forall(g.var, Implies(all_guard(g.var), memo[id(g.body)]))
        elif op == "exists=":
            r = ExistsExactly(g.k, g.var, And(ex_guard(g.var), memo[id(g.body)]))
        else:
            r = rebuild(g, [memo[id(c)] for c in children(g)])
        memo[id(g)] = r
    return memo[id(f)]


def relativize_components(phi, catalog=None, prenex=True):
    """Sentence true in M iff M is a matroid and every connected component
    of M satisfies phi (phi must be a sentence).

    With prenex=False the quantifiers of phi are guarded where they stand
    instead of after conversion to prenex form; same meaning, much smaller
    output for big sentences."""
    from .catalog import Catalog

    if free_vars(phi):
        raise PreconditionError(f"not a sentence: free variables {sorted(free_vars(phi))}")
    c = catalog or Catalog()
    if not prenex:
        c.reserved |= all_vars(phi)
        a = "A" if "A" not in c.reserved else c.fresh("A")
        c.reserved.add(a)
        body = _guard_nested(phi, lambda v: _sub(v, a), lambda v: _sub(v, a))
        return And(c.matroid(), Forall(a, Implies(c.component(a), body)))
    p = to_prenex(phi)
    prefix, matrix = split_prenex(p)
    c.reserved |= all_vars(p)
    a = "A" if "A" not in c.reserved else c.fresh("A")
    c.reserved.add(a)
    body = matrix
    for q, v in reversed(prefix):
        if q == "exists":
            body = Exists(v, And(_sub(v, a), body))
        else:
            body = Forall(v, Implies(_sub(v, a), body))
    return And(c.matroid(), Forall(a, Implies(c.component(a), body)))


def _sub(x, y):
    from .syntax import SubsetAtom
    return SubsetAtom(x, y)


def relativize_transduction(omega, loops_var=None, catalog=None, nested=False):
    """Read a prenex formula over the transduction of every good separation.

    Quantifiers range over unions of blocks (GoodSet), Ind becomes
    Independent.  With ``loops_var`` the formula may use that free
    variable, which is bound to the union of the dependent blocks.
    nested=True accepts any formula and guards its quantifiers in place."""
    from .catalog import Catalog

    if not nested and not is_prenex(omega):
        raise PreconditionError("relativize_transduction needs a prenex formula")
    fv = free_vars(omega)
    allowed = {loops_var} if loops_var else set()
    if fv - allowed:
        raise PreconditionError(f"unexpected free variables {sorted(fv - allowed)}")
    c = catalog or Catalog()
    c.reserved |= all_vars(omega)
    a = c.fresh("A")
    # GoodSeparation[A] is asserted once in the wrapper, so the guards only
    # need the block conditions (GoodSet and Independent minus that conjunct)
    blocks, indep = c.block_kit(a)
    gs, ind = {}, {}

    def guard(v):
        return gs.setdefault(v, blocks(v))

    def ind_atom(v):
        return ind.setdefault(v, indep(v))

    if nested:
        return _wrap_transduction(c, a, loops_var, _guard_nested(omega, guard, guard, ind_atom))
    prefix, matrix = split_prenex(omega)
    body = _guard_nested(matrix, guard, guard, ind_atom)
    for q, v in reversed(prefix):
        if q == "exists":
            body = Exists(v, And(guard(v), body))
        else:
            body = Forall(v, Implies(guard(v), body))
    return _wrap_transduction(c, a, loops_var, body)


def _wrap_transduction(c, a, loops_var, body):
    if loops_var:
        return Forall(a, Forall(loops_var, Implies(
            And(c.good_separation(a), c.loop_wedges(a, loops_var)), body)))
    return Forall(a, Implies(c.good_separation(a), body))
