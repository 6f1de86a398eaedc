"""MS0 formulas: abstract syntax, concrete s-expression syntax, variables.

Concrete syntax (prefix, parenthesised):

    (ind X) (sub X Y) (eq X Y) (not f) (and f g ...) (or f g ...)
    (implies f g) (iff f g) (exists X f) (forall X f) (exists= k X f)

``and``/``or`` with more than two arguments fold to the right.  ``#``
starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
import sys
import threading
from typing import NamedTuple, Union

from ..errors import FormulaSyntaxError


class IndAtom(NamedTuple):
    var: str
    op: str = "ind"


class SubsetAtom(NamedTuple):
    left: str
    right: str
    op: str = "sub"


class Eq(NamedTuple):
    left: str
    right: str
    op: str = "eq"


class Not(NamedTuple):
    arg: "Formula"
    op: str = "not"


class And(NamedTuple):
    left: "Formula"
    right: "Formula"
    op: str = "and"


class Or(NamedTuple):
    left: "Formula"
    right: "Formula"
    op: str = "or"


class Implies(NamedTuple):
    left: "Formula"
    right: "Formula"
    op: str = "implies"


class Iff(NamedTuple):
    left: "Formula"
    right: "Formula"
    op: str = "iff"


class Exists(NamedTuple):
    var: str
    body: "Formula"
    op: str = "exists"


class Forall(NamedTuple):
    var: str
    body: "Formula"
    op: str = "forall"


class ExistsExactly(NamedTuple):
    k: int
    var: str
    body: "Formula"
    op: str = "exists="


Formula = Union[IndAtom, SubsetAtom, Eq, Not, And, Or, Implies, Iff, Exists, Forall, ExistsExactly]

ATOMS = ("ind", "sub", "eq")
BINARY = ("and", "or", "implies", "iff")
QUANT = ("exists", "forall", "exists=")
BINARY_CLS = {"and": And, "or": Or, "implies": Implies, "iff": Iff}


def children(f):
    op = f.op
    if op in ATOMS:
        return ()
    if op == "not":
        return (f.arg,)
    if op in BINARY:
        return (f.left, f.right)
    return (f.body,)


def rebuild(f, kids):
    """Same node kind and variables, new children."""
    op = f.op
    if op == "not":
        return Not(kids[0])
    if op in BINARY:
        return BINARY_CLS[op](kids[0], kids[1])
    if op == "exists":
        return Exists(f.var, kids[0])
    if op == "forall":
        return Forall(f.var, kids[0])
    if op == "exists=":
        return ExistsExactly(f.k, f.var, kids[0])
    return f


# ---------------------------------------------------------------------
# deep formulas: prenex chains nest thousands of levels, so anything
# recursive runs on a thread with a large stack


_DEEP = threading.local()


def deep(fn):
    """Run fn on a big-stack thread unless we are already on one."""

    def wrapper(*args, **kwargs):
        if getattr(_DEEP, "active", False):
            return fn(*args, **kwargs)
        box = {}

        def run():
            _DEEP.active = True
            try:
                box["value"] = fn(*args, **kwargs)
            except BaseException as exc:  # re-raised on the caller's thread
                box["error"] = exc

        old_limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old_limit, 200000))
        old_size = threading.stack_size()
        threading.stack_size(512 * 1024 * 1024)
        try:
            t = threading.Thread(target=run)
            t.start()
            t.join()
        finally:
            threading.stack_size(old_size)
        if "error" in box:
            raise box["error"]
        return box["value"]

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def postorder(f):
    """Distinct subformula objects (by identity), children before parents."""
    seen = set()
    out = []
    stack = [(f, False)]
    while stack:
        g, done = stack.pop()
        if done:
            out.append(g)
            continue
        if id(g) in seen:
            continue
        seen.add(id(g))
        stack.append((g, True))
        for c in children(g):
            if id(c) not in seen:
                stack.append((c, False))
    return out


def free_vars(f) -> frozenset:
    memo = {}
    for g in postorder(f):
        op = g.op
        if op == "ind":
            r = frozenset((g.var,))
        elif op in ("sub", "eq"):
            r = frozenset((g.left, g.right))
        elif op in QUANT:
            r = memo[id(g.body)] - {g.var}
        else:
            r = frozenset().union(*(memo[id(c)] for c in children(g)))
        memo[id(g)] = r
    return memo[id(f)]


def all_vars(f) -> set:
    out = set()
    for g in postorder(f):
        op = g.op
        if op == "ind":
            out.add(g.var)
        elif op in ("sub", "eq"):
            out.update((g.left, g.right))
        elif op in QUANT:
            out.add(g.var)
    return out


def size(f) -> int:
    """Number of nodes, counting shared subtrees each time they occur."""
    memo = {}
    for g in postorder(f):
        memo[id(g)] = 1 + sum(memo[id(c)] for c in children(g))
    return memo[id(f)]


def quantifier_depth(f) -> int:
    memo = {}
    for g in postorder(f):
        d = max((memo[id(c)] for c in children(g)), default=0)
        memo[id(g)] = d + (1 if g.op in QUANT else 0)
    return memo[id(f)]


def is_sentence(f) -> bool:
    return not free_vars(f)


# ---------------------------------------------------------------------
# printing


def to_text(f) -> str:
    """Canonical single-line form."""
    parts = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, str):
            parts.append(g)
            continue
        op = g.op
        if op == "ind":
            parts.append(f"(ind {g.var})")
        elif op in ("sub", "eq"):
            parts.append(f"({op} {g.left} {g.right})")
        elif op == "not":
            parts.append("(not ")
            stack += [")", g.arg]
        elif op in BINARY:
            parts.append(f"({op} ")
            stack += [")", g.right, " ", g.left]
        elif op == "exists=":
            parts.append(f"(exists= {g.k} {g.var} ")
            stack += [")", g.body]
        else:
            parts.append(f"({op} {g.var} ")
            stack += [")", g.body]
    return "".join(parts)


print_formula = to_text


# ---------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s+|#[^\n]*|\(|\)|[A-Za-z0-9_]+=?|.")
_VAR = re.compile(r"[A-Za-z0-9_]+")


def _tokenize(text, source=None):
    toks = []
    line, col = 1, 1
    for m in _TOKEN.finditer(text):
        s = m.group(0)
        if s[0].isspace() or s[0] == "#":
            pass
        elif s in "()" or _VAR.fullmatch(s.rstrip("=")):
            toks.append((s, line, col))
        else:
            raise FormulaSyntaxError(f"unexpected character {s!r}", line, col, source)
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
    return toks, (line, col)


def parse(text: str, source=None):
    toks, end = _tokenize(text, source)
    pos = 0

    def err(msg, tok=None):
        if tok is None:
            raise FormulaSyntaxError(msg, end[0], end[1], source)
        raise FormulaSyntaxError(msg, tok[1], tok[2], source)

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        t = peek()
        if t is None:
            err("unexpected end of input (unbalanced parentheses?)")
        pos += 1
        return t

    def var():
        t = take()
        if t[0] in "()" or not _VAR.fullmatch(t[0]):
            err(f"expected a variable name, got {t[0]!r}", t)
        return t[0]

    # explicit stack so deep prenex chains parse without recursion
    # frames: [op, token, collected children, expected count or None, extra]
    result = None
    stack = []

    def start_node():
        t = take()
        if t[0] != "(":
            err(f"expected '(' got {t[0]!r}", t)
        o = take()
        op = o[0]
        if op == "ind":
            v = var()
            close()
            return IndAtom(v)
        if op in ("sub", "eq"):
            a, b = var(), var()
            close()
            return SubsetAtom(a, b) if op == "sub" else Eq(a, b)
        if op == "not":
            stack.append(["not", o, [], 1, None])
            return None
        if op in BINARY:
            stack.append([op, o, [], None if op in ("and", "or") else 2, None])
            return None
        if op in ("exists", "forall"):
            stack.append([op, o, [], 1, var()])
            return None
        if op == "exists=":
            kt = take()
            if not kt[0].isdigit():
                err(f"expected a count after exists=, got {kt[0]!r}", kt)
            stack.append([op, o, [], 1, (int(kt[0]), var())])
            return None
        err(f"unknown operator {op!r}", o)

    def close():
        t = take()
        if t[0] != ")":
            err(f"expected ')' got {t[0]!r}", t)

    def finish(frame):
        op, tok, kids, _, extra = frame
        if op == "not":
            return Not(kids[0])
        if op in ("and", "or"):
            if len(kids) < 2:
                err(f"{op} needs at least two arguments", tok)
            out = kids[-1]
            for k in reversed(kids[:-1]):
                out = BINARY_CLS[op](k, out)
            return out
        if op in BINARY:
            return BINARY_CLS[op](kids[0], kids[1])
        if op == "exists":
            return Exists(extra, kids[0])
        if op == "forall":
            return Forall(extra, kids[0])
        return ExistsExactly(extra[0], extra[1], kids[0])

    node = start_node()
    while True:
        if node is not None:
            if not stack:
                result = node
                break
            stack[-1][2].append(node)
            node = None
        top = stack[-1]
        want = top[3]
        nxt = peek()
        if want is not None and len(top[2]) == want:
            close()
            node = finish(stack.pop())
            continue
        if want is None and nxt is not None and nxt[0] == ")":
            close()
            node = finish(stack.pop())
            continue
        if nxt is None:
            err("unexpected end of input (unbalanced parentheses?)")
        node = start_node()
    if pos != len(toks):
        err(f"trailing input {toks[pos][0]!r}", toks[pos])
    return result


# ---------------------------------------------------------------------
# renaming


def rename_free(f, mapping):
    """Substitute free variables by name.  Bound variables that would
    capture a new name are renamed away first."""
    if not mapping:
        return f
    targets = set(mapping.values())
    taken = all_vars(f) | targets | set(mapping)
    counter = [0]

    def fresh(base):
        while True:
            name = f"{base}_{counter[0]}"
            counter[0] += 1
            if name not in taken:
                taken.add(name)
                return name

    @deep
    def go(g, m):
        op = g.op
        if op == "ind":
            return IndAtom(m.get(g.var, g.var))
        if op == "sub":
            return SubsetAtom(m.get(g.left, g.left), m.get(g.right, g.right))
        if op == "eq":
            return Eq(m.get(g.left, g.left), m.get(g.right, g.right))
        if op in QUANT:
            v = g.var
            m2 = {k: x for k, x in m.items() if k != v}
            if v in targets and m2:
                nv = fresh(v.split("_")[0])
                m2[v] = nv
                v = nv
            body = go(g.body, m2) if m2 else g.body
            if op == "exists":
                return Exists(v, body)
            if op == "forall":
                return Forall(v, body)
            return ExistsExactly(g.k, v, body)
        return rebuild(g, [go(c, m) for c in children(g)])

    return go(f, dict(mapping))


def normalize(f):
    """Alpha-normal form: bound variables renamed v0, v1, ... in order of
    their binders (pre-order).  Free variables are kept."""
    free = free_vars(f)
    counter = [0]

    def fresh():
        while True:
            name = f"v{counter[0]}"
            counter[0] += 1
            if name not in free:
                return name

    @deep
    def go(g, m):
        op = g.op
        if op == "ind":
            return IndAtom(m.get(g.var, g.var))
        if op == "sub":
            return SubsetAtom(m.get(g.left, g.left), m.get(g.right, g.right))
        if op == "eq":
            return Eq(m.get(g.left, g.left), m.get(g.right, g.right))
        if op in QUANT:
            nv = fresh()
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


def alpha_equal(f, g) -> bool:
    return normalize(f) == normalize(g)


def check_binding_discipline(f) -> bool:
    """No variable is free in one operand of a binary connective while bound
    in the other."""
    fv = {}
    bv = {}
    for g in postorder(f):
        op = g.op
        if op == "ind":
            fv[id(g)] = frozenset((g.var,))
            bv[id(g)] = frozenset()
        elif op in ("sub", "eq"):
            fv[id(g)] = frozenset((g.left, g.right))
            bv[id(g)] = frozenset()
        elif op in QUANT:
            fv[id(g)] = fv[id(g.body)] - {g.var}
            bv[id(g)] = bv[id(g.body)] | {g.var}
        elif op == "not":
            fv[id(g)], bv[id(g)] = fv[id(g.arg)], bv[id(g.arg)]
        else:
            a, b = id(g.left), id(g.right)
            if fv[a] & bv[b] or fv[b] & bv[a]:
                return False
            fv[id(g)] = fv[a] | fv[b]
            bv[id(g)] = bv[a] | bv[b]
    return True


# ---------------------------------------------------------------------
# small builders


def conj(*fs):
    fs = [f for f in fs if f is not None]
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def disj(*fs):
    fs = [f for f in fs if f is not None]
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


def neq(a, b):
    return Not(Eq(a, b))


def exists_many(vs, body):
    for v in reversed(list(vs)):
        body = Exists(v, body)
    return body


def forall_many(vs, body):
    for v in reversed(list(vs)):
        body = Forall(v, body)
    return body
