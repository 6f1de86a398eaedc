"""Named MS0 formulas.

Every entry is built by a method of ``Catalog``; ``build(name, ...)`` is the
string-keyed front end used by the CLI.  Bound variables are fresh names
``<base>_<n>`` drawn from one counter per ``Catalog`` instance, skipping the
caller's free variable names.

Conventions worth knowing when reading the formulas:

* sets of size exactly k are written ∃_{2^k} Z (Z ⊆ X): a k-set has 2^k
  subsets.  Empty and Sing are the k = 0, 1 cases.
* unions, differences and complements are "definitions"
  ∀S(Sing S → (S ⊆ X ↔ ...)), which the evaluator resolves directly.
* the whole ground set is a variable U with ∀Z (Z ⊆ U).
"""

from __future__ import annotations

from ..errors import MatroidError
from .syntax import (And, Eq, Exists, ExistsExactly, Forall, Iff, Implies, IndAtom, Not,
                     Or, SubsetAtom, conj, disj, neq)

Sub = SubsetAtom
Ind = IndAtom


class Catalog:
    def __init__(self, reserved=()):
        self.counter = 0
        self.reserved = set(reserved)

    def fresh(self, base="Z"):
        base = base.split("_")[0] or "Z"
        while True:
            name = f"{base}_{self.counter}"
            self.counter += 1
            if name not in self.reserved:
                self.reserved.add(name)
                return name

    # -----------------------------------------------------------------
    # shorthand

    def card(self, X, k):
        """|X| = k."""
        z = self.fresh(X)
        return ExistsExactly(2 ** k, z, Sub(z, X))

    def empty(self, X):
        return self.card(X, 0)

    def sing(self, X):
        return self.card(X, 1)

    def at_least(self, X, k):
        if k <= 0:
            return Eq(X, X)
        return Not(disj(*[self.card(X, j) for j in range(k)]))

    def full(self, U):
        z = self.fresh("Z")
        return Forall(z, Sub(z, U))

    def define(self, X, expr_of):
        """X is the set of elements s for which expr_of(s) holds, where
        expr_of builds a boolean combination of s ⊆ W atoms."""
        s = self.fresh("S")
        return Forall(s, Implies(self.sing(s), Iff(Sub(s, X), expr_of(s))))

    def union(self, Xs, X):
        if not Xs:
            raise MatroidError("n_union needs at least one part")
        return self.define(X, lambda s: disj(*[Sub(s, Y) for Y in Xs]))

    def reldiff(self, X1, X2, X):
        return self.define(X, lambda s: And(Sub(s, X1), Not(Sub(s, X2))))

    def complement(self, Y, W):
        return self.define(W, lambda s: Not(Sub(s, Y)))

    def meets(self, X, Y):
        s = self.fresh("S")
        return Exists(s, conj(self.sing(s), Sub(s, X), Sub(s, Y)))

    def disjoint(self, X, Y):
        return Not(self.meets(X, Y))

    def basis(self, X, Y):
        """X is a maximal independent subset of Y."""
        z = self.fresh("Z")
        return conj(Sub(X, Y), Ind(X),
                    Forall(z, Implies(And(Sub(X, z), Sub(z, Y)), Or(Eq(z, X), Not(Ind(z))))))

    def basis_of_ground(self, B):
        u = self.fresh("U")
        return Exists(u, And(self.full(u), self.basis(B, u)))

    def circuit(self, C):
        y = self.fresh("Y")
        return And(Not(Ind(C)), Forall(y, Implies(And(Sub(y, C), neq(y, C)), Ind(y))))

    # -----------------------------------------------------------------
    # matroids

    def matroid(self):
        """∅ is independent, subsets of independent sets are independent,
        and circuits satisfy elimination."""
        z, x, y = self.fresh("Z"), self.fresh("X"), self.fresh("Y")
        c1, c2, e, u, d = (self.fresh("C"), self.fresh("C"), self.fresh("S"),
                           self.fresh("U"), self.fresh("D"))
        nonempty_ind = Exists(z, And(self.empty(z), Ind(z)))
        hereditary = Forall(x, Forall(y, Implies(And(Ind(x), Sub(y, x)), Ind(y))))
        elimination = Forall(c1, Forall(c2, Forall(e, Implies(
            conj(self.sing(e), Sub(e, c1), Sub(e, c2), neq(c1, c2), self.circuit(c1),
                 self.circuit(c2)),
            Exists(u, And(self.union([c1, c2], u),
                          Exists(d, conj(Sub(d, u), Not(Sub(e, d)), Not(Ind(d))))))))))
        return conj(nonempty_ind, hereditary, elimination)

    def lambda_below(self, Y, k):
        """r(Y) + r(E-Y) - r(E) < k.

        For a basis B_Y of Y and a basis B of E containing it, B - Y is
        independent in E - Y and r(E-Y) - |B-Y| = λ(Y).  So λ(Y) = i exactly
        when B - Y extends to a basis of E - Y by i more elements."""
        u, w, by, b, y1 = (self.fresh("U"), self.fresh("W"), self.fresh("B"), self.fresh("B"),
                           self.fresh("Y"))
        options = []
        for i in range(k):
            ss = [self.fresh("S") for _ in range(i)]
            if i == 0:
                tail = self.basis(y1, w)
            else:
                y2 = self.fresh("Y")
                tail = Exists(y2, And(self.union([y1] + ss, y2), self.basis(y2, w)))
                distinct = [neq(ss[a], ss[c]) for a in range(i) for c in range(a + 1, i)]
                guards = []
                for s in ss:
                    guards += [self.sing(s), Not(Sub(s, Y))]
                body = conj(*guards, *distinct, tail)
                for s in reversed(ss):
                    body = Exists(s, body)
                tail = body
            options.append(Forall(by, Forall(b, Implies(
                conj(Sub(by, Y), self.basis(by, Y), Sub(by, b), self.basis(b, u)),
                Exists(y1, And(self.reldiff(b, Y, y1), tail))))))
        return Exists(u, conj(self.full(u), Exists(w, And(self.reldiff(u, Y, w),
                                                            disj(*options)))))

    def k_separating(self, Y, k):
        return And(self.matroid(), self.lambda_below(Y, k))

    def k_separation(self, Y, k):
        """(Y, E-Y) is a k-separation of a matroid."""
        w = self.fresh("W")
        return conj(self.matroid(), self.at_least(Y, k),
                    Exists(w, And(self.complement(Y, w), self.at_least(w, k))),
                    self.lambda_below(Y, k))

    def n_connected(self, n):
        parts = [self.matroid()]
        for k in range(1, n):
            y = self.fresh("Y")
            w = self.fresh("W")
            parts.append(Not(Exists(y, conj(
                self.at_least(y, k), Exists(w, And(self.complement(y, w), self.at_least(w, k))),
                self.lambda_below(y, k)))))
        return conj(*parts)

    def component(self, X):
        """X is a connected component (or X = E = ∅)."""
        y, z = self.fresh("Y"), self.fresh("Z")
        empty_ground = And(self.empty(X), Forall(z, self.empty(z)))
        minimal = Forall(y, Implies(conj(Sub(y, X), neq(y, X), Not(self.empty(y))),
                                    Not(self.lambda_below(y, 1))))
        return And(self.matroid(),
                   Or(empty_ground, conj(Not(self.empty(X)), self.lambda_below(X, 1), minimal)))

    # -----------------------------------------------------------------
    # cocircuits

    def meets_every_basis(self, C):
        b = self.fresh("B")
        return Forall(b, Implies(self.basis_of_ground(b), self.meets(C, b)))

    def cocircuit(self, C):
        y = self.fresh("Y")
        return And(self.meets_every_basis(C),
                   Forall(y, Implies(And(Sub(y, C), neq(y, C)), Not(self.meets_every_basis(y)))))

    def nonsep_cocircuit(self, C):
        """Cocircuit such that any two elements outside it share a circuit
        avoiding it."""
        e, f, d = self.fresh("S"), self.fresh("S"), self.fresh("D")
        return And(self.cocircuit(C), Forall(e, Forall(f, Implies(
            conj(self.sing(e), self.sing(f), neq(e, f), Not(Sub(e, C)), Not(Sub(f, C))),
            Exists(d, conj(Sub(e, d), Sub(f, d), self.circuit(d), self.disjoint(d, C)))))))

    def pair_linked(self, D):
        """Every two distinct elements of D lie in a circuit inside D."""
        s, t, z = self.fresh("S"), self.fresh("S"), self.fresh("Z")
        return Forall(s, Forall(t, Implies(
            conj(self.sing(s), self.sing(t), Sub(s, D), Sub(t, D), neq(s, t)),
            Exists(z, conj(Sub(z, D), Sub(s, z), Sub(t, z), self.circuit(z))))))

    def big_component_after_deletion(self, C, D):
        """D is a component of M\\C with at least two elements."""
        d2 = self.fresh("D")
        return conj(self.disjoint(D, C), self.at_least(D, 2), self.pair_linked(D),
                    Forall(d2, Implies(conj(Sub(D, d2), neq(d2, D), self.disjoint(d2, C)),
                                       Not(self.pair_linked(d2)))))

    def flat(self, F):
        i, z, u = self.fresh("I"), self.fresh("S"), self.fresh("U")
        return Forall(i, Forall(z, Implies(
            conj(Sub(i, F), self.basis(i, F), self.sing(z), Not(Sub(z, F))),
            Exists(u, And(self.union([i, z], u), Ind(u))))))

    def union_of_circuits(self, F):
        s, c = self.fresh("S"), self.fresh("C")
        return Forall(s, Implies(And(self.sing(s), Sub(s, F)),
                                 Exists(c, conj(Sub(c, F), Sub(s, c), self.circuit(c)))))

    def cyclic_flat(self, F):
        return And(self.flat(F), self.union_of_circuits(F))

    def clones(self, e, f):
        z = self.fresh("F")
        return Forall(z, Implies(self.cyclic_flat(z), Iff(Sub(e, z), Sub(f, z))))

    def rank2_clonal_class(self, F):
        e, f, g, h, b = (self.fresh("S"), self.fresh("S"), self.fresh("S"), self.fresh("S"),
                         self.fresh("B"))
        inside = Forall(e, Forall(f, Implies(conj(self.sing(e), self.sing(f), Sub(e, F), Sub(f, F)),
                                             self.clones(e, f))))
        maximal = Forall(g, Implies(And(self.sing(g), Not(Sub(g, F))),
                                    Exists(h, conj(self.sing(h), Sub(h, F), Not(self.clones(g, h))))))
        rank2 = Exists(b, conj(Sub(b, F), self.card(b, 2), self.basis(b, F)))
        return conj(Not(self.empty(F)), inside, maximal, rank2)

    def good_cocircuit(self, C):
        d, d2, x, f, z, p = (self.fresh("D"), self.fresh("D"), self.fresh("S"), self.fresh("F"),
                             self.fresh("Z"), self.fresh("P"))
        unique = Exists(d, conj(self.big_component_after_deletion(C, d),
                                Forall(d2, Implies(self.big_component_after_deletion(C, d2),
                                                   Eq(d2, d))),
                                self.coloops_attached(C, d, x, f, z, p)))
        return And(self.cocircuit(C), unique)

    def coloops_attached(self, C, D, x, f, z, p):
        c2 = self.fresh("Z")
        coloop = conj(self.sing(x), Not(Sub(x, C)),
                      Forall(c2, Implies(And(Sub(x, c2), self.circuit(c2)), self.meets(c2, C))))
        witness = Exists(f, conj(Sub(f, C), self.rank2_clonal_class(f), Exists(z, conj(
            Sub(x, z), self.circuit(z), self.meets(z, D),
            Exists(p, conj(self.inter(z, C, p), self.card(p, 2), Sub(p, f)))))))
        return Forall(x, Implies(coloop, witness))

    def inter(self, X1, X2, X):
        return self.define(X, lambda s: And(Sub(s, X1), Sub(s, X2)))

    # -----------------------------------------------------------------
    # graphical families: vertices are the sets satisfying phi plus X1..Xk

    def phi(self, name):
        name = (name or "false").lower()
        if name in ("false", "none", "never"):
            return lambda V: And(Ind(V), Not(Ind(V)))
        if name in ("nonsepcocircuit", "nonsep"):
            return self.nonsep_cocircuit
        if name in ("goodcocircuit", "good"):
            return self.good_cocircuit
        if name in ("cocircuit",):
            return self.cocircuit
        raise MatroidError(f"unknown inner formula {name!r}")

    def vertex(self, phi, Xs, V):
        return disj(phi(V), *[Eq(V, X) for X in Xs])

    def incidence_count(self, phi, Xs, S, k):
        v = self.fresh("V")
        return ExistsExactly(k, v, And(Sub(S, v), self.vertex(phi, Xs, v)))

    def graphical(self, phi, Xs):
        s = self.fresh("S")
        return Forall(s, Implies(self.sing(s), Or(self.incidence_count(phi, Xs, s, 1),
                                                  self.incidence_count(phi, Xs, s, 2))))

    def connected(self, phi, Xs, Y):
        p, v = self.fresh("P"), self.fresh("V")
        s, t = self.fresh("S"), self.fresh("S")
        crossing = Exists(v, conj(
            self.vertex(phi, Xs, v),
            Exists(s, conj(self.sing(s), Sub(s, v), Sub(s, p))),
            Exists(t, conj(self.sing(t), Sub(t, v), Sub(t, Y), Not(Sub(t, p))))))
        return And(self.graphical(phi, Xs), Forall(p, Implies(
            conj(Sub(p, Y), neq(p, Y), Not(self.empty(p))), crossing)))

    def cycle(self, phi, Xs, Y):
        s, v, t, t2 = self.fresh("S"), self.fresh("V"), self.fresh("S"), self.fresh("S")
        loop = And(self.sing(Y), self.incidence_count(phi, Xs, Y, 1))
        no_loops = Forall(s, Implies(And(self.sing(s), Sub(s, Y)),
                                     Not(self.incidence_count(phi, Xs, s, 1))))
        even = Forall(v, Implies(self.vertex(phi, Xs, v), Or(
            ExistsExactly(2, t, conj(self.sing(t), Sub(t, v), Sub(t, Y))),
            Not(Exists(t2, conj(self.sing(t2), Sub(t2, v), Sub(t2, Y)))))))
        return conj(Not(self.empty(Y)), self.connected(phi, Xs, Y), Or(loop, And(no_loops, even)))

    def two_cycles(self, phi, Xs, Y):
        c1, c2 = self.fresh("C"), self.fresh("C")
        return Exists(c1, Exists(c2, conj(Sub(c1, Y), Sub(c2, Y), neq(c1, c2),
                                          self.cycle(phi, Xs, c1), self.cycle(phi, Xs, c2))))

    def bicycle(self, phi, Xs, Y):
        z = self.fresh("Z")
        return conj(self.graphical(phi, Xs), self.connected(phi, Xs, Y), self.two_cycles(phi, Xs, Y),
                    Forall(z, Implies(And(Sub(z, Y), neq(z, Y)),
                                      Not(And(self.connected(phi, Xs, z),
                                              self.two_cycles(phi, Xs, z))))))

    def bicircular(self, phi, Xs):
        y = self.fresh("Y")
        return conj(self.matroid(), self.graphical(phi, Xs),
                    Forall(y, Iff(self.circuit(y), self.bicycle(phi, Xs, y))))

    def loops_in(self, phi, Xs, X):
        s = self.fresh("S")
        return Forall(s, Implies(And(self.sing(s), Sub(s, X)), self.incidence_count(phi, Xs, s, 1)))

    def rooted_case(self, phi, i, X):
        Xs = [self.fresh("X") for _ in range(i)]
        # the loop condition is cheap and prunes most tuples, so it goes first
        body = And(self.loops_in(phi, Xs, X), self.bicircular(phi, Xs))
        for v in reversed(Xs):
            body = Exists(v, body)
        return body

    def bicircular_loops(self, X):
        """(M, X) is a 3-connected rooted bicircular matroid."""
        never = self.phi("false")
        small = [self.rooted_case(never, i, X) for i in range(1, 5)]
        nonsep = [self.rooted_case(self.nonsep_cocircuit, i, X) for i in range(0, 4)]
        good = [self.rooted_case(self.good_cocircuit, 0, X)]
        return And(self.n_connected(3), disj(*small, *nonsep, *good))

    # -----------------------------------------------------------------
    # 2-separations, wedges and the transduction

    def in_closure(self, A, s):
        """s ∈ cl(A), for a singleton s outside A."""
        b, u = self.fresh("B"), self.fresh("U")
        return Exists(b, conj(Sub(b, A), self.basis(b, A),
                              Exists(u, And(self.union([b, s], u), Not(Ind(u))))))

    def in_coclosure(self, A, s):
        """s ∈ cl*(A) for a singleton s outside A: s ∉ cl(E - A - s)."""
        w = self.fresh("W")
        rest = self.define(w, lambda t: And(Not(Sub(t, A)), Not(Sub(t, s))))
        return Exists(w, And(rest, Not(self.in_closure(w, s))))

    def closures_avoid(self, A):
        s, t = self.fresh("S"), self.fresh("S")
        return And(Forall(s, Implies(And(self.sing(s), Not(Sub(s, A))), Not(self.in_closure(A, s)))),
                   Forall(t, Implies(And(self.sing(t), Not(Sub(t, A))), Not(self.in_coclosure(A, t)))))

    def wedge(self, A, W):
        """W is maximal among 2-separating non-empty proper subsets of E - A."""
        b, w2 = self.fresh("B"), self.fresh("W")
        return Exists(b, conj(
            self.complement(A, b), Sub(W, b), neq(W, b), Not(self.empty(W)),
            self.lambda_below(W, 2),
            Forall(w2, Implies(conj(Sub(W, w2), Sub(w2, b), neq(w2, W), neq(w2, b)),
                               Not(self.lambda_below(w2, 2))))))

    def skew(self, X, Y, cocircuits=False):
        u, z = self.fresh("U"), self.fresh("Z")
        cyc = self.cocircuit(z) if cocircuits else self.circuit(z)
        return Forall(u, Implies(self.union([X, Y], u), Forall(z, Implies(
            And(Sub(z, u), cyc), Not(And(self.meets(z, X), self.meets(z, Y)))))))

    def good_separation(self, A):
        w1, w2 = self.fresh("W"), self.fresh("W")
        return conj(self.k_separation(A, 2), self.closures_avoid(A), Forall(w1, Forall(w2, Implies(
            conj(neq(w1, w2), self.wedge(A, w1), self.wedge(A, w2)),
            conj(self.disjoint(w1, w2), self.skew(w1, w2), self.skew(w1, w2, cocircuits=True))))))

    def block_kit(self, A):
        """Two builders for reading formulas over the transduction of A,
        for use where GoodSeparation[A] already holds: Z is a union of
        blocks, and the union of blocks Z is independent.  Every formula
        they build shares one Wedge[A, W] node (and one Sing, one Circuit),
        so thousands of guards cost little."""
        s, w, c = self.fresh("S"), self.fresh("W"), self.fresh("C")
        sing_s, wedge_w, circ_c = self.sing(s), self.wedge(A, w), self.circuit(c)

        def blocks(Z):
            return Forall(s, Implies(And(sing_s, Sub(s, Z)), Exists(
                w, conj(Sub(s, w), Sub(w, Z), Or(Eq(w, A), wedge_w)))))

        def indep(Z):
            return Forall(c, Implies(And(Sub(c, Z), circ_c),
                                     Or(Sub(c, A), Exists(w, And(Sub(c, w), wedge_w)))))

        return blocks, indep

    def good_set(self, A, Z):
        """Z is a union of blocks: A and the wedges relative to A."""
        blocks, _ = self.block_kit(A)
        return And(self.good_separation(A), blocks(Z))

    def independent(self, A, Z):
        """Z, read as a set of blocks, is independent in the transduction."""
        blocks, indep = self.block_kit(A)
        return conj(self.good_separation(A), blocks(Z), indep(Z))

    def loop_wedges(self, A, X):
        """X is the union of the dependent wedges, together with A if A is
        dependent."""
        s, w, w2 = self.fresh("S"), self.fresh("W"), self.fresh("W")
        covered = Forall(s, Implies(And(self.sing(s), Sub(s, X)), Or(
            And(Sub(s, A), Not(Ind(A))),
            Exists(w, conj(Sub(s, w), Not(Ind(w)), self.wedge(A, w))))))
        contains = Forall(w2, Implies(conj(Not(Ind(w2)), self.wedge(A, w2)), Sub(w2, X)))
        return conj(self.good_separation(A), covered, contains, Implies(Not(Ind(A)), Sub(A, X)))

    def degree3_circuit_node(self):
        a, b, b1, b2, d1, d2, s = (self.fresh("A"), self.fresh("B"), self.fresh("B"),
                                   self.fresh("B"), self.fresh("D"), self.fresh("D"),
                                   self.fresh("S"))
        return Exists(a, conj(self.k_separation(a, 2), Exists(b, conj(
            self.complement(a, b),
            Exists(b1, conj(Sub(b1, b), self.wedge(a, b1), Exists(b2, conj(
                Sub(b2, b), self.wedge(a, b2), self.union([b1, b2], b),
                Exists(d1, And(self.reldiff(b, b1, d1), Exists(d2, conj(
                    self.reldiff(b, b2, d2), self.at_least(d1, 2), self.at_least(d2, 2),
                    Not(self.skew(d1, d2, cocircuits=True)))))),
                Forall(s, Implies(And(self.sing(s), Sub(s, a)),
                                  Not(self.in_coclosure(b1, s))))))))))))

    def single_loop(self):
        """M is U_{0,1}."""
        s, z = self.fresh("S"), self.fresh("Z")
        return Exists(s, conj(self.sing(s), Not(Ind(s)), Forall(z, Sub(z, s))))

    def connected_bicircular(self, transduced=True):
        """Sentence for connected bicircular matroids."""
        from .transforms import relativize_transduction
        x, y = self.fresh("X"), self.fresh("X")
        three = Implies(self.n_connected(3), Exists(x, And(self.empty(x), self.bicircular_loops(x))))
        parts = [Not(self.degree3_circuit_node()), three]
        if transduced:
            inner = Catalog(self.reserved | {y})
            inner.counter = self.counter
            # the prenex form of this formula is far too big to build, so the
            # quantifiers are guarded where they stand
            omega = inner.bicircular_loops(y)
            self.counter = inner.counter
            parts.append(relativize_transduction(omega, loops_var=y, catalog=self, nested=True))
        return conj(self.matroid(), self.n_connected(2), Or(self.single_loop(), conj(*parts)))

    def main_sentence(self):
        from .transforms import relativize_components
        return relativize_components(self.connected_bicircular(), catalog=self, prenex=False)


# ---------------------------------------------------------------------
# string front end

_ENTRIES = {}


def _entry(name, arity_doc):
    def deco(fn):
        _ENTRIES[name.lower()] = (name, fn, arity_doc)
        return fn
    return deco


def _vars(given, default):
    vs = list(given) if given else list(default)
    if len(vs) != len(default):
        raise MatroidError(f"expected {len(default)} variable(s) {default}, got {vs}")
    return vs


def _xs(k):
    return [f"X{i}" for i in range(1, k + 1)]


@_entry("Empty", "[X]")
def _b_empty(c, vs, k, n, phi):
    (X,) = _vars(vs, ["X"])
    return c.empty(X)


@_entry("Sing", "[X]")
def _b_sing(c, vs, k, n, phi):
    (X,) = _vars(vs, ["X"])
    return c.sing(X)


@_entry("Basis", "[X, Y]: X is a basis of Y")
def _b_basis(c, vs, k, n, phi):
    X, Y = _vars(vs, ["X", "Y"])
    return c.basis(X, Y)


@_entry("n_union", "[X1..Xn, X], n from --n (default 2)")
def _b_union(c, vs, k, n, phi):
    n = n or 2
    v = _vars(vs, _xs(n) + ["X"])
    return c.union(v[:-1], v[-1])


@_entry("RelDiff", "[X1, X2, X]: X = X1 - X2")
def _b_reldiff(c, vs, k, n, phi):
    X1, X2, X = _vars(vs, ["X1", "X2", "X"])
    return c.reldiff(X1, X2, X)


@_entry("Matroid", "sentence")
def _b_matroid(c, vs, k, n, phi):
    _vars(vs, [])
    return c.matroid()


@_entry("Circuit", "[X]")
def _b_circuit(c, vs, k, n, phi):
    (X,) = _vars(vs, ["X"])
    return c.circuit(X)


@_entry("Cocircuit", "[X]")
def _b_cocircuit(c, vs, k, n, phi):
    (X,) = _vars(vs, ["X"])
    return c.cocircuit(X)


@_entry("k_separation", "[X], k from --k (default 2)")
def _b_ksep(c, vs, k, n, phi):
    (X,) = _vars(vs, ["X"])
    return c.k_separation(X, k or 2)


@_entry("k_separating", "[X], k from --k (default 2)")
def _b_kseping(c, vs, k, n, phi):
    (X,) = _vars(vs, ["X"])
    return c.k_separating(X, k or 2)


@_entry("n_connected", "sentence, n from --n (default 2)")
def _b_nconn(c, vs, k, n, phi):
    _vars(vs, [])
    return c.n_connected(n or 2)


@_entry("Component", "[X]")
def _b_component(c, vs, k, n, phi):
    (X,) = _vars(vs, ["X"])
    return c.component(X)


@_entry("Vertex", "[X1..Xk, Y]")
def _b_vertex(c, vs, k, n, phi):
    v = _vars(vs, _xs(k or 0) + ["Y"])
    return c.vertex(c.phi(phi), v[:-1], v[-1])


@_entry("Graphical", "[X1..Xk]")
def _b_graphical(c, vs, k, n, phi):
    v = _vars(vs, _xs(k or 0))
    return c.graphical(c.phi(phi), v)


@_entry("Connected", "[X1..Xk, Y]")
def _b_connected(c, vs, k, n, phi):
    v = _vars(vs, _xs(k or 0) + ["Y"])
    return c.connected(c.phi(phi), v[:-1], v[-1])


@_entry("Cycle", "[X1..Xk, Y]")
def _b_cycle(c, vs, k, n, phi):
    v = _vars(vs, _xs(k or 0) + ["Y"])
    return c.cycle(c.phi(phi), v[:-1], v[-1])


@_entry("Bicycle", "[X1..Xk, Y]")
def _b_bicycle(c, vs, k, n, phi):
    v = _vars(vs, _xs(k or 0) + ["Y"])
    return c.bicycle(c.phi(phi), v[:-1], v[-1])


@_entry("Bicircular", "[X1..Xk]")
def _b_bicircular(c, vs, k, n, phi):
    v = _vars(vs, _xs(k or 0))
    return c.bicircular(c.phi(phi), v)


@_entry("NonSepCocircuit", "[X]")
def _b_nonsep(c, vs, k, n, phi):
    (X,) = _vars(vs, ["X"])
    return c.nonsep_cocircuit(X)


@_entry("GoodCocircuit", "[X]")
def _b_good(c, vs, k, n, phi):
    (X,) = _vars(vs, ["X"])
    return c.good_cocircuit(X)


@_entry("CyclicFlat", "[X]")
def _b_cflat(c, vs, k, n, phi):
    (X,) = _vars(vs, ["X"])
    return c.cyclic_flat(X)


@_entry("Clones", "[X, Y] (singletons)")
def _b_clones(c, vs, k, n, phi):
    X, Y = _vars(vs, ["X", "Y"])
    return c.clones(X, Y)


@_entry("Rank2ClonalClass", "[X]")
def _b_r2cc(c, vs, k, n, phi):
    (X,) = _vars(vs, ["X"])
    return c.rank2_clonal_class(X)


@_entry("BicircularLoops", "[X]")
def _b_bloops(c, vs, k, n, phi):
    (X,) = _vars(vs, ["X"])
    return c.bicircular_loops(X)


@_entry("Wedge", "[A, W]")
def _b_wedge(c, vs, k, n, phi):
    A, W = _vars(vs, ["A", "W"])
    return c.wedge(A, W)


@_entry("GoodSeparation", "[A]")
def _b_goodsep(c, vs, k, n, phi):
    (A,) = _vars(vs, ["A"])
    return c.good_separation(A)


@_entry("GoodSet", "[A, X]")
def _b_goodset(c, vs, k, n, phi):
    A, X = _vars(vs, ["A", "X"])
    return c.good_set(A, X)


@_entry("Independent", "[A, X]")
def _b_indep(c, vs, k, n, phi):
    A, X = _vars(vs, ["A", "X"])
    return c.independent(A, X)


@_entry("LoopWedges", "[A, X]")
def _b_loopwedges(c, vs, k, n, phi):
    A, X = _vars(vs, ["A", "X"])
    return c.loop_wedges(A, X)


@_entry("Degree3CircuitNode", "sentence")
def _b_deg3(c, vs, k, n, phi):
    _vars(vs, [])
    return c.degree3_circuit_node()


@_entry("ConnectedBicircular", "sentence")
def _b_connbic(c, vs, k, n, phi):
    _vars(vs, [])
    return c.connected_bicircular()


@_entry("MainSentence", "sentence")
def _b_main(c, vs, k, n, phi):
    _vars(vs, [])
    return c.main_sentence()


def catalog_names():
    return sorted(v[0] for v in _ENTRIES.values())


def describe(name):
    entry = _ENTRIES.get(name.lower())
    if entry is None:
        raise MatroidError(f"unknown formula {name!r}")
    return f"{entry[0]} {entry[2]}"


def build(name, params=None, *, vars=None, k=None, n=None, phi=None):
    """Build a catalog formula by name.

    ``params`` may be a dict with keys vars/k/n/phi, or a list of variable
    names (with optional "k=2" style items)."""
    if isinstance(params, dict):
        vars = params.get("vars", vars)
        k = params.get("k", k)
        n = params.get("n", n)
        phi = params.get("phi", phi)
    elif params is not None:
        vs = []
        for p in params:
            if isinstance(p, str) and "=" in p:
                key, val = p.split("=", 1)
                if key == "k":
                    k = int(val)
                elif key == "n":
                    n = int(val)
                elif key == "phi":
                    phi = val
                else:
                    raise MatroidError(f"unknown parameter {key!r}")
            else:
                vs.append(p)
        vars = vs or vars
    entry = _ENTRIES.get(name.lower())
    if entry is None:
        raise MatroidError(f"unknown formula {name!r}; known: {', '.join(catalog_names())}")
    c = Catalog(reserved=vars or ())
    return entry[1](c, vars, k, n, phi)
