import random

import pytest
from hypothesis import given, settings, strategies as st

from bicircular.decomposition import canonical_tree, good_separations, transduce
from bicircular.errors import FormulaSyntaxError, MatroidError, PreconditionError, UnboundVariableError
from bicircular.generators import complete_graph, double_u24, random_matroid
from bicircular.graphs import Multigraph, bicircular
from bicircular.logic.catalog import build, catalog_names
from bicircular.logic.evaluate import Compiled, Session, evaluate
from bicircular.logic.syntax import (And, Eq, Exists, ExistsExactly, Forall, Iff, Implies, IndAtom,
                                     Not, Or, SubsetAtom, free_vars, normalize, parse,
                                     quantifier_depth, to_text)
from bicircular.logic.transforms import (expand_exists_exactly, is_prenex, miniscope,
                                         relativize_components, relativize_transduction,
                                         split_prenex, to_prenex)
from bicircular.matroid import SetSystem, direct_sum, separation_masks, uniform

VARS = ["X", "Y", "Z"]

v = st.sampled_from(VARS)
atoms = st.one_of(
    v.map(IndAtom),
    st.tuples(v, v).map(lambda t: SubsetAtom(*t)),
    st.tuples(v, v).map(lambda t: Eq(*t)),
)


def _extend(kids):
    pair = st.tuples(kids, kids)
    return st.one_of(
        kids.map(Not),
        pair.map(lambda t: And(*t)), pair.map(lambda t: Or(*t)),
        pair.map(lambda t: Implies(*t)), pair.map(lambda t: Iff(*t)),
        st.tuples(v, kids).map(lambda t: Exists(*t)),
        st.tuples(v, kids).map(lambda t: Forall(*t)),
        st.tuples(st.integers(0, 3), v, kids).map(lambda t: ExistsExactly(*t)),
    )


formulas = st.recursive(atoms, _extend, max_leaves=10)


def depth(f):
    from bicircular.logic.syntax import children
    return 1 + max((depth(c) for c in children(f)), default=0)


def small_system(seed, n):
    rng = random.Random(seed)
    return SetSystem("abc"[:n], [m for m in range(1 << n) if rng.random() < 0.6])


def theta_for(f, S, seed):
    rng = random.Random(seed)
    return {x: rng.randrange(1 << S.n) for x in free_vars(f)}


# --- syntax -----------------------------------------------------------


def test_parse_examples():
    assert parse("(sub X Y)") == SubsetAtom("X", "Y")
    f = parse("(exists= 2 Xp (sub Xp X))")
    assert f == ExistsExactly(2, "Xp", SubsetAtom("Xp", "X"))
    assert parse("# comment\n(and (ind X) (ind Y) (ind Z))  # trailing\n") == \
        And(IndAtom("X"), And(IndAtom("Y"), IndAtom("Z")))


@pytest.mark.parametrize("text", ["(and (ind X)", "(ind X))", "(frob X)", "(exists= two X (ind X))",
                                  "(sub X)", ""])
def test_parse_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse(text)


def test_parse_error_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("(and\n  (ind X)\n  (bogus Y))", source="f.txt")
    assert info.value.line == 3
    assert "f.txt:3:" in str(info.value)


@settings(max_examples=1000, deadline=None)
@given(formulas.filter(lambda f: depth(f) <= 8))
def test_print_parse_round_trip(f):
    g = parse(to_text(f))
    assert g == f
    assert normalize(g) == normalize(f)


# --- evaluation --------------------------------------------------------


def test_eval_examples():
    U12 = uniform(1, 2)
    assert not evaluate(U12, IndAtom("X"), {"X": ["a", "b"]})
    f = parse("(exists X (and (ind X) (not (exists= 1 Z (sub Z X)))))")
    assert evaluate(U12, f)
    sing = build("Sing")
    for S in (U12, uniform(2, 4), SetSystem("abc", [set()])):
        assert evaluate(S, sing, {"X": ["a"]})
        assert not evaluate(S, sing, {"X": ["a", "b"]})
    with pytest.raises(UnboundVariableError):
        evaluate(U12, IndAtom("X"))


@settings(max_examples=300, deadline=None)
@given(formulas.filter(lambda f: quantifier_depth(f) <= 3), st.integers(0, 3), st.integers(0, 10**6))
def test_memo_evaluator_matches_reference(f, n, seed):
    S = small_system(seed, min(n, 2) if quantifier_depth(f) == 3 else n)
    th = theta_for(f, S, seed)
    assert evaluate(S, f, th) == evaluate(S, f, th, mode="reference")


def test_session_reuse_matches_fresh_calls():
    f = build("k_separation", k=2)
    M = double_u24()
    s = Session(Compiled(f), M)
    for y in range(1 << M.n):
        assert s.query({"X": y}) == evaluate(M, f, {"X": y})


# --- transforms -------------------------------------------------------


def test_expand_examples():
    body = SubsetAtom("Xp", "X")
    e0 = expand_exists_exactly(ExistsExactly(0, "Xp", body))
    assert e0 == Not(Exists("Xp", body))
    e1 = expand_exists_exactly(ExistsExactly(1, "Xp", body))
    assert e1.op == "exists" and e1.body.right.op == "forall"
    e2 = expand_exists_exactly(ExistsExactly(2, "Xp", body))
    # ∃X'∃X''(φ[X'] ∧ φ[X''] ∧ X' ≠ X'' ∧ ∀X'''(φ[X'''] → (X''' = X' ∨ X''' = X'')))
    assert e2.op == "exists" and e2.body.op == "exists"
    inner = e2.body.body
    assert inner.right.right.left == Not(Eq(e2.var, e2.body.var))
    assert "exists=" not in to_text(e2)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_expansion_preserves_eval_on_all_small_systems(k):
    bodies = [parse("(sub W X)"), parse("(and (ind W) (sub W X))"), parse("(not (ind W))")]
    for body in bodies:
        f = ExistsExactly(k, "W", body)
        g = expand_exists_exactly(f)
        for n in range(4):
            for code in range(0, 1 << (1 << n), max(1, (1 << (1 << n)) // 64)):
                S = SetSystem("abc"[:n], [m for m in range(1 << n) if code >> m & 1])
                for x in range(1 << n):
                    assert evaluate(S, f, {"X": x}) == evaluate(S, g, {"X": x}, mode="reference")


def test_prenex_examples():
    f = parse("(and (exists X (ind X)) (ind Y))")
    assert to_prenex(f) == parse("(exists X (and (ind X) (ind Y)))")
    g = parse("(forall X (exists Y (sub X Y)))")
    assert normalize(to_prenex(g)) == normalize(g)
    p = to_prenex(build("Sing"))
    assert is_prenex(p)
    assert len(split_prenex(p)[0]) == 3
    for n in range(4):
        for code in range(1 << (1 << n)):
            S = SetSystem("abc"[:n], [m for m in range(1 << n) if code >> m & 1])
            for x in range(1 << n):
                assert evaluate(S, p, {"X": x}) == (bin(x).count("1") == 1)
            if n == 3 and code > 40:
                break


@settings(max_examples=200, deadline=None)
@given(formulas.filter(lambda f: quantifier_depth(f) <= 3), st.integers(0, 10**6))
def test_prenex_and_miniscope_preserve_eval(f, seed):
    S = small_system(seed, 2)
    th = theta_for(f, S, seed)
    want = evaluate(S, f, th)
    p = to_prenex(f)
    assert is_prenex(p)
    assert evaluate(S, p, th) == want
    assert evaluate(S, miniscope(f), th) == want


def close(f):
    for v in sorted(free_vars(f)):
        f = Exists(v, f)
    return f


def small_matroids():
    out = [uniform(r, n) for n in range(4) for r in range(n + 1)]
    out.append(direct_sum(uniform(0, 1, ["z"]), uniform(2, 3, ["a", "b", "c"])))
    out.append(direct_sum(uniform(1, 2, ["a", "b"]), uniform(1, 1, ["c"])))
    return out


def test_relativize_components_paper_example():
    phi = parse("(exists X1 (forall X2 (and (ind X1) (sub X1 X2))))")
    R = relativize_components(phi)
    # component A: ∃X1 ⊆ A ∀X2 ⊆ A (Ind X1 ∧ X1 ⊆ X2), i.e. X1 = ∅ works
    for M in small_matroids():
        assert evaluate(M, R)
    true = parse("(forall X (sub X X))")
    assert all(evaluate(M, relativize_components(true)) for M in small_matroids())
    with pytest.raises(PreconditionError):
        relativize_components(IndAtom("X"))


@settings(max_examples=40, deadline=None)
@given(formulas.filter(lambda f: quantifier_depth(f) <= 2))
def test_relativize_components_is_componentwise(f):
    phi = close(f)
    R1 = relativize_components(phi)
    R2 = relativize_components(phi, prenex=False)
    for M in small_matroids():
        # the empty matroid counts as one empty component
        comps = M.component_masks() or [0]
        want = all(evaluate(M.restrict_mask(c), phi) for c in comps)
        assert evaluate(M, R1) == want
        assert evaluate(M, R2) == want


def test_main_sentence_on_loop_plus_triangle():
    M = direct_sum(uniform(0, 1, ["z"]), uniform(2, 3, ["a", "b", "c"]))
    assert evaluate(M, build("MainSentence"))


def test_relativize_transduction_errors_and_wrapper():
    with pytest.raises(PreconditionError):
        relativize_transduction(parse("(and (exists X (ind X)) (ind Y))"))
    # no quantifiers to guard: only the wrapper is added
    w = relativize_transduction(parse("(sub L L)"), loops_var="L")
    assert w.op == "forall" and w.body.op == "forall"
    assert w.body.body.op == "implies" and w.body.body.right == parse("(sub L L)")
    with pytest.raises(PreconditionError):
        relativize_transduction(parse("(sub Y Y)"))


def native_transduced(M, omega, loops_var=None):
    """omega on the transduction of every good separation of M."""
    T = canonical_tree(M)
    for A in good_separations(M):
        R = transduce(M, A, T)
        S = R.set_system()
        th = {}
        if loops_var:
            names = S.elements
            th[loops_var] = [names[i] for i, b in enumerate(R.blocks)
                             if not M.is_independent(sorted(b))]
        if not evaluate(S, omega, th):
            return False
    return True


@settings(max_examples=25, deadline=None)
@given(formulas.filter(lambda f: quantifier_depth(f) <= 2))
def test_relativize_transduction_reads_the_transduction(f):
    M = double_u24()
    omega = to_prenex(close(f))
    want = native_transduced(M, omega)
    assert evaluate(M, relativize_transduction(omega)) == want
    assert evaluate(M, relativize_transduction(omega, nested=True)) == want


def test_transduced_bicircular_sentence_on_double_sum():
    from bicircular.logic.catalog import Catalog
    M = double_u24()
    c = Catalog({"L"})
    omega = c.bicircular_loops("L")
    sentence = relativize_transduction(omega, loops_var="L", catalog=c, nested=True)
    # native: each adjacent 3-connected node is U2,4 with the basepoint as a loop
    assert native_transduced(M, build("BicircularLoops", vars=["L"]), loops_var="L")
    assert evaluate(M, sentence)


# --- catalog ------------------------------------------------------------


def test_catalog_examples():
    assert to_text(build("Sing")) == "(exists= 2 X_0 (sub X_0 X))"
    ks = build("k_separation", k=2)
    U34 = uniform(3, 4)
    assert evaluate(U34, ks, {"X": ["a", "b"]})
    assert not evaluate(U34, ks, {"X": ["a"]})
    assert not evaluate(SetSystem("ab", [set(), {"a", "b"}]), build("Matroid"))
    assert evaluate(uniform(2, 4), build("Matroid"))
    with pytest.raises(MatroidError):
        build("NoSuchFormula")
    assert "MainSentence" in catalog_names()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_n_connected_matches_separations(n):
    C = Compiled(build("n_connected", n=n))
    rng = random.Random(n)
    ms = [uniform(r, m) for m in range(6) for r in range(m + 1)]
    ms += [direct_sum(uniform(1, 2), uniform(1, 3, ["x", "y", "z"])), double_u24()]
    ms += [random_matroid(rng, max_n=6) for _ in range(25)]
    for M in ms:
        want = not any(separation_masks(M, k) for k in range(1, n))
        assert Session(C, M).query({}) == want, M


def test_connected_bicircular_sentence_on_small_uniform_matroids():
    # all of these are bicircular; larger inputs take minutes each
    C = Compiled(build("ConnectedBicircular"))
    for r, n in [(1, 1), (1, 3), (2, 3), (2, 4), (3, 4), (2, 5), (3, 5)]:
        assert Session(C, uniform(r, n)).query({})


def test_every_catalog_entry_builds():
    for name in catalog_names():
        if name in ("MainSentence", "ConnectedBicircular"):
            continue
        f = build(name)
        assert parse(to_text(f)) == f


def test_cycle_and_bicycle_formulas_match_graph():
    # every vertex of K5 is committed, so vertices are exactly the stars
    G = complete_graph(5)
    M = bicircular(G)
    cyc = Session(Compiled(build("Cycle", k=0, phi="NonSepCocircuit")), M)
    bic = Session(Compiled(build("Bicycle", k=0, phi="NonSepCocircuit")), M)
    circuits = set(M.circuit_masks())
    rng = random.Random(2)
    ys = [m for m in range(1, 1 << M.n) if G.edge_subgraph(M.names(m)).is_cycle()]
    ys += sorted(circuits)[:30] + [rng.randrange(1, 1 << M.n) for _ in range(60)]
    for y in ys:
        H = G.edge_subgraph(M.names(y))
        assert cyc.query({"Y": y}) == H.is_cycle()
        assert bic.query({"Y": y}) == (y in circuits)
