import io
import random

import pytest

from bicircular.cli import decompose_forest, main
from bicircular.formats import parse_forest, parse_graph, parse_set_system, write_set_system
from bicircular.generators import double_u24, fano, random_matroid
from bicircular.graphs import fast_bicircular
from bicircular.matroid import direct_sum, uniform

from conftest import data


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_check_structural():
    code, out, _ = run("check", data("double_u24.ss"))
    assert code == 0 and out.startswith("bicircular\n")
    G = parse_graph(out.split("\n", 1)[1])
    assert fast_bicircular(G) == double_u24()
    code, out, _ = run("check", data("degree3.ss"))
    assert code == 1 and out.strip() == "not bicircular: circuit node of degree 3"


def test_check_both_modes():
    code, out, _ = run("check", "--mode", "both", data("f7.ss"))
    assert code == 1
    assert out.strip() == "not bicircular; oracle agrees (279936 graphs searched)"
    code, out, _ = run("check", "--mode", "both", data("u01_u23.ss"))
    assert code == 0 and out.startswith("bicircular; oracle agrees")


def test_check_oracle_mode():
    code, out, _ = run("check", "--mode", "oracle", data("u24.ss"))
    assert code == 0 and out.startswith("bicircular (")


def test_flags_after_the_verb():
    code, out, _ = run("check", data("u24.ss"), "--verbose", "--jobs", "1")
    assert code == 0 and "# " in out


def test_errors():
    code, out, err = run("check", data("bad.ss"))
    assert code == 2 and err.strip().endswith("bad.ss:3:7: unknown element 'q'")
    code, _, err = run("check", data("notmatroid.ss"))
    assert code == 2 and "not a matroid" in err
    code, _, err = run("check", data("missing.ss"))
    assert code == 2 and err.startswith("error:")
    code, _, err = run("emit", "NoSuchFormula")
    assert code == 2


def test_bmatroid():
    code, out, _ = run("bmatroid", data("theta3.graph"))
    assert code == 0 and parse_set_system(out) == uniform(2, 3)
    code, out, _ = run("bmatroid", "--circuits", data("wheel4.graph"))
    assert code == 0 and "circuit" in out


def test_emit_and_eval():
    code, out, _ = run("emit", "Sing")
    assert code == 0 and out.strip() == "(exists= 2 X_0 (sub X_0 X))"
    code, out, _ = run("eval", data("sing.f"), data("u24.ss"), "--bind", "X=e")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run("eval", data("sing.f"), data("u24.ss"), "--bind", "X=e,f")
    assert code == 1 and out.strip() == "false"
    code, _, err = run("eval", data("sing.f"), data("u24.ss"))
    assert code == 2 and "X" in err
    code, _, err = run("eval", data("sing.f"), data("u24.ss"), "--bind", "X=zz")
    assert code == 2


def test_emit_parameters():
    code, out, _ = run("emit", "k_separation", "--k", "1")
    assert code == 0 and out.startswith("(")
    code, out, _ = run("emit", "Cycle", "--phi", "NonSepCocircuit", "--vars", "Y")
    assert code == 0


def test_oracle_with_loops():
    code, out, _ = run("oracle", data("u01_u23.ss"), "--loops", "a")
    assert code == 0 and "representation found" in out
    assert "# ignoring matroid loops" in out
    code, out, _ = run("oracle", data("u24.ss"), "--loops", "e,f,g")
    assert code == 1 and out.startswith("no representation")
    code, _, _ = run("oracle", data("u01_u23.ss"), "--loops", "z")
    assert code == 2


@pytest.mark.parametrize("name", ["double_u24.ss", "degree3.ss", "u01_u23.ss", "f7.ss"])
def test_decompose_round_trip(name):
    from bicircular.formats import read_set_system
    M = read_set_system(data(name))
    code, out, _ = run("decompose", data(name))
    assert code == 0
    trees = parse_forest(out)
    assert len(trees) == len(M.component_masks())
    got = None
    for T in trees:
        N = T.recompose()
        got = N if got is None else direct_sum(got, N)
    # element order may differ, so compare independent sets by name
    assert sorted(got.elements) == sorted(M.elements)
    assert {got.names(m) for m in got.independent} == {M.names(m) for m in M.independent}


def test_check_both_never_disagrees(tmp_path):
    rng = random.Random(17)
    for i in range(15):
        M = random_matroid(rng, 3, 6)
        p = tmp_path / f"m{i}.ss"
        p.write_text(write_set_system(M))
        code, out, _ = run("check", "--mode", "both", str(p))
        assert code in (0, 1), out
        assert "oracle agrees" in out


def test_decompose_forest_directly():
    M = direct_sum(double_u24(), uniform(2, 4, list("pqrs")))
    trees = decompose_forest(M)
    assert len(trees) == 2
    bps = [bp for T in trees for _, _, bp in T.edges]
    assert len(bps) == len(set(bps))
