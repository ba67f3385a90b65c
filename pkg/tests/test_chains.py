import pytest

from treecut.chains import enumerate_initial_stage, enumerate_terminal_stage
from treecut.errors import CapExceeded, NoEnumerator
from treecut.presentation import builtin, from_equations
from treecut.signature import FlatTerm, Signature
from treecut.syntax import format_tree
from treecut.trees import Op, Var


def test_pf_initial_small():
    pf = builtin("pf")
    assert [len(enumerate_initial_stage(pf, n)) for n in range(5)] == [0, 1, 2, 4, 16]
    names = sorted(format_tree(t, pf) for t in enumerate_initial_stage(pf, 3).elements)
    assert names == ["{{{}}}", "{{}, {{}}}", "{{}}", "{}"]


def test_pk_and_words():
    assert [len(enumerate_initial_stage(builtin("pk", 1), n)) for n in range(5)] == [0, 1, 2, 3, 4]
    ab = builtin("product", "a", "b")
    assert [len(enumerate_terminal_stage(ab, n, Var("p"))) for n in range(5)] == [1, 2, 4, 8, 16]
    assert len(enumerate_initial_stage(ab, 3)) == 0


def test_am23_stage_counts():
    # over one class only sigma1(x, x) survives, so every stage is a singleton
    am = builtin("am23")
    assert [len(enumerate_terminal_stage(am, n, Var("p"))) for n in range(4)] == [1, 1, 1, 1]
    assert len(enumerate_initial_stage(am, 3)) == 0


def test_cap_and_missing_enumerator():
    with pytest.raises(CapExceeded):
        enumerate_initial_stage(builtin("pf"), 5, cap=1000)
    pres = from_equations(Signature({"f": 2}), [(FlatTerm("f", ("x", "y")), FlatTerm("f", ("y", "x")))])
    with pytest.raises(NoEnumerator):
        enumerate_initial_stage(pres, 2)


def test_terminal_pf_from_empty_set():
    pf = builtin("pf")
    assert [len(enumerate_terminal_stage(pf, n, Op("set0"))) for n in range(4)] == [1, 2, 4, 16]


def test_list_stages_are_infinite():
    lists = builtin("list")
    assert [len(enumerate_initial_stage(lists, n)) for n in range(2)] == [0, 1]
    with pytest.raises(CapExceeded):
        enumerate_initial_stage(lists, 2)
