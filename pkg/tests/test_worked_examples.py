"""Small hand-checked values for the built-in functors."""
import pytest

from treecut.errors import CapacityExceeded
from treecut.order import OrderedElement, least_element, leq_quotient
from treecut.presentation import builtin, equiv_finite
from treecut.solver import RecEquationSystem, approx_solution, solve
from treecut.syntax import format_tree, parse_tree
from treecut.trees import Op, Var, leq_cut

AB = builtin("product", "a", "b")
X = Var("x")


def words(text):
    return parse_tree(text, AB, variables={"x", "y"})


def test_word_prefix_order():
    assert leq_cut(words("a(x)"), words("a(b(y))"), X)
    assert not leq_cut(words("a(y)"), words("a(b(y))"), X)
    assert not leq_cut(words("b(x)"), words("a(b(y))"), X)
    assert leq_cut(words("a(b(x))"), words("rec s0. a(s1); s1 = b(s0)"), X)


def test_counting_order():
    ident = builtin("id")
    s = lambda t: OrderedElement.of(ident, parse_tree(t, ident, variables={"p", "y"}), Var("p"))
    assert leq_quotient(s("s(p)"), s("s(s(y))"))
    assert not leq_quotient(s("s(y)"), s("s(s(y))"))


@pytest.mark.parametrize("name, head, args, expected", [
    ("pf", "set3", (2, 1, 2), ("set2", (1, 2))),
    ("pf", "set2", (0, 0), ("set1", (0,))),
    ("am23", "sigma3", (1, 1), ("sigma1", (1, 1))),
    ("am23", "sigma3", (1, 2), ("sigma3", (1, 2))),
])
def test_flat_normal_forms(name, head, args, expected):
    assert builtin(name).normalize(head, args) == expected


def test_bounded_powerset_capacity():
    with pytest.raises(CapacityExceeded):
        builtin("pk", 2).normalize("set3", (1, 2, 3))


def test_three_symbol_congruence():
    am = builtin("am23")
    assert equiv_finite(am, parse_tree("sigma2(y, y)", am), parse_tree("sigma3(y, y)", am))
    assert not equiv_finite(am, parse_tree("sigma2(y, z)", am), parse_tree("sigma3(y, z)", am))


def test_least_elements():
    pf = builtin("pf")
    assert least_element(pf, Op("set0")).value.tree() == Op("set0")
    assert least_element(AB, X).value.tree() == X


def test_alternating_word_solution():
    e = RecEquationSystem.from_text("x = a(y); y = b(x)", AB)
    assert format_tree(solve(e)["x"], AB) == "rec s0. a(s1); s1 = b(s0)"
    assert format_tree(approx_solution(e, 0, X)["x"], AB) == "x"
