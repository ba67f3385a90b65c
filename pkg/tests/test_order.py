import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import P, PRESENTATIONS, finite_trees, systems
from treecut.errors import InfiniteTree, MixedPresentations, NotAChain
from treecut.order import OrderedElement, compactness_check, join, leq_quotient, least_element, less_than
from treecut.presentation import builtin, nf
from treecut.syntax import parse_tree
from treecut.trees import cut, leq_cut

PF = PRESENTATIONS["pf"]
AB = builtin("product", "a", "b")


def el(pres, text, p=P):
    return OrderedElement.of(pres, parse_tree(text, pres, variables={"p"}), p)


def test_cut_order_on_words():
    assert leq_quotient(el(AB, "a(p)"), el(AB, "a(b(p))"))
    assert not leq_quotient(el(AB, "b(p)"), el(AB, "a(b(p))"))
    assert less_than(el(AB, "p"), el(AB, "rec s. a(s)"))


def test_quotient_order_sees_through_equations():
    # the depth-2 cutting of {{{}}, {}, {}} is {{p}, {}, {}}, equal to {{p}, {}} as a set
    assert leq_quotient(el(PF, "{{p}, {}}"), el(PF, "{{{}}, {}, {}}"))
    assert leq_quotient(el(PF, "{{}, {p}, {p}}"), el(PF, "{{{}}, {}}"))
    assert not leq_quotient(el(PF, "{p, p, {}}"), el(PF, "{{{}}}"))


def test_mixed_presentations():
    with pytest.raises(MixedPresentations):
        leq_quotient(el(PF, "p"), el(AB, "p"))


def test_join_and_compactness():
    chain = [el(AB, "p"), el(AB, "a(p)"), el(AB, "a(b(p))"), el(AB, "a(b(a(p)))"), el(AB, "a(b(a(b(p))))")]
    top = join(chain)
    assert top == el(AB, "rec s0. a(s1); s1 = b(s0)")
    assert compactness_check(el(AB, "a(b(a(p)))"), chain)
    with pytest.raises(InfiniteTree):
        compactness_check(top, chain)
    with pytest.raises(NotAChain):
        join([el(AB, "a(p)"), el(AB, "b(p)")])


@given(pres_name=st.sampled_from(sorted(PRESENTATIONS)), data=st.data())
def test_least_element(pres_name, data):
    pres = PRESENTATIONS[pres_name]
    x = OrderedElement(nf(pres, data.draw(systems(pres))), pres, P)
    assert leq_quotient(least_element(pres, P), x)


@given(pres_name=st.sampled_from(sorted(PRESENTATIONS)), data=st.data(), n=st.integers(0, 5), m=st.integers(0, 5))
def test_cuttings_form_a_chain(pres_name, data, n, m):
    pres = PRESENTATIONS[pres_name]
    r = data.draw(systems(pres))
    lo, hi = sorted((n, m))
    a = OrderedElement.of(pres, cut(r, lo, P), P)
    b = OrderedElement.of(pres, cut(r, hi, P), P)
    assert leq_quotient(a, b)
    assert leq_quotient(b, OrderedElement.of(pres, r, P))


@given(finite_trees(PF), finite_trees(PF))
def test_cut_order_implies_quotient_order(s, t):
    if leq_cut(s, t, P):
        assert leq_quotient(OrderedElement.of(PF, s, P), OrderedElement.of(PF, t, P))
