import math

import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import P, PRESENTATIONS, finite_trees, systems
from treecut.errors import BadCutPoint, InfiniteTree, NotAChain
from treecut.trees import (
    Interner,
    Label,
    Op,
    RationalTree,
    Var,
    as_system,
    canonical_finite,
    cut,
    height,
    join_chain,
    leq_cut,
    minimize,
    to_finite,
)

a = lambda t: Op("a", [t])
b = lambda t: Op("b", [t])
LOOP = RationalTree.from_labels([Label("a", (1,)), Label("b", (0,))], 0)
PF = PRESENTATIONS["pf"]


def test_cut_examples():
    t = a(b(a(Var("x"))))
    assert cut(t, 0, P) == P
    assert cut(t, 2, P) == a(b(P))
    assert cut(t, 10, P) == t
    assert cut(LOOP, 3, P) == a(b(a(P)))


def test_cut_point_must_be_leaf():
    with pytest.raises(BadCutPoint):
        cut(LOOP, 2, a(P))


def test_height_and_finiteness():
    assert height(a(b(P))) == 2
    assert height(LOOP) == math.inf
    with pytest.raises(InfiniteTree):
        to_finite(LOOP)


def test_rational_equality_is_bisimilarity():
    unrolled = RationalTree.from_labels([Label("a", (1,)), Label("b", (2,)), Label("a", (1,))], 0)
    assert unrolled == LOOP and hash(unrolled) == hash(LOOP)
    assert LOOP.rooted_at(1) != LOOP


def test_leq_cut():
    assert leq_cut(a(P), LOOP, P)
    assert not leq_cut(b(P), LOOP, P)
    assert leq_cut(LOOP, LOOP, P)


def test_interner_shares_equal_subtrees():
    it = Interner()
    x = it.add_tree(Op("f", [a(P), a(P)]))
    assert len(it.labels) == 3
    assert it.add_tree(Op("f", [a(P), a(P)])) == x


def test_join_of_loop_cuttings():
    chain = [cut(LOOP, n, P) for n in range(6)]
    assert join_chain(chain, P) == LOOP
    assert join_chain(LOOP, P) == LOOP


def test_join_of_stabilizing_chain():
    chain = [P, a(P), a(b(Var("y"))), a(b(Var("y")))]
    assert join_chain(chain, P) == as_system(a(b(Var("y"))))


def test_join_rejects_non_chain():
    with pytest.raises(NotAChain):
        join_chain([a(P), b(P)], P)


@given(systems(PF), st.integers(0, 6))
def test_cut_of_system_matches_cut_of_unfolding(r, n):
    # unfold to depth n independently, then cut
    def unfold(s, d):
        lab = r.labels[s]
        if d == 0:
            return P
        if lab.is_var:
            return Var(lab.head)
        return Op(lab.head, [unfold(c, d - 1) for c in lab.args])

    assert cut(r, n, P) == unfold(r.root, n)


@given(systems(PF))
def test_minimize_is_idempotent_and_bisimilar(r):
    m = minimize(r)
    assert minimize(m).labels == m.labels
    assert m == r


@given(finite_trees(PF), st.integers(0, 5))
def test_cut_is_below_and_monotone(t, n):
    assert leq_cut(cut(t, n, P), t, P)
    assert leq_cut(cut(t, n, P), cut(t, n + 1, P), P)


@given(systems(PF))
def test_canonical_finite_matches_minimize_on_finite(r):
    if r.is_finite():
        norm = PF.normalize
        assert canonical_finite(to_finite(r), norm).labels == minimize(r, norm).labels


@given(systems(PF, max_states=4))
def test_join_recovers_rational_tree(r):
    chain = [cut(r, n, P) for n in range(10)]
    assert join_chain(chain, P) == r
