import sys

import hypothesis.strategies as st
from hypothesis import settings

from treecut.presentation import BUILTIN_EXAMPLES, parse_builtin
from treecut.randgen import _ops
from treecut.trees import Label, Op, RationalTree, Var

sys.setrecursionlimit(20_000)
settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

P = Var("p")
PRESENTATIONS = {name: parse_builtin(name) for name in BUILTIN_EXAMPLES}


@st.composite
def systems(draw, pres, max_states=5, max_branch=3):
    """Pointed state systems over the presentation's signature."""
    inner, nullary = _ops(pres, max_branch)
    n = draw(st.integers(1, max_states))
    labels = []
    for _ in range(n):
        leaves = [Label(h) for h, _ in nullary] + [Label("y", (), True), Label("z", (), True)]
        if not inner or draw(st.booleans()) and draw(st.booleans()):
            labels.append(draw(st.sampled_from(leaves)))
        else:
            head, arity = draw(st.sampled_from(inner))
            labels.append(Label(head, tuple(draw(st.integers(0, n - 1)) for _ in range(arity))))
    return RationalTree.from_labels(labels, 0)


@st.composite
def finite_trees(draw, pres, max_height=4, max_branch=3):
    inner, nullary = _ops(pres, max_branch)

    def go(h):
        if h == 0 or not inner or draw(st.integers(0, 3)) == 0:
            choices = [Op(name) for name, _ in nullary] + [Var("y")]
            return draw(st.sampled_from(choices))
        head, arity = draw(st.sampled_from(inner))
        return Op(head, [go(h - 1) for _ in range(arity)])

    return go(draw(st.integers(0, max_height)))


pres_names = st.sampled_from(BUILTIN_EXAMPLES)
