import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import P, PRESENTATIONS, finite_trees, systems
from treecut.errors import BadCutPoint, BadParams, CapacityExceeded, DepthRequired, NotExact, UnknownBuiltin
from treecut.presentation import builtin, equiv_finite, equiv_star, from_equations, nf, nf_rational, nf_tree, parse_builtin
from treecut.signature import FlatTerm, Signature
from treecut.syntax import format_tree, parse_tree
from treecut.trees import Op, Var, cut

PF = PRESENTATIONS["pf"]


def fmt(pres, t):
    return format_tree(nf(pres, t), pres)


@pytest.mark.parametrize("name, text, expected", [
    ("pf", "{{}, {}}", "{{}}"),
    ("pf", "{{{}}, {}}", "{{}, {{}}}"),
    ("pf", "rec s. {s, {s}}", "rec s0. {s0}"),
    ("pk(2)", "{{}, {}, {}}", "{{}}"),
    ("am23", "sigma3(y, y)", "sigma1(y, y)"),
    ("am23", "sigma3(y, z)", "sigma3(y, z)"),
    ("list", "tup2(tup0, tup0)", "tup2(tup0, tup0)"),
])
def test_normal_forms(name, text, expected):
    pres = parse_builtin(name)
    assert fmt(pres, parse_tree(text, pres)) == expected


def test_am23_relabels_with_equivalent_children():
    pres = PRESENTATIONS["am23"]
    s = parse_tree("sigma2(sigma2(y, y), sigma1(y, y))", pres)
    t = parse_tree("sigma3(sigma1(y, y), sigma3(y, y))", pres)
    assert equiv_finite(pres, s, t)


def test_pk_capacity():
    pres = parse_builtin("pk(1)")
    with pytest.raises(CapacityExceeded):
        nf(pres, parse_tree("{{}, {{}}}", pres))


@pytest.mark.parametrize("text, err", [("nope", UnknownBuiltin), ("pk(0)", BadParams), ("pk(x)", BadParams),
                                       ("pf(1)", BadParams), ("product(a,a)", BadParams)])
def test_bad_builtins(text, err):
    with pytest.raises(err):
        parse_builtin(text)


def test_default_cut_point():
    assert PF.default_cut_point() == Op("set0")
    with pytest.raises(BadCutPoint):
        builtin("id").default_cut_point()


def test_declared_equations_are_non_exact():
    sig = Signature({"f": 2})
    pres = from_equations(sig, [(FlatTerm("f", ("x", "y")), FlatTerm("f", ("y", "x")))])
    assert not pres.hereditary_exact
    s = parse_tree("f(f(y, z), z)", pres)
    t = parse_tree("f(z, f(z, y))", pres)
    assert equiv_finite(pres, s, t)
    assert not equiv_finite(pres, s, parse_tree("f(z, z)", pres))
    with pytest.raises(NotExact):
        nf_rational(pres, parse_tree("rec s. f(s, s)", pres))
    with pytest.raises(DepthRequired):
        equiv_star(pres, s, t)
    assert equiv_star(pres, s, t, depth=4, p=Var("p"))


@given(pres_name=st.sampled_from(sorted(PRESENTATIONS)), data=st.data())
def test_nf_is_idempotent(pres_name, data):
    pres = PRESENTATIONS[pres_name]
    r = data.draw(systems(pres))
    once = nf(pres, r)
    assert nf(pres, once.system) == once


@given(pres_name=st.sampled_from(sorted(PRESENTATIONS)), data=st.data(), n=st.integers(0, 5))
def test_cut_commutes_with_quotient(pres_name, data, n):
    pres = PRESENTATIONS[pres_name]
    r = data.draw(systems(pres))
    assert nf_tree(pres, cut(r, n, P)) == nf_tree(pres, cut(nf_rational(pres, r).system, n, P))


@given(systems(PF), systems(PF))
def test_equiv_star_matches_cut_levels(r, s):
    # exact mode is decided by minimal forms; it must agree with deep cuttings
    same = equiv_star(PF, r, s)
    levels = all(nf_tree(PF, cut(r, n, P)) == nf_tree(PF, cut(s, n, P)) for n in range(14))
    assert same == levels


@given(finite_trees(PF))
def test_finite_nf_respects_set_semantics(t):
    def sem(u):
        return frozenset(sem(c) for c in u.children) if isinstance(u, Op) else u.name

    assert sem(nf(PF, t).tree()) == sem(t)
