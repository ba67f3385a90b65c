import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from conftest import P, PRESENTATIONS
from treecut.errors import NotGuarded, UnknownOp
from treecut.order import OrderedElement, leq_quotient
from treecut.presentation import builtin, equiv_finite, equiv_star, nf
from treecut.randgen import GenConfig, random_guarded_system, rng_for
from treecut.signature import FlatTerm
from treecut.solver import (
    CoalgebraSystem,
    Param,
    RecEquationSystem,
    approx_chain,
    approx_homomorphism,
    approx_solution,
    solve,
    verify_approx_chain,
    verify_solution,
)
from treecut.syntax import format_tree, parse_tree
from treecut.trees import Op, cut

AB = builtin("product", "a", "b")
PF = PRESENTATIONS["pf"]


def test_two_state_loop():
    e = RecEquationSystem.from_text("x = a(y); y = b(x)", AB)
    sol = solve(e)
    assert format_tree(sol["x"], AB) == "rec s0. a(s1); s1 = b(s0)"
    assert format_tree(approx_solution(e, 3, P)["x"], AB) == "a(b(a(p)))"
    assert verify_solution(e, sol, 10)


def test_constant_system_stabilizes():
    e = RecEquationSystem.from_text("x = param {{{}}}", PF)
    values = [format_tree(s["x"], PF) for s in approx_chain(e, 5, P)]
    assert values == ["p", "{p}", "{{p}}", "{{{}}}", "{{{}}}", "{{{}}}"]
    report = verify_approx_chain(e, 3, P)
    assert report.ok


def test_pf_system():
    e = RecEquationSystem.from_text("x = {x, y}; y = {}", PF)
    assert format_tree(solve(e)["x"], PF) == "rec s0. {{}, s0}"
    report = verify_approx_chain(e, 6, Op("set0"))
    assert report.ok and list(report.rows()) == [("chain", 2, 2), ("cut_law", 2, 2), ("join", 2, 2)]


def test_parameter_cut_offset():
    # a parameter is cut at the stage index, matching the cut law
    e = RecEquationSystem.from_text("x = a(y); y = param rec s. b(s)", AB)
    stage = approx_solution(e, 3, P)
    assert format_tree(stage["y"], AB) == "b(b(b(p)))"
    assert format_tree(stage["x"], AB) == "a(b(b(p)))"


def test_homomorphism_of_coalgebra():
    c = CoalgebraSystem(AB, {"u": FlatTerm("a", ("v",)), "v": FlatTerm("a", ("u",))})
    h = approx_homomorphism(c, 4, P)
    assert format_tree(h["u"], AB) == "a(a(a(a(p))))"
    assert format_tree(solve(c.as_equations())["u"], AB) == "rec s0. a(s0)"


def test_rejects_unguarded_and_unknown():
    with pytest.raises(NotGuarded):
        RecEquationSystem(AB, {"x": FlatTerm("y", (), is_var=True)})
    with pytest.raises(UnknownOp):
        RecEquationSystem(AB, {"x": FlatTerm("a", ("w",))})


def test_wrong_solution_is_rejected():
    e = RecEquationSystem.from_text("x = a(y); y = b(x)", AB)
    sol = solve(e)
    sol.assignment["x"] = nf(AB, parse_tree("rec s. a(s)", AB))
    assert not verify_solution(e, sol, 10)


@settings(max_examples=40)
@given(pres_name=st.sampled_from(sorted(PRESENTATIONS)), seed=st.integers(0, 10**6))
def test_cut_law_and_monotonicity(pres_name, seed):
    pres = PRESENTATIONS[pres_name]
    e = random_guarded_system(pres, rng_for(seed), GenConfig(max_vars=5))
    exact = solve(e)
    prev = None
    for stage in approx_chain(e, 8, P):
        for v in e.rhs:
            assert equiv_finite(pres, stage[v], cut(exact[v].system, stage.k, P))
            if prev is not None:
                assert leq_quotient(OrderedElement(prev[v], pres, P), OrderedElement(stage[v], pres, P))
        prev = stage


@settings(max_examples=40)
@given(pres_name=st.sampled_from(sorted(PRESENTATIONS)), seed=st.integers(0, 10**6))
def test_solution_is_unique(pres_name, seed):
    pres = PRESENTATIONS[pres_name]
    e = random_guarded_system(pres, rng_for(seed), GenConfig(max_vars=5))
    sol = solve(e)
    assert verify_solution(e, sol, 10)
    # re-solving a system whose variables are renamed gives the same values
    renamed = {f"w{v}": r if isinstance(r, Param) else FlatTerm(r.head, tuple(f"w{a}" for a in r.args))
               for v, r in e.rhs.items()}
    other = solve(RecEquationSystem(pres, renamed))
    assert all(equiv_star(pres, sol[v], other[f"w{v}"], 10, P) for v in e.rhs)


def test_homomorphism_examples():
    one = builtin("product", "a")
    loop = CoalgebraSystem(one, {"x": FlatTerm("a", ("x",))})
    assert format_tree(approx_homomorphism(loop, 3, P)["x"], one) == "a(a(a(p)))"
    assert format_tree(approx_homomorphism(loop, 0, P)["x"], one) == "p"
    doubled = CoalgebraSystem(PF, {"x": FlatTerm("set2", ("x", "x"))})
    assert format_tree(approx_homomorphism(doubled, 2, P)["x"], PF) == "{{p}}"
