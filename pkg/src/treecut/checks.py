"""Seeded property suites shared by the CLI ``check`` command and the tests.

Each suite returns :class:`Row` records; a suite passes when every row does.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from . import oracles
from .chains import enumerate_initial_stage, enumerate_terminal_stage
from .order import OrderedElement, leq_quotient
from .presentation import BUILTIN_EXAMPLES, builtin, equiv_finite, equiv_star, nf, nf_rational, nf_tree, parse_builtin
from .randgen import GenConfig, random_guarded_system, random_system, rng_for, variant
from .solver import RecEquationSystem, approx_chain, solve, verify_approx_chain
from .syntax import format_tree
from .trees import Op, Var, cut

P = Var("p")


@dataclass(frozen=True)
class Row:
    name: str
    passed: int
    total: int
    seconds: float = 0.0
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def _timed(name, fn):
    start = time.perf_counter()
    passed, total, detail = fn()
    return Row(name, passed, total, time.perf_counter() - start, detail)


def word_functor(n_max: int = 64) -> list[Row]:
    pres = builtin("product", "a", "b")
    e = RecEquationSystem.from_text("x = a(y); y = b(x)", pres)

    def run():
        sol = solve(e)["x"]
        good = 0
        for stage in approx_chain(e, n_max, P):
            k = stage.k
            expected = oracles.alternating_word("ab", k, "p")
            unfolded = format_tree(cut(sol.system, k, P), pres)
            good += unfolded == expected and format_tree(stage["x"], pres) == unfolded
        return good, n_max + 1, format_tree(sol, pres)

    return [_timed("word-functor", run)]


def minimize_oracle(seed: int = 0, systems: int = 500, pairs: int = 200, depth: int = 10) -> list[Row]:
    pf = builtin("pf")
    rng = rng_for(seed, "minimize-oracle")
    cfg = GenConfig(max_states=6, max_branch=4)
    sample = [random_system(pf, rng, cfg) for _ in range(systems)]

    def sound():
        good = sum(oracles.extensional_equal(nf_rational(pf, s).system, s, depth) for s in sample)
        return good, len(sample), ""

    def agree():
        good = equal = 0
        for i in range(pairs):
            a = rng.choice(sample)
            b = variant(pf, a, rng) if i % 2 == 0 else rng.choice(sample)
            truth = oracles.extensional_equal(a, b, depth)
            equal += truth
            good += equiv_star(pf, a, b) == truth
        return good, pairs, f"{equal} oracle-equal pairs"

    return [_timed("minimal forms", sound), _timed("equiv_star pairs", agree)]


def stages(cap: int = 100_000) -> list[Row]:
    pf = builtin("pf")
    empty = Op("set0")

    def initial():
        sizes = [len(enumerate_initial_stage(pf, n, cap)) for n in range(1, 6)]
        expected = [oracles.doubling(n, 0) for n in range(1, 6)]
        brute = [len(oracles.hereditary_sets(n)) for n in range(1, 4)]
        good = sum(a == b for a, b in zip(sizes, expected)) + sum(a == b for a, b in zip(sizes, brute))
        return good, 8, f"sizes {sizes}"

    def terminal():
        sizes = [len(enumerate_terminal_stage(pf, n, empty, cap)) for n in range(0, 4)]
        expected = [oracles.doubling(n, 1) for n in range(0, 4)]
        brute = [len(oracles.hereditary_sets(n, ["p"])) for n in range(0, 4)]
        good = sum(a == b for a, b in zip(sizes, expected)) + sum(a == b for a, b in zip(sizes, brute))
        return good, 8, f"sizes {sizes}"

    return [_timed("initial stages", initial), _timed("terminal stages", terminal)]


def cut_commute(seed: int = 0, cases: int = 1000, presentations=BUILTIN_EXAMPLES) -> list[Row]:
    rows = []
    for name in presentations:
        pres = parse_builtin(name)
        rng = rng_for(seed, "cut-commute", name)

        def run():
            good = 0
            for _ in range(cases):
                r = random_system(pres, rng)
                n = rng.randint(0, 6)
                m = nf_rational(pres, r).system
                good += nf_tree(pres, cut(r, n, P)) == nf_tree(pres, cut(m, n, P))
            return good, cases, ""

        rows.append(_timed(name, run))
    return rows


def approx_chains(seed: int = 0, cases: int = 200, N: int = 8, presentations=BUILTIN_EXAMPLES) -> list[Row]:
    rows = []
    for name in presentations:
        pres = parse_builtin(name)
        rng = rng_for(seed, "approx-chain", name)

        def run():
            good = extended = 0
            for _ in range(cases):
                report = verify_approx_chain(random_guarded_system(pres, rng), N, P)
                good += report.ok
                extended += bool(report.join_stages)
            return good, cases, f"joins extended past {N + 1} stages: {extended}"

        rows.append(_timed(name, run))
    return rows


def _order_sample(pres, rng, cases):
    values = [nf_tree(pres, P)]
    roots = [random_system(pres, rng) for _ in range(max(cases // 10, 1))]
    while len(values) < cases:
        values.append(nf_tree(pres, cut(rng.choice(roots), rng.randint(0, 6), P)))
    return [OrderedElement(v, pres, P) for v in values]


def order_axioms(seed: int = 0, cases: int = 300, presentations=BUILTIN_EXAMPLES) -> list[Row]:
    rows = []
    for name in presentations:
        pres = parse_builtin(name)
        rng = rng_for(seed, "order-axioms", name)

        def run():
            elems = _order_sample(pres, rng, cases)
            size = len(elems)
            up = [0] * size
            for i, a in enumerate(elems):
                for j, b in enumerate(elems):
                    if leq_quotient(a, b):
                        up[i] |= 1 << j
            refl = all(up[i] >> i & 1 for i in range(size))
            anti = all(
                elems[i].value == elems[j].value
                for i in range(size) for j in range(size)
                if up[i] >> j & 1 and up[j] >> i & 1
            )
            trans = True
            for i in range(size):
                rest = up[i]
                while rest:
                    j = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    if up[j] & ~up[i]:
                        trans = False
            least = up[0] == (1 << size) - 1
            infinite = []
            while len(infinite) < 20:
                r = random_system(pres, rng)
                if not r.is_finite():
                    infinite.append(OrderedElement(nf(pres, r), pres, P))
            inf_ok = all(leq_quotient(a, b) == (a.value == b.value) for a in infinite for b in infinite)
            related = sum(bin(u).count("1") for u in up) - size
            checks = [refl, anti, trans, least, inf_ok]
            return sum(checks), len(checks), f"off-diagonal related pairs: {related}"

        rows.append(_timed(name, run))
    return rows


def _relabel_equal(t, rng):
    """A ~-equivalent copy: nodes with two identical children get a random symbol."""
    if isinstance(t, Var):
        return t
    a, b = t.children
    head = rng.choice(("sigma1", "sigma2", "sigma3")) if a == b else t.name
    return Op(head, [_relabel_equal(a, rng), _relabel_equal(b, rng)])


def _am23_tree(rng, height, leaf="y", twin=0.4):
    if height == 0 or rng.random() < 0.25:
        return Var(leaf)
    a = _am23_tree(rng, height - 1, leaf, twin)
    b = a if rng.random() < twin else _am23_tree(rng, height - 1, leaf, twin)
    return Op(rng.choice(("sigma1", "sigma2", "sigma3")), [a, b])


def _plug(rng, hole, height):
    """Place ``hole`` inside a random context of the given height."""
    t = hole
    for _ in range(height):
        other = _am23_tree(rng, 2)
        kids = [t, other] if rng.random() < 0.5 else [other, t]
        t = Op(rng.choice(("sigma1", "sigma2", "sigma3")), kids)
    return t


def am23(seed: int = 0, cases: int = 100) -> list[Row]:
    pres = builtin("am23")
    rng = rng_for(seed, "am23")

    def related():
        good = 0
        for _ in range(cases):
            u = _am23_tree(rng, 3)
            u2 = _relabel_equal(u, rng)
            i, j = rng.sample(("sigma1", "sigma2", "sigma3"), 2)
            depth = rng.randint(0, 3)
            s = _plug(rng_for(seed, "ctx", _), Op(i, [u, u2]), depth)
            t = _plug(rng_for(seed, "ctx", _), Op(j, [u2, u]), depth)
            good += equiv_finite(pres, s, t) and oracles.am23_equivalent(s, t)
        return good, cases, ""

    def separated():
        good = 0
        for _ in range(cases):
            u = _am23_tree(rng, 3, "y")
            v = Op("sigma1", [_am23_tree(rng, 2, "z"), Var("y")])
            i, j = rng.sample(("sigma1", "sigma2", "sigma3"), 2)
            depth = rng.randint(0, 3)
            s = _plug(rng_for(seed, "ctx", _), Op(i, [u, v]), depth)
            t = _plug(rng_for(seed, "ctx", _), Op(j, [u, v]), depth)
            good += not equiv_finite(pres, s, t) and not oracles.am23_equivalent(s, t)
        return good, cases, ""

    return [_timed("related", related), _timed("separated", separated)]


SUITES = {
    "word-functor": lambda seed, cases: word_functor(),
    "minimize-oracle": lambda seed, cases: minimize_oracle(seed, pairs=cases or 200),
    "stages": lambda seed, cases: stages(),
    "cut-commute": lambda seed, cases: cut_commute(seed, cases or 1000),
    "approx-chain": lambda seed, cases: approx_chains(seed, cases or 200),
    "order-axioms": lambda seed, cases: order_axioms(seed, cases or 300),
    "am23": lambda seed, cases: am23(seed, cases or 100),
}
