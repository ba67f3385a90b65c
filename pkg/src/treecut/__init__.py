"""Free algebras and rational trees for presented set functors, ordered by cutting."""
from .errors import TreecutError
from .signature import ArityScheme, FlatTerm, Signature, parse_signature
from .trees import Op, RationalTree, Var, as_system, cut, join_chain, leq_cut, minimize
from .presentation import (
    BUILTIN_EXAMPLES,
    CanonicalTree,
    Presentation,
    builtin,
    equiv_finite,
    equiv_star,
    from_equations,
    nf,
    nf_rational,
    nf_tree,
    parse_builtin,
)
from .syntax import format_tree, parse_cut_point, parse_equations, parse_tree, to_dot
from .order import OrderedElement, join, leq_quotient, least_element, less_than
from .chains import enumerate_initial_stage, enumerate_terminal_stage
from .solver import (
    CoalgebraSystem,
    Param,
    RecEquationSystem,
    SolutionMap,
    approx_chain,
    approx_homomorphism,
    approx_solution,
    solve,
    verify_approx_chain,
    verify_solution,
)

__version__ = "0.1.0"
