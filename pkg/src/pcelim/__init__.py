"""Elimination in free partially commutative structures: trace monoids,
their characteristic series, transitive factorizations, free partially
commutative Lie algebras and groups."""

from .alphabet import (
    AlphabetError,
    DerivedAlphabet,
    IndependenceAlphabet,
    dependence_graph,
    derived_independence,
    independent_cliques,
    parse_alphabet,
    restrict,
)
from .elimination import (
    CodeCheck,
    ConditionCheck,
    TfsaVerdict,
    b_closure,
    beta_generators,
    bounded_code_check,
    condition_ii_check,
    factor_bisection,
    is_tfsa,
    tfsa_by_closure,
)
from .factorization import (
    ElimPlan,
    EliminationError,
    Factorization,
    build_plan,
    compose,
    decompose,
    eliminate_step,
    is_cut,
    parse_plan,
    plan_factorization,
    restrict_to,
    verify_factorization,
)
from .group import (
    DoubledAlphabet,
    alpha_injectivity_witness,
    commutation_closure,
    extend_alphabet,
    group_equal,
    group_inverse,
    group_mul,
    reduce_trace,
    rho_generators,
    semidirect_split,
)
from .lie import (
    bracketing_map,
    lazard_split_check,
    lie_basis,
    lie_bracket,
    lie_dimension_oracle,
    tau_generators,
)
from .series import (
    TracePolynomial,
    characteristic_series,
    invert,
    mobius_polynomial,
    witt_dimensions,
)
from .trace import (
    Trace,
    concat,
    equivalent,
    initial_alphabet,
    left_divide,
    levi_factor,
    normalize,
    right_divide,
    terminal_alphabet,
)

__version__ = "0.1.0"
