"""Exact decision engine for quadratic equation families in the rank-2 free group."""

from .classify import Budgets, Verdict, classify, pattern_witness, verify_tables
from .derived import (
    ConjData,
    DecideResult,
    FirstSolution,
    MixedCase,
    analyze_v,
    first_solutions,
    rank1_check,
    second_decide,
)
from .errors import (
    BasisMismatch,
    BudgetExceeded,
    CaseMismatch,
    DomainMismatch,
    EpsilonMismatch,
    ExtractionFailed,
    FgquadError,
    InconsistentSign,
    NotDivisible,
    NotInKernel,
    NotMixedCase,
    SingularBase,
    WordSyntaxError,
)
from .groupring import (
    RingElement,
    alt_geom_ratio,
    exact_divide,
    fox_derivative,
    geom_ratio,
    q_n,
)
from .orbits import (
    ElementClass,
    HatAbs,
    HatL,
    Tilde,
    TildeL,
    augment,
    element_class,
    odd_part,
    same_orbit,
)
from .quotient import QElement, p_q, q_divisible_by_two, q_nf_commutator
from .surface import PiElement, apply_phi, project
from .wicks import WicksMatch, WicksReport, extract_solution, rhs_word, wicks_decompositions, wicks_search
from .words import (
    BasisTag,
    EquationSpec,
    VerifyResult,
    Word,
    change_basis,
    comm,
    conj,
    cyclic_reduce,
    parse_word,
    relator,
    relator_in,
    sgn,
    square_root,
    verify_solution,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
