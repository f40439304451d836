"""Classical and quantum finite automata for promise problems."""
from .classical import (
    Check,
    Dfa,
    Pfa,
    PvDfa,
    Verdict,
    classify,
    complement,
    component_dfas,
    dfa_language_included,
    intersect_recognizers,
    minimize_dfa,
    minimize_pvdfa,
    pfa_accept_prob,
    pump_decompose,
    recognizer_from_components,
    run,
    union_recognizers,
)
from .complexity import (
    ComplexityReport,
    NotFoundUpTo,
    SsFound,
    build_appendix_pvdfa,
    build_theorem20_dfa,
    compute_sr,
    compute_ss_bruteforce,
    verify_bounds,
)
from .decision import Blm, Relation, blm_equivalent, blm_word_fn, is_maximally_powerful, pvdfa_compare, pvdfa_equivalent, pvdfa_to_blm
from .errors import *  # noqa: F401,F403
from .problems import Membership, PredicateProblem, PromiseProblem, RegularProblem, make_family
from .quantum import (
    Mo1Qfa,
    PvMo1Qfa,
    Qcfa1,
    build_Ap,
    build_Ap_eps,
    build_Ml,
    build_polyeq_qcfa,
    check_unitary,
    mo1qfa_accept_prob,
    pvmo1qfa_probs,
    qcfa_exact_probs,
    qcfa_sample,
)
from .theorems import verify_theorem

__version__ = "0.1.0"
