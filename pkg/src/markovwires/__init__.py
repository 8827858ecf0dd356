"""Weighted automata with parallel and sequential interfaces, composed exactly."""

from .analysis import (
    AnalysisReport,
    PFVerdict,
    check_pf_hypotheses,
    deadlock_probability_series,
    deadlock_states,
    eating_state_count,
    evolve_distribution,
    probability_series,
    reachable_part,
    subset_probability,
)
from .core import (
    Alphabet,
    Behaviour,
    InterfaceMap,
    WeightedAutomaton,
    automaton,
    behaviour_evolve,
    is_markov,
    is_positive,
    k_step_automaton,
    normalize,
    relabel,
    row_sums,
    structurally_equal,
    total_matrix,
    total_weights,
)
from .decompose import elementary_decomposition
from .errors import (
    ArityMismatch,
    AutomatonError,
    DimensionMismatch,
    InterfaceMismatch,
    InvalidAutomaton,
    InvalidK,
    LengthMismatch,
    NotClosed,
    NotMarkov,
    NotNormalizable,
    TooLarge,
    UnknownLabel,
    UnknownState,
)
from .expr import evaluate
from .iso import find_isomorphism, is_isomorphic
from .names import EPS, Tag, parse_name, render
from .ops import (
    SeqRelation,
    boxplus_sum,
    communicating_parallel,
    local_seq,
    local_sum,
    par_constant,
    par_wire,
    parallel_product,
    pfb,
    pfb_by_wires,
    seq_compose,
    seq_constant,
    seq_wire,
    sfb,
    sfb_by_wires,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AnalysisReport",
    "ArityMismatch",
    "AutomatonError",
    "Behaviour",
    "DimensionMismatch",
    "EPS",
    "InterfaceMap",
    "InterfaceMismatch",
    "InvalidAutomaton",
    "InvalidK",
    "LengthMismatch",
    "NotClosed",
    "NotMarkov",
    "NotNormalizable",
    "PFVerdict",
    "SeqRelation",
    "Tag",
    "TooLarge",
    "UnknownLabel",
    "UnknownState",
    "WeightedAutomaton",
    "automaton",
    "behaviour_evolve",
    "boxplus_sum",
    "check_pf_hypotheses",
    "communicating_parallel",
    "deadlock_probability_series",
    "deadlock_states",
    "eating_state_count",
    "elementary_decomposition",
    "evaluate",
    "evolve_distribution",
    "find_isomorphism",
    "is_isomorphic",
    "is_markov",
    "is_positive",
    "k_step_automaton",
    "local_seq",
    "local_sum",
    "normalize",
    "par_constant",
    "par_wire",
    "parallel_product",
    "parse_name",
    "pfb",
    "pfb_by_wires",
    "probability_series",
    "reachable_part",
    "relabel",
    "render",
    "row_sums",
    "seq_compose",
    "seq_constant",
    "seq_wire",
    "sfb",
    "sfb_by_wires",
    "structurally_equal",
    "subset_probability",
    "total_matrix",
    "total_weights",
]
