"""Indirect controllability of degenerate quantum systems through a qubit-chain accessor."""
from .closure import ClosureConfig, LieBasis, closure, closure_oracle, vectorize
from .controllability import (
    CouplingMatrix,
    Report,
    Verdict,
    build_coupling_matrix,
    check_chain_length,
    check_coupling_rank,
    decide_controllability,
    minimal_chain_length,
    sample_random_coupling,
)
from .model import (
    AccessorSpec,
    ControlChannelSet,
    CouplingKey,
    CouplingSpec,
    SystemSpec,
    build_h0,
    build_h_accessor,
    build_h_interaction,
    build_h_system,
    control_generators,
    flatten_index,
    n_tilde,
    recenter_energies,
)
from .operators import (
    ChevalleyTriple,
    Operator,
    chevalley_triple,
    commutator,
    hs_inner,
    matrix_unit,
    pauli,
    pauli_string,
    tensor,
)
from .selection import (
    SelectionChain,
    SelectionKind,
    admissible_indices,
    apply_chain,
    apply_selection,
    kind_for_letter,
)

__version__ = "0.1.0"
