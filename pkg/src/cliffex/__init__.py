"""Compiler for quantum-simulation circuits given as Pauli-rotation
lists: synthesizes each rotation with a guided CNOT tree, extracts the
trailing Clifford half of every block to the end of the circuit, and
absorbs the accumulated Clifford into measurement observables or
bitstring post-processing."""

from .absorb import (
    CountsHistogram,
    ProbabilityAbsorption,
    TransformedObservable,
    absorb_observables,
    absorb_probabilities,
    apply_network,
    map_expectations,
    postprocess_counts,
)
from .circuit import (
    Circuit,
    Gate,
    cnot_count,
    cx,
    emit_qasm,
    entangling_depth,
    h,
    parse_qasm,
    peephole,
    rz,
    s,
    sdg,
)
from .extract import (
    CommuteBlock,
    ExtractionResult,
    basis_change_gates,
    convert_commute_sets,
    extract,
    find_next_pauli,
    native_circuit,
    tree_synthesis,
)
from .pauli import PauliString, PauliTerm, commutes, multiply, parse_pauli, weight
from .problems import LoadedProblem, ProblemSpec, gen_labs, gen_maxcut, load_terms
from .tableau import ConjugationTableau, decompose_h_cnot, identity_tableau

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CommuteBlock",
    "ConjugationTableau",
    "CountsHistogram",
    "ExtractionResult",
    "Gate",
    "LoadedProblem",
    "PauliString",
    "PauliTerm",
    "ProbabilityAbsorption",
    "ProblemSpec",
    "TransformedObservable",
    "absorb_observables",
    "absorb_probabilities",
    "apply_network",
    "basis_change_gates",
    "cnot_count",
    "commutes",
    "convert_commute_sets",
    "cx",
    "decompose_h_cnot",
    "emit_qasm",
    "entangling_depth",
    "extract",
    "find_next_pauli",
    "gen_labs",
    "gen_maxcut",
    "h",
    "identity_tableau",
    "load_terms",
    "map_expectations",
    "multiply",
    "native_circuit",
    "parse_pauli",
    "parse_qasm",
    "peephole",
    "postprocess_counts",
    "rz",
    "s",
    "sdg",
    "tree_synthesis",
    "weight",
]
