"""Quantum circuit simulation toolkit.

Benchmark circuit generators, topology metrics, an exact state-vector
backend, a tensor-network contraction backend with sliced parallel
execution, and a metrics-driven backend advisor.
"""
from .circuit import Circuit, GateOp, bitstring_to_index, index_to_bitstring
from .gates import GateKind, matrix_of
from .generators import Family, GeneratorSpec, generate
from .metrics import InteractionGraph, MetricsReport, compute_all, interaction_graph
from .qasm import emit_qasm, parse_qasm
from .statevector import (
    OutputDistribution,
    StateVector,
    apply_gate,
    distribution,
    init_zero,
    run,
    sample,
    sv_memory_bytes,
)
from .tensornet import (
    ContractionPlan,
    PathfinderConfig,
    Tensor,
    TensorNetwork,
    amplitude,
    choose_slices,
    circuit_to_network,
    contract,
    contract_pair,
    find_path,
    reconstruct_distribution,
    tn_memory_bytes,
)

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "GateOp",
    "GateKind",
    "matrix_of",
    "Family",
    "GeneratorSpec",
    "generate",
    "InteractionGraph",
    "MetricsReport",
    "compute_all",
    "interaction_graph",
    "parse_qasm",
    "emit_qasm",
    "StateVector",
    "OutputDistribution",
    "init_zero",
    "apply_gate",
    "run",
    "distribution",
    "sample",
    "sv_memory_bytes",
    "Tensor",
    "TensorNetwork",
    "ContractionPlan",
    "PathfinderConfig",
    "circuit_to_network",
    "contract_pair",
    "find_path",
    "contract",
    "choose_slices",
    "amplitude",
    "reconstruct_distribution",
    "tn_memory_bytes",
    "bitstring_to_index",
    "index_to_bitstring",
    "__version__",
]
